#pragma once

// Combinatorial reconstruction from 2-faces: neighbor-propagation maps along
// edges, facet growth, vertex-facet incidences, and the face lattice they
// determine.

#include <utility>
#include <vector>

#include "polyrec/walks.hpp"

namespace polyrec {

// A facoidal system whose walks are simple cycles, treated as the boundaries
// of the 2-faces, with a corner -> (walk, position) index.
class TwoFaceSet {
 public:
  static TwoFaceSet from_system(const PolytopeGraph& g, const FacoidalSystem& fs);
  const FacoidalSystem& system() const { return fs_; }
  const std::vector<ClosedSmoothWalk>& cycles() const { return fs_.walks; }
  // (walk index, position) of the walk passage through the given corner.
  std::pair<int, int> locate(int corner_id) const;

 private:
  FacoidalSystem fs_;
  std::vector<std::pair<int, int>> where_;
};

// The vertex that follows w on the 2-face through corner (u, v, w), i.e. the
// image of u under the propagation map along the directed edge (v, w).
VertexId psi_singleton(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v, VertexId w,
                       VertexId u);

// Element-wise propagation of s (a subset of N(v) minus w) along (v, w).
// The image is a subset of N(w) minus v of the same size.
VertexSubset psi_subset(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v, VertexId w,
                        const VertexSubset& s);

// Vertex set of the face spanned at v by the neighbor subset t: grows by
// breadth-first propagation, carrying t along every edge inside the face and
// cross-checking repeated visits. |t| = k yields a k-face for valid inputs.
VertexSubset spanned_face(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v,
                          const VertexSubset& t);

struct VertexFacetIncidence {
  std::vector<VertexSubset> facets;        // lexicographically sorted vertex sets
  std::vector<std::vector<int>> facets_of; // per vertex, sorted facet indices
};

// All facets, grown from (d-1)-subsets of neighborhoods. Every vertex must
// end up on exactly d facets and every edge on exactly d-1.
VertexFacetIncidence facets_from_twofaces(const PolytopeGraph& g, const TwoFaceSet& tf);

// Inverse direction: the 2-face at each corner is recovered by intersecting
// the facets containing the corner (the whole vertex set when d == 2).
TwoFaceSet twofaces_from_facets(const PolytopeGraph& g, const VertexFacetIncidence& vfi);

struct FaceLattice {
  int dim = 0;
  // faces[k] = vertex sets of the k-dimensional faces, lexicographically
  // sorted. k ranges over 0..dim; the empty face is left implicit.
  std::vector<std::vector<VertexSubset>> faces;
  std::vector<long long> fvector;          // fvector[k] = faces[k].size()
  // Cover relations between consecutive ranks, as (lower id, upper id) in a
  // global numbering: id of faces[k][i] is offset[k] + i.
  std::vector<std::pair<int, int>> hasse;
  std::vector<int> offset;

  long long face_count() const;            // nonempty faces
};

// Dimension of each face is read off as the degree of its induced subgraph,
// which must be regular and connected (RankInconsistent otherwise).
FaceLattice lattice_from_faces(const PolytopeGraph& g, std::vector<VertexSubset> faces);

// Closes the facet family under intersection and assembles the lattice.
FaceLattice face_lattice(const PolytopeGraph& g, const VertexFacetIncidence& vfi);

}  // namespace polyrec
