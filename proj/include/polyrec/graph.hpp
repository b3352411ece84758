#pragma once

// Regular graph core: validated container for simple connected d-regular
// graphs, subset utilities, and generators for standard polytope graphs.

#include <string>
#include <utility>
#include <vector>

#include "polyrec/errors.hpp"

namespace polyrec {

using VertexId = int;

// Sorted ascending, no duplicates.
using VertexSubset = std::vector<VertexId>;

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
};

class PolytopeGraph {
 public:
  // Validates simplicity, connectivity and regularity; normalizes edges to
  // u < v and sorts them lexicographically.
  static PolytopeGraph validate(int n, std::vector<std::pair<int, int>> edge_list);

  int vertex_count() const { return n_; }
  int degree() const { return d_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int idx) const { return edges_[idx]; }
  bool has_edge(VertexId u, VertexId v) const;
  // Index into edges() for {u, v}; throws InvalidParameter when absent.
  int edge_index(VertexId u, VertexId v) const;
  // incident_edges(v)[i] is the index of edge {v, neighbors(v)[i]}.
  const std::vector<int>& incident_edges(VertexId v) const { return incident_[v]; }

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::vector<int>> incident_;
  std::vector<Edge> edges_;
};

bool is_sorted_subset(const VertexSubset& s, int n);
bool subset_contains(const VertexSubset& s, VertexId v);
VertexSubset subset_intersection(const VertexSubset& a, const VertexSubset& b);
bool subset_includes(const VertexSubset& outer, const VertexSubset& inner);

struct InducedSubgraph {
  VertexSubset vertices;
  // adj[i] holds neighbors of vertices[i] that lie inside the subset,
  // as original vertex ids, sorted.
  std::vector<std::vector<VertexId>> adj;
};

InducedSubgraph induced_subgraph(const PolytopeGraph& g, const VertexSubset& s);

// True iff the subgraph induced by s is k-regular and connected (and nonempty).
bool is_k_regular_connected(const PolytopeGraph& g, const VertexSubset& s, int k);

// If the induced subgraph is regular and connected, returns its degree.
// Throws RankInconsistent otherwise.
int regular_connected_degree(const PolytopeGraph& g, const VertexSubset& s);

PolytopeGraph make_segment();
PolytopeGraph make_simplex(int d);
PolytopeGraph make_cube(int d);
PolytopeGraph make_polygon(int m);
PolytopeGraph make_prism(int m);
PolytopeGraph make_dodecahedron();
// Cartesian product; vertex (i, j) of (a, b) becomes i * b.vertex_count() + j.
PolytopeGraph product(const PolytopeGraph& a, const PolytopeGraph& b);

// Parses "cube(3)", "simplex(4)", "polygon(5)", "prism(6)", "segment",
// "dodecahedron", "product(polygon(3),segment)" (nesting allowed).
PolytopeGraph generate(const std::string& spec);

}  // namespace polyrec
