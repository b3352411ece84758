#pragma once

// Closed smooth walks and facoidal systems. A corner of a d-regular graph is
// an unordered pair of neighbors around a center vertex; there are n*C(d,2)
// of them. A closed smooth walk never backtracks; a facoidal system is a set
// of such walks that passes through every corner exactly once.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "polyrec/orientation.hpp"

namespace polyrec {

struct Corner {
  VertexId a;       // a < b
  VertexId center;
  VertexId b;
  friend bool operator==(const Corner& x, const Corner& y) {
    return x.a == y.a && x.center == y.center && x.b == y.b;
  }
};

// Index of corners of a graph with d >= 2. Corner ids are contiguous:
// center-major, then by the position pair of the two endpoints in the
// center's sorted neighbor list.
class CornerTable {
 public:
  explicit CornerTable(const PolytopeGraph& g);

  int count() const { return static_cast<int>(corners_.size()); }
  int per_vertex() const { return per_vertex_; }
  const Corner& corner(int id) const { return corners_[id]; }
  // Unordered endpoints; throws InvalidParameter unless x, y are distinct
  // neighbors of center.
  int id(VertexId center, VertexId x, VertexId y) const;
  // Corners centered at v that contain neighbor u, ordered by the other
  // endpoint ascending. Size d-1.
  const std::vector<int>& corners_at(VertexId v, VertexId u) const;
  // Position of corner c inside corners_at(center(c), u) where u is an
  // endpoint of c.
  int slot_of(int corner_id, VertexId u) const;
  // 0 when the walk through corner (a, center, b) leaves via edge {center,a},
  // 1 when via {center,b}.
  int side_of(int corner_id, VertexId endpoint) const;

 private:
  int n_ = 0;
  int d_ = 0;
  int per_vertex_ = 0;
  std::vector<Corner> corners_;
  std::vector<std::vector<int>> by_directed_edge_;  // [2*e + side] -> corner ids
  const std::vector<int>& bucket(VertexId v, VertexId u) const;
  friend class PolytopeGraphAccess;
  const PolytopeGraph* g_ = nullptr;
};

// Corners as nodes; two corners are adjacent iff their centers are distinct
// and joined by an edge contained in both corners. Degree is 2(d-1).
struct CornerGraph {
  int nodes = 0;
  std::vector<std::vector<int>> adj;             // sorted
  std::vector<std::pair<int, int>> edges;        // u < v, lexicographic
};

CornerGraph corner_graph(const PolytopeGraph& g);

// Cyclic vertex sequence of length >= 3 whose consecutive vertices are
// adjacent and which never reverses (w[i-1] != w[i+1] cyclically). Stored in
// canonical form: lexicographically smallest among all rotations of both
// traversal directions.
class ClosedSmoothWalk {
 public:
  static ClosedSmoothWalk canonical(const PolytopeGraph& g, std::vector<VertexId> seq);
  const std::vector<VertexId>& seq() const { return seq_; }
  int length() const { return static_cast<int>(seq_.size()); }
  friend bool operator==(const ClosedSmoothWalk& x, const ClosedSmoothWalk& y) {
    return x.seq_ == y.seq_;
  }
  friend bool operator<(const ClosedSmoothWalk& x, const ClosedSmoothWalk& y) {
    return x.seq_ < y.seq_;
  }

 private:
  std::vector<VertexId> seq_;
};

struct FacoidalSystem {
  std::vector<ClosedSmoothWalk> walks;  // sorted ascending
  int cardinality() const { return static_cast<int>(walks.size()); }
  size_t total_length() const;
};

// Per-edge bijections between the d-1 corners on either side of each edge.
// perm[e][i] = j pairs the i-th corner at u containing v with the j-th corner
// at v containing u, for edge e = {u, v}, u < v.
struct EdgePairing {
  std::vector<std::vector<int>> perm;

  static EdgePairing canonical(const PolytopeGraph& g);                 // identity bijections
  static EdgePairing random(const PolytopeGraph& g, uint64_t seed);
  void check(const PolytopeGraph& g) const;  // throws InvalidPairing
};

// Port-level view of a pairing: link[c][s] is the (corner, slot) reached when
// leaving corner c through the edge on side s (0: toward corner(c).a, 1:
// toward corner(c).b). Every entry is mirrored.
using PortLinks = std::vector<std::array<std::pair<int, int>, 2>>;

PortLinks port_links(const PolytopeGraph& g, const CornerTable& ct, const EdgePairing& p);

// Disjoint corner cycles of a link table; every corner appears exactly once.
std::vector<std::vector<int>> trace_cycles(const CornerTable& ct, const PortLinks& links);

// Traces the disjoint walk cycles induced by a pairing. Always yields a valid
// facoidal system.
FacoidalSystem walks_from_pairing(const PolytopeGraph& g, const EdgePairing& p);

// Recovers the unique pairing that induces the given system.
EdgePairing pairing_from_system(const PolytopeGraph& g, const FacoidalSystem& fs);

// Validates raw vertex sequences as a facoidal system: each a closed smooth
// walk, corners covered exactly once. Throws NotAWalk / CornerDuplicated /
// CornerMissing.
FacoidalSystem validate_facoidal(const PolytopeGraph& g,
                                 const std::vector<std::vector<VertexId>>& raw);

// Cycles of corner ids in the corner graph, one per walk.
using TwoFactor = std::vector<std::vector<int>>;

TwoFactor facoidal_to_two_factor(const PolytopeGraph& g, const FacoidalSystem& fs);

// Inverse direction; requires the 2-factor to be coherent: the two corner
// graph edges at each corner must use the two distinct graph edges of that
// corner. Throws IncoherentFactor otherwise.
FacoidalSystem two_factor_to_facoidal(const PolytopeGraph& g, const TwoFactor& tf);

// Fallback for incoherent factors: keeps every per-edge link the factor
// realizes coherently, completes the remaining slots in canonical order, and
// traces the resulting pairing.
FacoidalSystem repair_incoherent_factor(const PolytopeGraph& g, const TwoFactor& tf);

struct FindStrategy {
  enum class Kind { PairingCanonical, PairingRandom, Matching };
  Kind kind = Kind::PairingCanonical;
  uint64_t seed = 0;
};

// Produces some facoidal system. The Matching strategy goes through a
// 2-factor of the corner graph and repairs incoherent factors by keeping the
// coherent part of the induced pairing.
FacoidalSystem find_facoidal(const PolytopeGraph& g, const FindStrategy& strategy = {});

// Positions i of w where both surrounding edges point into w[i].
std::vector<int> walk_sink_positions(const PolytopeGraph& g, const ClosedSmoothWalk& w,
                                     const Orientation& o);
// Positions i of w where both surrounding edges point away from w[i].
std::vector<int> walk_source_positions(const PolytopeGraph& g, const ClosedSmoothWalk& w,
                                       const Orientation& o);

// True iff o is acyclic and every walk (taken as a 2-face boundary) has
// exactly one sink.
bool is_aof_via_twofaces(const PolytopeGraph& g, const Orientation& o,
                         const std::vector<ClosedSmoothWalk>& twofaces);

}  // namespace polyrec
