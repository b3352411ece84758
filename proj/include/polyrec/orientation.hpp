#pragma once

// Edge orientations of a regular graph: vertex orders and the orientations
// they induce, in-degree statistics, sink counting on vertex subsets, and
// budget-guarded enumeration of all acyclic orientations.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polyrec/graph.hpp"

namespace polyrec {

// A total order on vertices, represented both ways: by_rank[k] is the vertex
// in position k (smallest first), rank[v] its position. Induced edge
// directions always point from the later position to the earlier one, so the
// unique global sink is by_rank[0].
struct VertexOrder {
  std::vector<VertexId> by_rank;
  std::vector<int> rank;

  static VertexOrder from_sequence(std::vector<VertexId> by_rank);
  static VertexOrder from_ranks(std::vector<int> rank);
  static VertexOrder identity(int n);
  int size() const { return static_cast<int>(by_rank.size()); }
};

class Orientation {
 public:
  // bits[e] == 1 means edge e = {u, v} (u < v) is directed u -> v (head v).
  static Orientation from_bits(const PolytopeGraph& g, std::vector<uint8_t> bits);

  bool toward_larger(int edge_idx) const { return bits_[edge_idx] != 0; }
  VertexId head(const PolytopeGraph& g, int edge_idx) const {
    const Edge& e = g.edge(edge_idx);
    return bits_[edge_idx] ? e.v : e.u;
  }
  VertexId tail(const PolytopeGraph& g, int edge_idx) const {
    const Edge& e = g.edge(edge_idx);
    return bits_[edge_idx] ? e.u : e.v;
  }
  int indegree(VertexId v) const { return indegree_[v]; }
  const std::vector<int>& indegrees() const { return indegree_; }
  bool acyclic() const { return acyclic_; }
  const std::vector<uint8_t>& bits() const { return bits_; }
  // Compact byte string identifying the orientation; used for deduplication.
  std::string signature() const;

 private:
  std::vector<uint8_t> bits_;
  std::vector<int> indegree_;
  bool acyclic_ = false;
};

Orientation orient_by_order(const PolytopeGraph& g, const VertexOrder& order);
Orientation reverse_orientation(const PolytopeGraph& g, const Orientation& o);

// h[k] = number of vertices with in-degree k, for k in [0, d].
std::vector<long long> h_vector(const PolytopeGraph& g, const Orientation& o);
// sum over k of h[k] * 2^k.
unsigned long long h_sum(const PolytopeGraph& g, const Orientation& o);
// sum over k of h[k] * C(k, 2).
unsigned long long h2_sum(const PolytopeGraph& g, const Orientation& o);

// Vertices of s whose in-set neighbors are all directed toward them.
VertexSubset sinks_in_subset(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s);

bool has_unique_sink(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s);

// True iff o is acyclic and every given face has a unique sink.
bool is_aof_given_faces(const PolytopeGraph& g, const Orientation& o,
                        const std::vector<VertexSubset>& faces);

struct EnumOptions {
  enum class Mode { Auto, EdgeDfs, Permutation };
  Mode mode = Mode::Auto;
  uint64_t budget = uint64_t{1} << 22;
};

// Calls fn once per acyclic orientation; returns how many were emitted.
// Throws TooLarge when the state budget is exhausted.
uint64_t enumerate_acyclic(const PolytopeGraph& g,
                           const std::function<void(const Orientation&)>& fn,
                           const EnumOptions& opt = {});

struct MinHSumResult {
  unsigned long long min_h_sum = 0;
  uint64_t acyclic_count = 0;
  std::vector<Orientation> argmin;  // every acyclic orientation attaining the minimum
};

// Exhaustive scan for the minimum h-sum over acyclic orientations.
MinHSumResult min_h_sum_orientations(const PolytopeGraph& g, const EnumOptions& opt = {});

// Faces recoverable from a set of orientations: for each orientation and each
// vertex s, the set of vertices reachable from s is kept when its induced
// subgraph is regular and connected. Sorted by (size, lex), deduplicated.
std::vector<VertexSubset> faces_via_orientations(const PolytopeGraph& g,
                                                 const std::vector<Orientation>& orientations);

// True iff no edge is directed from inside s to outside s.
bool is_terminal(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s);

// Searches `candidates` for an orientation under which w is terminal.
std::optional<Orientation> orientation_making_terminal(const PolytopeGraph& g,
                                                       const std::vector<Orientation>& candidates,
                                                       const VertexSubset& w);

// Topological order of an acyclic orientation, heads first (position 0 gets
// the global sink when there is one). Throws NotAcyclic on a cycle.
VertexOrder topological_order(const PolytopeGraph& g, const Orientation& o);

}  // namespace polyrec
