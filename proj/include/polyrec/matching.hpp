#pragma once

// Maximum matching in general graphs (blossom contraction) and 2-factor
// extraction via the degree-constrained-subgraph gadget: each vertex v is
// expanded into deg(v) outer and deg(v)-2 inner nodes, inner complete to
// outer within the expansion, plus one outer-outer edge per original edge.
// The gadget has a perfect matching iff the graph has a 2-factor, and the
// matched outer-outer edges are exactly the factor edges.

#include <optional>
#include <utility>
#include <vector>

#include "polyrec/errors.hpp"

namespace polyrec {

struct GenericGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
  std::vector<std::vector<int>> adj;       // sorted

  static GenericGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

using MatePairs = std::vector<std::pair<int, int>>;

// Maximum-cardinality matching; deterministic for a fixed input.
MatePairs max_matching(const GenericGraph& g);

struct TutteGadget {
  GenericGraph graph;
  // Per original edge: the two outer node ids whose matching status decides
  // membership of that edge in the 2-factor.
  std::vector<std::pair<int, int>> outer_pair;
};

// Throws DegreeTooSmall when some vertex has degree < 2.
TutteGadget build_tutte_gadget(const GenericGraph& g);

// Cycles of a 2-factor (each vertex on exactly one cycle), or nullopt when
// none exists.
std::optional<std::vector<std::vector<int>>> two_factor(const GenericGraph& g);

}  // namespace polyrec
