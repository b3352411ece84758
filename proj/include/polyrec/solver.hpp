#pragma once

// Primal-dual optimization: maximize the number of walks in a facoidal
// system against minimizing the sum of C(indegree, 2) over acyclic
// orientations. Any facoidal system is bounded by any acyclic orientation's
// sum, so matching values certify joint optimality; on polytope graphs the
// certified walks are exactly the 2-face boundaries.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "polyrec/reconstruct.hpp"

namespace polyrec {

struct SolveConfig {
  uint64_t seed = 1;
  int restarts = 16;
  long long budget_iters = 200000;  // candidate evaluations per restart
  double budget_secs = 120.0;       // wall clock for the whole solve, 0 = off
  bool exact = false;               // exhaustive fallbacks when a gap remains
  int threads = 1;                  // restarts run in parallel, merged by index
  uint64_t enum_budget = uint64_t{1} << 22;
};

struct SolveStats {
  long long evaluations = 0;
  long long primal_accepted = 0;
  long long dual_accepted = 0;
  long long weak_duality_checks = 0;
  long long weak_duality_violations = 0;
  int restarts_used = 0;
  bool exact_primal_complete = false;
  bool exact_dual_complete = false;
  double seconds = 0.0;
};

struct DualityState {
  FacoidalSystem primal;
  VertexOrder order;
  Orientation orientation;
  unsigned long long primal_value = 0;  // number of walks
  unsigned long long dual_value = 0;    // sum of C(indegree, 2)
  unsigned long long gap() const { return dual_value - primal_value; }
};

struct Certificate {
  FacoidalSystem walks;
  VertexOrder order;
  Orientation orientation;
  std::vector<int> sink_positions;  // unique sink position per walk
  unsigned long long cardinality = 0;
  unsigned long long h2 = 0;
  // The optimality of the pair is unconditional; reading the walks as 2-face
  // boundaries additionally assumes the input graph is polytopal.
  bool conditional = true;
};

// Assembles and checks a certificate; throws GapNotClosed unless the walk
// count equals the orientation's value.
Certificate make_certificate(const PolytopeGraph& g, const FacoidalSystem& fs,
                             const VertexOrder& order);

struct SolveResult {
  DualityState state;
  std::optional<Certificate> certificate;
  SolveStats stats;
};

SolveResult solve(const PolytopeGraph& g, const SolveConfig& cfg = {});

nlohmann::json certificate_to_json(const PolytopeGraph& g, const Certificate& c);
nlohmann::json gap_to_json(const PolytopeGraph& g, const DualityState& s, const SolveStats& st);

struct Verdict {
  bool accepted = false;
  bool conditional = true;
  std::string reason;
};

// Structural problems in the JSON throw ParseError; semantic failures come
// back as a rejecting verdict with a reason.
Verdict verify_certificate(const PolytopeGraph& g, const nlohmann::json& cert);

// Returns a system with strictly more walks than the claimed one when the
// solver state has one, nullopt otherwise. The claim must be a valid system.
std::optional<FacoidalSystem> refute_walk_claim(const PolytopeGraph& g,
                                                const FacoidalSystem& claimed,
                                                const DualityState& found);

// Returns an acyclic orientation with a strictly smaller value than the
// claimed one when the solver state has one. Throws NotAcyclic on a cyclic
// claim.
std::optional<Orientation> refute_order_claim(const PolytopeGraph& g, const Orientation& claimed,
                                              const DualityState& found);

struct Reconstruction {
  TwoFaceSet twofaces;
  VertexFacetIncidence incidence;
  FaceLattice lattice;
  Certificate certificate;
  SolveStats stats;
};

// Full pipeline: solve to a certificate (GapNotClosed when the gap stays
// open), then grow facets and assemble the lattice from the certified walks.
Reconstruction reconstruct_full(const PolytopeGraph& g, const SolveConfig& cfg = {});

// Exhaustive baseline over all acyclic orientations: the minimizers of the
// power-of-two in-degree sum yield every face as a reachable set. Exponential
// and budget-guarded; for small instances only.
FaceLattice exhaustive_reconstruct(const PolytopeGraph& g, const EnumOptions& opt = {});

}  // namespace polyrec
