#include "polyrec/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <thread>

#include "polyrec/io.hpp"

namespace polyrec {

namespace {

using Clock = std::chrono::steady_clock;

long long binom2(long long k) { return k * (k - 1) / 2; }

struct Budget {
  long long max_evals = 0;
  std::optional<Clock::time_point> deadline;
  long long evals = 0;
  bool timed_out = false;

  // Call once per candidate evaluation; false when the budget is gone.
  bool tick() {
    ++evals;
    if (deadline && (evals & 1023) == 0 && Clock::now() >= *deadline) timed_out = true;
    return ok();
  }
  bool ok() const { return evals < max_evals && !timed_out; }
};

// ---------------------------------------------------------------------------
// Dual side: vertex orders under adjacent transpositions and relocations.

struct DualSearch {
  const PolytopeGraph& g;
  std::vector<int> rank, by_rank, indeg;
  long long h2 = 0;

  explicit DualSearch(const PolytopeGraph& g_) : g(g_) {}

  void load(const VertexOrder& o) {
    rank = o.rank;
    by_rank = o.by_rank;
    int n = g.vertex_count();
    indeg.assign(n, 0);
    for (const Edge& e : g.edges()) ++indeg[rank[e.u] < rank[e.v] ? e.u : e.v];
    h2 = 0;
    for (int v = 0; v < n; ++v) h2 += binom2(indeg[v]);
  }

  long long swap_delta(int k) const {
    int a = by_rank[k], b = by_rank[k + 1];
    if (!g.has_edge(a, b)) return 0;
    return binom2(indeg[a] - 1) + binom2(indeg[b] + 1) - binom2(indeg[a]) - binom2(indeg[b]);
  }

  void apply_swap(int k) {
    h2 += swap_delta(k);
    int a = by_rank[k], b = by_rank[k + 1];
    if (g.has_edge(a, b)) {
      --indeg[a];
      ++indeg[b];
    }
    by_rank[k] = b;
    by_rank[k + 1] = a;
    rank[b] = k;
    rank[a] = k + 1;
  }

  long long reloc_delta(int from, int to) const {
    if (from == to) return 0;
    int v = by_rank[from];
    long long delta = 0;
    int iv = indeg[v], iv_new = iv;
    for (int u : g.neighbors(v)) {
      int r = rank[u];
      bool above_old = r > from;
      int r1 = r > from ? r - 1 : r;
      bool above_new = r1 >= to;
      if (above_old == above_new) continue;
      if (above_new) {
        ++iv_new;
        delta += binom2(indeg[u] - 1) - binom2(indeg[u]);
      } else {
        --iv_new;
        delta += binom2(indeg[u] + 1) - binom2(indeg[u]);
      }
    }
    return delta + binom2(iv_new) - binom2(iv);
  }

  void apply_reloc(int from, int to) {
    if (from == to) return;
    h2 += reloc_delta(from, to);
    int v = by_rank[from];
    for (int u : g.neighbors(v)) {
      int r = rank[u];
      bool above_old = r > from;
      int r1 = r > from ? r - 1 : r;
      bool above_new = r1 >= to;
      if (above_old == above_new) continue;
      if (above_new) {
        ++indeg[v];
        --indeg[u];
      } else {
        --indeg[v];
        ++indeg[u];
      }
    }
    by_rank.erase(by_rank.begin() + from);
    by_rank.insert(by_rank.begin() + to, v);
    for (int k = std::min(from, to); k <= std::max(from, to); ++k) rank[by_rank[k]] = k;
  }

  long long descend(Budget& b, SolveStats& st) {
    long long accepted = 0;
    int n = g.vertex_count();
    bool improved = true;
    while (improved && b.ok()) {
      improved = false;
      for (int k = 0; k + 1 < n; ++k) {
        if (!b.tick()) return accepted;
        if (swap_delta(k) < 0) {
          apply_swap(k);
          ++accepted;
          ++st.dual_accepted;
          improved = true;
        }
      }
      for (int from = 0; from < n && !improved; ++from)
        for (int to = 0; to < n && !improved; ++to) {
          if (from == to) continue;
          if (!b.tick()) return accepted;
          if (reloc_delta(from, to) < 0) {
            apply_reloc(from, to);
            ++accepted;
            ++st.dual_accepted;
            improved = true;
          }
        }
    }
    return accepted;
  }

  void plateau(std::mt19937_64& rng, Budget& b, SolveStats& st, int steps,
               std::deque<uint64_t>& tabu, size_t tenure) {
    int n = g.vertex_count();
    if (n < 2) return;
    for (int s = 0; s < steps; ++s) {
      if (!b.tick()) return;
      int k = static_cast<int>(rng() % (n - 1));
      long long d = swap_delta(k);
      if (d > 0) continue;
      uint64_t key = static_cast<uint64_t>(std::min(by_rank[k], by_rank[k + 1])) * n +
                     std::max(by_rank[k], by_rank[k + 1]);
      if (d == 0 && std::find(tabu.begin(), tabu.end(), key) != tabu.end()) continue;
      apply_swap(k);
      ++st.dual_accepted;
      if (d == 0) {
        tabu.push_back(key);
        if (tabu.size() > tenure) tabu.pop_front();
      }
    }
  }

  void kick(std::mt19937_64& rng, Budget& b, SolveStats& st, int moves) {
    int n = g.vertex_count();
    for (int s = 0; s < moves; ++s) {
      if (!b.tick()) return;
      int from = static_cast<int>(rng() % n);
      int to = static_cast<int>(rng() % n);
      if (from == to) continue;
      apply_reloc(from, to);
      ++st.dual_accepted;
    }
  }

  VertexOrder order() const { return VertexOrder::from_sequence(by_rank); }
};

// ---------------------------------------------------------------------------
// Primal side: pairings under two-swaps on an edge, with targeted retracing.

struct PrimalSearch {
  const PolytopeGraph& g;
  const CornerTable& ct;
  PortLinks link;
  std::vector<int> cycle_of;
  int cycle_count = 0;
  int next_label = 0;
  long long dual_bound = 0;  // any valid orientation value; walk count never exceeds it
  std::vector<int> buf_a, buf_b;
  bool last_joint = false;
  int last_delta = 0;

  PrimalSearch(const PolytopeGraph& g_, const CornerTable& ct_) : g(g_), ct(ct_) {}

  void load(const EdgePairing& p) {
    link = port_links(g, ct, p);
    auto cycles = trace_cycles(ct, link);
    cycle_of.assign(ct.count(), -1);
    for (size_t i = 0; i < cycles.size(); ++i)
      for (int c : cycles[i]) cycle_of[c] = static_cast<int>(i);
    cycle_count = static_cast<int>(cycles.size());
    next_label = cycle_count;
  }

  struct SwapPorts {
    int l1, s1, l2, s2;
  };

  SwapPorts ports(int e, int i, int j) const {
    const Edge& ed = g.edge(e);
    const auto& left = ct.corners_at(ed.u, ed.v);
    int l1 = left[i], l2 = left[j];
    return {l1, ct.side_of(l1, ed.v), l2, ct.side_of(l2, ed.v)};
  }

  void relink(const SwapPorts& sp) {
    auto [r1, sr1] = link[sp.l1][sp.s1];
    auto [r2, sr2] = link[sp.l2][sp.s2];
    link[sp.l1][sp.s1] = {r2, sr2};
    link[r2][sr2] = {sp.l1, sp.s1};
    link[sp.l2][sp.s2] = {r1, sr1};
    link[r1][sr1] = {sp.l2, sp.s2};
  }

  bool trace_watch(int c0, int s0, int watch, std::vector<int>& buf) const {
    buf.clear();
    int cur = c0, in_slot = s0;
    bool seen = false;
    do {
      buf.push_back(cur);
      if (cur == watch) seen = true;
      auto [nc, ns] = link[cur][1 - in_slot];
      cur = nc;
      in_slot = ns;
    } while (cur != c0 || in_slot != s0);
    return seen;
  }

  // Applies the relink and reports the cycle count delta; commit() keeps it,
  // revert() undoes it.
  int probe(const SwapPorts& sp) {
    int old_part = cycle_of[sp.l1] == cycle_of[sp.l2] ? 1 : 2;
    relink(sp);
    last_joint = trace_watch(sp.l1, sp.s1, sp.l2, buf_a);
    last_delta = (last_joint ? 1 : 2) - old_part;
    return last_delta;
  }

  void commit(const SwapPorts& sp, SolveStats& st) {
    int la = next_label++;
    for (int c : buf_a) cycle_of[c] = la;
    if (!last_joint) {
      trace_watch(sp.l2, sp.s2, -1, buf_b);
      int lb = next_label++;
      for (int c : buf_b) cycle_of[c] = lb;
    }
    cycle_count += last_delta;
    ++st.primal_accepted;
    ++st.weak_duality_checks;
    if (cycle_count > dual_bound) ++st.weak_duality_violations;
  }

  void revert(const SwapPorts& sp) { relink(sp); }

  bool at_target() const { return cycle_count >= dual_bound; }

  long long descend(Budget& b, SolveStats& st) {
    long long accepted = 0;
    int m = g.edge_count(), slots = g.degree() - 1;
    if (slots < 2) return 0;
    bool improved = true;
    while (improved && b.ok() && !at_target()) {
      improved = false;
      for (int e = 0; e < m && !at_target(); ++e)
        for (int i = 0; i < slots; ++i)
          for (int j = i + 1; j < slots; ++j) {
            if (!b.tick()) return accepted;
            SwapPorts sp = ports(e, i, j);
            if (probe(sp) > 0) {
              commit(sp, st);
              ++accepted;
              improved = true;
            } else {
              revert(sp);
            }
          }
    }
    return accepted;
  }

  long long plateau(std::mt19937_64& rng, Budget& b, SolveStats& st, int steps,
                    std::deque<uint64_t>& tabu, size_t tenure) {
    int m = g.edge_count(), slots = g.degree() - 1;
    if (slots < 2) return 0;
    long long gained = 0;
    for (int s = 0; s < steps && !at_target(); ++s) {
      if (!b.tick()) break;
      int e = static_cast<int>(rng() % m);
      int i = static_cast<int>(rng() % slots);
      int j = static_cast<int>(rng() % slots);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      uint64_t key = (static_cast<uint64_t>(e) * 64 + i) * 64 + j;
      SwapPorts sp = ports(e, i, j);
      int d = probe(sp);
      if (d > 0) {
        commit(sp, st);
        gained += d;
      } else if (d == 0 && std::find(tabu.begin(), tabu.end(), key) == tabu.end()) {
        commit(sp, st);
        tabu.push_back(key);
        if (tabu.size() > tenure) tabu.pop_front();
      } else {
        revert(sp);
      }
    }
    return gained;
  }

  void kick(std::mt19937_64& rng, Budget& b, SolveStats& st, int moves) {
    int m = g.edge_count(), slots = g.degree() - 1;
    if (slots < 2) return;
    for (int s = 0; s < moves; ++s) {
      if (!b.tick()) return;
      int e = static_cast<int>(rng() % m);
      int i = static_cast<int>(rng() % slots);
      int j = static_cast<int>(rng() % slots);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      SwapPorts sp = ports(e, i, j);
      probe(sp);
      commit(sp, st);
    }
  }

  EdgePairing pairing() const {
    EdgePairing p;
    p.perm.assign(g.edge_count(), std::vector<int>(g.degree() - 1, -1));
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const auto& left = ct.corners_at(ed.u, ed.v);
      for (size_t i = 0; i < left.size(); ++i) {
        auto [r, sr] = link[left[i]][ct.side_of(left[i], ed.v)];
        p.perm[e][i] = ct.slot_of(r, ed.u);
      }
    }
    return p;
  }

  FacoidalSystem system() const {
    FacoidalSystem fs;
    for (const auto& cycle : trace_cycles(ct, link)) {
      std::vector<VertexId> centers;
      centers.reserve(cycle.size());
      for (int c : cycle) centers.push_back(ct.corner(c).center);
      fs.walks.push_back(ClosedSmoothWalk::canonical(g, std::move(centers)));
    }
    std::sort(fs.walks.begin(), fs.walks.end());
    return fs;
  }
};

// Aligns the two sides of every edge by the order positions of the third
// vertex of each corner. Recovers the exact 2-face pairing on several
// families when the order has no conflicts, and is a strong warm start
// elsewhere.
EdgePairing monotone_pairing(const PolytopeGraph& g, const CornerTable& ct,
                             const VertexOrder& order) {
  EdgePairing p;
  p.perm.assign(g.edge_count(), std::vector<int>(g.degree() - 1, -1));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& left = ct.corners_at(ed.u, ed.v);
    const auto& right = ct.corners_at(ed.v, ed.u);
    auto third = [&](int corner_id, VertexId not_this) {
      const Corner& c = ct.corner(corner_id);
      return c.a == not_this ? c.b : c.a;
    };
    std::vector<int> li(left.size()), ri(right.size());
    for (size_t i = 0; i < left.size(); ++i) li[i] = static_cast<int>(i);
    for (size_t i = 0; i < right.size(); ++i) ri[i] = static_cast<int>(i);
    std::sort(li.begin(), li.end(), [&](int x, int y) {
      return order.rank[third(left[x], ed.v)] < order.rank[third(left[y], ed.v)];
    });
    std::sort(ri.begin(), ri.end(), [&](int x, int y) {
      return order.rank[third(right[x], ed.u)] < order.rank[third(right[y], ed.u)];
    });
    for (size_t k = 0; k < li.size(); ++k) p.perm[e][li[k]] = ri[k];
  }
  return p;
}

struct RestartResult {
  FacoidalSystem system;
  long long primal_value = 0;
  std::vector<int> order_seq;
  long long dual_value = 0;
  SolveStats stats;
};

VertexOrder initial_order(const PolytopeGraph& g, int index, std::mt19937_64& rng) {
  int n = g.vertex_count();
  if (index == 0) return VertexOrder::identity(n);
  if (index == 1) {
    // Breadth-first discovery order.
    std::vector<VertexId> seq;
    std::vector<char> vis(n, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      seq.push_back(v);
      for (int w : g.neighbors(v))
        if (!vis[w]) {
          vis[w] = 1;
          q.push_back(w);
        }
    }
    return VertexOrder::from_sequence(std::move(seq));
  }
  std::vector<VertexId> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(seq[i], seq[rng() % (i + 1)]);
  return VertexOrder::from_sequence(std::move(seq));
}

EdgePairing initial_pairing(const PolytopeGraph& g, int index, std::mt19937_64& rng) {
  if (index == 0) return EdgePairing::canonical(g);
  if (index == 1)
    return pairing_from_system(g, find_facoidal(g, {FindStrategy::Kind::Matching, 0}));
  return EdgePairing::random(g, rng());
}

RestartResult run_restart(const PolytopeGraph& g, const CornerTable& ct, const SolveConfig& cfg,
                          int index, std::optional<Clock::time_point> deadline) {
  std::mt19937_64 rng(cfg.seed + static_cast<uint64_t>(index));
  Budget budget{cfg.budget_iters, deadline, 0, false};
  RestartResult out;
  SolveStats& st = out.stats;
  int n = g.vertex_count();

  // Dual phase: descend, then bounded plateau rounds with kicks.
  DualSearch dual(g);
  dual.load(initial_order(g, index, rng));
  dual.descend(budget, st);
  long long best_h2 = dual.h2;
  std::vector<int> best_seq = dual.by_rank;
  std::deque<uint64_t> dual_tabu;
  int dual_rounds = 6;
  for (int r = 0; r < dual_rounds && budget.ok(); ++r) {
    dual.plateau(rng, budget, st, 4 * n, dual_tabu, n);
    dual.descend(budget, st);
    if (dual.h2 < best_h2) {
      best_h2 = dual.h2;
      best_seq = dual.by_rank;
      r = -1;  // fresh improvement resets the round counter
    } else {
      dual.kick(rng, budget, st, 2 + n / 8);
      dual.descend(budget, st);
      if (dual.h2 < best_h2) {
        best_h2 = dual.h2;
        best_seq = dual.by_rank;
        r = -1;
      }
    }
  }
  VertexOrder best_order = VertexOrder::from_sequence(best_seq);
  out.order_seq = best_seq;
  out.dual_value = best_h2;

  // Primal phase: best of the scheduled start and the order-aligned start,
  // then plateau/kick rounds until the dual bound or the budget is hit.
  PrimalSearch primal(g, ct);
  primal.dual_bound = best_h2;
  primal.load(initial_pairing(g, index, rng));
  primal.descend(budget, st);
  {
    PrimalSearch aligned(g, ct);
    aligned.dual_bound = best_h2;
    aligned.load(monotone_pairing(g, ct, best_order));
    aligned.descend(budget, st);
    st.weak_duality_checks += 1;
    if (aligned.cycle_count > aligned.dual_bound) ++st.weak_duality_violations;
    if (aligned.cycle_count > primal.cycle_count) primal.load(aligned.pairing());
  }
  long long best_cycles = primal.cycle_count;
  EdgePairing best_pairing = primal.pairing();
  std::deque<uint64_t> primal_tabu;
  int corners = ct.count();
  int stall_rounds = 8;
  for (int r = 0; r < stall_rounds && budget.ok() && !primal.at_target(); ++r) {
    primal.plateau(rng, budget, st, 8 * corners, primal_tabu, corners);
    primal.descend(budget, st);
    if (primal.cycle_count > best_cycles) {
      best_cycles = primal.cycle_count;
      best_pairing = primal.pairing();
      r = -1;
    } else {
      primal.kick(rng, budget, st, 2 + corners / 24);
      primal.descend(budget, st);
      if (primal.cycle_count > best_cycles) {
        best_cycles = primal.cycle_count;
        best_pairing = primal.pairing();
        r = -1;
      }
    }
  }
  if (primal.cycle_count < best_cycles) {
    primal.load(best_pairing);
  }
  out.system = primal.system();
  out.primal_value = primal.cycle_count;
  st.evaluations = budget.evals;
  return out;
}

// ---------------------------------------------------------------------------
// Exact primal: branch and bound over per-edge bijections, with a
// path/cycle counting bound and rollback union-find over corners.

struct ExactPrimal {
  const PolytopeGraph& g;
  const CornerTable& ct;
  uint64_t budget;
  long long dual_cap;

  uint64_t nodes = 0;
  long long best;
  std::vector<std::vector<int>> best_perm;
  std::vector<std::vector<int>> current;
  std::vector<std::vector<std::vector<int>>> perms_by_edge_arity;  // all perms of d-1
  std::vector<int> parent, csize;
  std::vector<int> deg;
  int closed = 0, paths = 0, untouched;

  struct Undo {
    int rx, ry;   // ry == -1 for a cycle closure
    int deg_x, deg_y;
  };
  std::vector<Undo> log;

  ExactPrimal(const PolytopeGraph& g_, const CornerTable& ct_, uint64_t budget_,
              long long start_best, long long dual_cap_)
      : g(g_), ct(ct_), budget(budget_), dual_cap(dual_cap_), best(start_best) {
    int c = ct.count();
    parent.resize(c);
    csize.assign(c, 1);
    deg.assign(c, 0);
    for (int i = 0; i < c; ++i) parent[i] = i;
    untouched = c;
    int arity = g.degree() - 1;
    std::vector<int> base(arity);
    for (int i = 0; i < arity; ++i) base[i] = i;
    std::vector<std::vector<int>> all;
    do {
      all.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    perms_by_edge_arity.push_back(std::move(all));
    current.assign(g.edge_count(), {});
  }

  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }

  void add_link(int x, int y) {
    Undo u{.rx = -1, .ry = -1, .deg_x = x, .deg_y = y};
    if (deg[x] == 0) --untouched;
    if (deg[y] == 0) --untouched;
    ++deg[x];
    ++deg[y];
    int rx = find(x), ry = find(y);
    if (rx == ry) {
      ++closed;
      --paths;
      u.rx = rx;
    } else {
      int sx = csize[rx], sy = csize[ry];
      if (sx == 1 && sy == 1)
        ++paths;
      else if (sx > 1 && sy > 1)
        --paths;
      parent[ry] = rx;
      csize[rx] += sy;
      u.rx = rx;
      u.ry = ry;
    }
    log.push_back(u);
  }

  void undo_link() {
    Undo u = log.back();
    log.pop_back();
    int x = u.deg_x, y = u.deg_y;
    if (u.ry == -1) {
      --closed;
      ++paths;
    } else {
      csize[u.rx] -= csize[u.ry];
      parent[u.ry] = u.ry;
      int sx = csize[u.rx], sy = csize[u.ry];
      if (sx == 1 && sy == 1)
        --paths;
      else if (sx > 1 && sy > 1)
        ++paths;
    }
    --deg[x];
    --deg[y];
    if (deg[x] == 0) ++untouched;
    if (deg[y] == 0) ++untouched;
  }

  long long bound() const { return closed + paths + untouched / 3; }

  bool done() const { return best >= dual_cap; }

  void rec(int e) {
    if (++nodes > budget) fail(Err::TooLarge, "exact pairing search exceeded node budget");
    if (done()) return;
    if (e == g.edge_count()) {
      if (closed > best) {
        best = closed;
        best_perm = current;
      }
      return;
    }
    if (bound() <= best) return;
    const Edge& ed = g.edge(e);
    const auto& left = ct.corners_at(ed.u, ed.v);
    const auto& right = ct.corners_at(ed.v, ed.u);
    for (const auto& perm : perms_by_edge_arity[0]) {
      for (size_t i = 0; i < left.size(); ++i) add_link(left[i], right[perm[i]]);
      current[e] = perm;
      rec(e + 1);
      for (size_t i = 0; i < left.size(); ++i) undo_link();
      if (done()) break;
    }
    current[e].clear();
  }
};

SolveStats& accumulate(SolveStats& into, const SolveStats& from) {
  into.evaluations += from.evaluations;
  into.primal_accepted += from.primal_accepted;
  into.dual_accepted += from.dual_accepted;
  into.weak_duality_checks += from.weak_duality_checks;
  into.weak_duality_violations += from.weak_duality_violations;
  return into;
}

}  // namespace

Certificate make_certificate(const PolytopeGraph& g, const FacoidalSystem& fs,
                             const VertexOrder& order) {
  Certificate c;
  c.orientation = orient_by_order(g, order);
  c.order = order;
  c.walks = fs;
  c.cardinality = fs.cardinality();
  c.h2 = h2_sum(g, c.orientation);
  if (c.cardinality != c.h2)
    fail(Err::GapNotClosed, "walk count " + std::to_string(c.cardinality) +
                                " != orientation value " + std::to_string(c.h2));
  c.sink_positions.reserve(fs.walks.size());
  for (const auto& w : fs.walks) {
    auto sinks = walk_sink_positions(g, w, c.orientation);
    if (sinks.size() != 1)
      fail(Err::GapNotClosed, "a walk does not have a unique sink despite matching values");
    c.sink_positions.push_back(sinks[0]);
  }
  return c;
}

SolveResult solve(const PolytopeGraph& g, const SolveConfig& cfg) {
  if (g.degree() < 2) fail(Err::DegreeTooSmall, "solving requires degree >= 2");
  if (cfg.restarts < 1 || cfg.budget_iters < 1 || cfg.threads < 1 || cfg.budget_secs < 0)
    fail(Err::InvalidParameter, "budgets, restarts and threads must be positive");
  auto t0 = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (cfg.budget_secs > 0)
    deadline = t0 + std::chrono::microseconds(static_cast<long long>(cfg.budget_secs * 1e6));

  CornerTable ct(g);
  SolveResult res;
  SolveStats& st = res.stats;

  std::vector<std::optional<RestartResult>> results(cfg.restarts);
  bool have_primal = false, have_dual = false;
  long long best_primal = -1, best_dual = 0;
  bool stop = false;
  int batch = std::max(1, cfg.threads);
  for (int start = 0; start < cfg.restarts && !stop; start += batch) {
    int end = std::min(start + batch, cfg.restarts);
    if (batch == 1) {
      results[start] = run_restart(g, ct, cfg, start, deadline);
    } else {
      std::vector<std::thread> pool;
      for (int i = start; i < end; ++i)
        pool.emplace_back([&, i] { results[i] = run_restart(g, ct, cfg, i, deadline); });
      for (auto& t : pool) t.join();
    }
    for (int i = start; i < end && !stop; ++i) {
      RestartResult& r = *results[i];
      accumulate(st, r.stats);
      ++st.restarts_used;
      if (!have_primal || r.primal_value > best_primal) {
        best_primal = r.primal_value;
        res.state.primal = std::move(r.system);
        have_primal = true;
      }
      if (!have_dual || r.dual_value < best_dual) {
        best_dual = r.dual_value;
        res.state.order = VertexOrder::from_sequence(r.order_seq);
        have_dual = true;
      }
      if (best_primal == best_dual) stop = true;
    }
  }

  if (cfg.exact && best_primal != best_dual) {
    // Exhaustive dual: scan all acyclic orientations for the true minimum.
    try {
      long long exact_min = -1;
      std::optional<Orientation> argmin;
      enumerate_acyclic(
          g,
          [&](const Orientation& o) {
            long long h2 = static_cast<long long>(h2_sum(g, o));
            if (exact_min < 0 || h2 < exact_min) {
              exact_min = h2;
              argmin = o;
            }
          },
          {EnumOptions::Mode::Auto, cfg.enum_budget});
      st.exact_dual_complete = true;
      if (exact_min >= 0 && exact_min < best_dual) {
        best_dual = exact_min;
        res.state.order = topological_order(g, *argmin);
      }
    } catch (const Error& e) {
      if (e.code() != Err::TooLarge) throw;
    }
    // Exhaustive primal: branch and bound over pairings.
    if (best_primal != best_dual) {
      try {
        ExactPrimal bb(g, ct, cfg.enum_budget, best_primal, best_dual);
        bb.rec(0);
        st.exact_primal_complete = true;
        if (bb.best > best_primal && !bb.best_perm.empty()) {
          EdgePairing p;
          p.perm = bb.best_perm;
          res.state.primal = walks_from_pairing(g, p);
          best_primal = bb.best;
        }
      } catch (const Error& e) {
        if (e.code() != Err::TooLarge) throw;
      }
    }
  }

  res.state.orientation = orient_by_order(g, res.state.order);
  res.state.primal_value = static_cast<unsigned long long>(best_primal);
  res.state.dual_value = static_cast<unsigned long long>(best_dual);
  ++st.weak_duality_checks;
  if (res.state.primal_value > res.state.dual_value) ++st.weak_duality_violations;
  if (res.state.primal_value == res.state.dual_value)
    res.certificate = make_certificate(g, res.state.primal, res.state.order);
  st.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

nlohmann::json certificate_to_json(const PolytopeGraph& g, const Certificate& c) {
  nlohmann::json j;
  j["cardinality"] = c.cardinality;
  j["conditional"] = c.conditional;
  j["h2sum"] = c.h2;
  j["orientation"] = orientation_to_strings(g, c.orientation);
  j["sink_positions"] = c.sink_positions;
  j["vertex_order"] = order_to_json(c.order);
  j["walks"] = facoidal_to_json(c.walks)["walks"];
  return j;
}

nlohmann::json gap_to_json(const PolytopeGraph& g, const DualityState& s, const SolveStats& st) {
  nlohmann::json j;
  j["best_cardinality"] = s.primal_value;
  j["best_h2sum"] = s.dual_value;
  j["gap"] = s.gap();
  j["orientation"] = orientation_to_strings(g, s.orientation);
  j["vertex_order"] = order_to_json(s.order);
  j["walks"] = facoidal_to_json(s.primal)["walks"];
  j["stats"] = {{"evaluations", st.evaluations},
                {"primal_accepted", st.primal_accepted},
                {"dual_accepted", st.dual_accepted},
                {"restarts_used", st.restarts_used},
                {"exact_primal_complete", st.exact_primal_complete},
                {"exact_dual_complete", st.exact_dual_complete}};
  return j;
}

namespace {

Verdict reject(std::string reason) { return Verdict{false, true, std::move(reason)}; }

}  // namespace

Verdict verify_certificate(const PolytopeGraph& g, const nlohmann::json& cert) {
  if (!cert.is_object()) fail(Err::ParseError, "certificate must be a JSON object");
  for (const char* key : {"walks", "vertex_order", "h2sum", "cardinality", "conditional"})
    if (!cert.contains(key)) fail(Err::ParseError, std::string("certificate lacks \"") + key + "\"");
  if (!cert["h2sum"].is_number_integer() || !cert["cardinality"].is_number_integer() ||
      !cert["conditional"].is_boolean())
    fail(Err::ParseError, "certificate value fields have wrong types");

  VertexOrder order = VertexOrder::identity(g.vertex_count());
  try {
    order = order_from_json(cert["vertex_order"], g.vertex_count());
  } catch (const Error& e) {
    if (e.code() == Err::InvalidPermutation) return reject("InvalidPermutation");
    throw;
  }

  Orientation o = orient_by_order(g, order);
  if (cert.contains("orientation")) {
    std::vector<std::string> entries;
    if (!cert["orientation"].is_array())
      fail(Err::ParseError, "orientation must be an array of \"u>v\" strings");
    for (const auto& s : cert["orientation"]) {
      if (!s.is_string()) fail(Err::ParseError, "orientation entries must be strings");
      entries.push_back(s.get<std::string>());
    }
    o = orientation_from_strings(g, entries);
  }
  if (!o.acyclic()) return reject("NotAcyclic");
  if (o.bits() != orient_by_order(g, order).bits()) return reject("OrderMismatch");

  FacoidalSystem fs;
  try {
    fs = validate_facoidal(g, raw_walks_from_json(cert));
  } catch (const Error& e) {
    switch (e.code()) {
      case Err::NotAWalk:
      case Err::CornerMissing:
      case Err::CornerDuplicated:
      case Err::DegreeTooSmall:
        return reject(to_string(e.code()));
      default:
        throw;
    }
  }

  if (cert["cardinality"].get<long long>() != fs.cardinality())
    return reject("CardinalityMismatch");
  unsigned long long h2 = h2_sum(g, o);
  if (cert["h2sum"].get<unsigned long long>() != h2) return reject("H2SumMismatch");
  if (static_cast<unsigned long long>(fs.cardinality()) != h2) return reject("ValuesDiffer");

  std::vector<int> sink_pos;
  for (size_t wi = 0; wi < fs.walks.size(); ++wi) {
    auto sinks = walk_sink_positions(g, fs.walks[wi], o);
    if (sinks.size() > 1) return reject("TwoSinks(walk=" + std::to_string(wi) + ")");
    if (sinks.empty()) return reject("NoSink(walk=" + std::to_string(wi) + ")");
    sink_pos.push_back(sinks[0]);
  }
  if (cert.contains("sink_positions")) {
    if (!cert["sink_positions"].is_array())
      fail(Err::ParseError, "sink_positions must be an array");
    std::vector<int> given;
    for (const auto& x : cert["sink_positions"]) {
      if (!x.is_number_integer()) fail(Err::ParseError, "sink positions must be integers");
      given.push_back(x.get<int>());
    }
    if (given != sink_pos) return reject("SinkPositionMismatch");
  }
  if (!cert["conditional"].get<bool>()) return reject("UnconditionalClaimUnsupported");
  return Verdict{true, true, "Certified"};
}

std::optional<FacoidalSystem> refute_walk_claim(const PolytopeGraph& g,
                                                const FacoidalSystem& claimed,
                                                const DualityState& found) {
  (void)g;
  if (found.primal_value > static_cast<unsigned long long>(claimed.cardinality()))
    return found.primal;
  return std::nullopt;
}

std::optional<Orientation> refute_order_claim(const PolytopeGraph& g, const Orientation& claimed,
                                              const DualityState& found) {
  if (!claimed.acyclic()) fail(Err::NotAcyclic, "claimed orientation contains a cycle");
  if (h2_sum(g, claimed) > found.dual_value) return found.orientation;
  return std::nullopt;
}

Reconstruction reconstruct_full(const PolytopeGraph& g, const SolveConfig& cfg) {
  SolveResult r = solve(g, cfg);
  if (!r.certificate)
    fail(Err::GapNotClosed, "no certificate: best walk count " +
                                std::to_string(r.state.primal_value) +
                                ", best orientation value " + std::to_string(r.state.dual_value));
  Reconstruction rec{TwoFaceSet::from_system(g, r.certificate->walks),
                     {},
                     {},
                     std::move(*r.certificate),
                     r.stats};
  rec.incidence = facets_from_twofaces(g, rec.twofaces);
  rec.lattice = face_lattice(g, rec.incidence);
  return rec;
}

FaceLattice exhaustive_reconstruct(const PolytopeGraph& g, const EnumOptions& opt) {
  MinHSumResult r = min_h_sum_orientations(g, opt);
  return lattice_from_faces(g, faces_via_orientations(g, r.argmin));
}

}  // namespace polyrec
