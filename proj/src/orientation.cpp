#include "polyrec/orientation.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

namespace polyrec {

VertexOrder VertexOrder::from_sequence(std::vector<VertexId> by_rank) {
  int n = static_cast<int>(by_rank.size());
  std::vector<int> rank(n, -1);
  for (int k = 0; k < n; ++k) {
    VertexId v = by_rank[k];
    if (v < 0 || v >= n || rank[v] != -1)
      fail(Err::InvalidPermutation, "sequence is not a permutation of 0.." + std::to_string(n - 1));
    rank[v] = k;
  }
  return VertexOrder{std::move(by_rank), std::move(rank)};
}

VertexOrder VertexOrder::from_ranks(std::vector<int> rank) {
  int n = static_cast<int>(rank.size());
  std::vector<VertexId> by_rank(n, -1);
  for (int v = 0; v < n; ++v) {
    int k = rank[v];
    if (k < 0 || k >= n || by_rank[k] != -1)
      fail(Err::InvalidPermutation, "ranks are not a permutation of 0.." + std::to_string(n - 1));
    by_rank[k] = v;
  }
  return VertexOrder{std::move(by_rank), std::move(rank)};
}

VertexOrder VertexOrder::identity(int n) {
  std::vector<VertexId> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  return from_sequence(std::move(seq));
}

namespace {

bool check_acyclic(const PolytopeGraph& g, const std::vector<uint8_t>& bits,
                   const std::vector<int>& indeg) {
  // Kahn's algorithm over the directed graph.
  int n = g.vertex_count();
  std::vector<int> remaining = indeg;
  std::queue<int> q;
  for (int v = 0; v < n; ++v)
    if (remaining[v] == 0) q.push(v);
  int seen = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++seen;
    const auto& inc = g.incident_edges(v);
    for (size_t i = 0; i < inc.size(); ++i) {
      int e = inc[i];
      const Edge& ed = g.edge(e);
      VertexId head = bits[e] ? ed.v : ed.u;
      if (head == v) continue;
      if (--remaining[head] == 0) q.push(head);
    }
  }
  return seen == n;
}

}  // namespace

Orientation Orientation::from_bits(const PolytopeGraph& g, std::vector<uint8_t> bits) {
  if (static_cast<int>(bits.size()) != g.edge_count())
    fail(Err::InvalidParameter, "orientation bit count does not match edge count");
  Orientation o;
  o.bits_ = std::move(bits);
  o.indegree_.assign(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    ++o.indegree_[o.bits_[e] ? ed.v : ed.u];
  }
  o.acyclic_ = check_acyclic(g, o.bits_, o.indegree_);
  return o;
}

std::string Orientation::signature() const {
  std::string s((bits_.size() + 7) / 8, '\0');
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i / 8] |= static_cast<char>(1 << (i % 8));
  return s;
}

Orientation orient_by_order(const PolytopeGraph& g, const VertexOrder& order) {
  if (order.size() != g.vertex_count())
    fail(Err::InvalidParameter, "order size does not match vertex count");
  std::vector<uint8_t> bits(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    // Directed from the later position toward the earlier one.
    bits[e] = order.rank[ed.u] > order.rank[ed.v] ? 1 : 0;
  }
  return Orientation::from_bits(g, std::move(bits));
}

Orientation reverse_orientation(const PolytopeGraph& g, const Orientation& o) {
  std::vector<uint8_t> bits = o.bits();
  for (auto& b : bits) b = b ? 0 : 1;
  return Orientation::from_bits(g, std::move(bits));
}

std::vector<long long> h_vector(const PolytopeGraph& g, const Orientation& o) {
  std::vector<long long> h(g.degree() + 1, 0);
  for (int v = 0; v < g.vertex_count(); ++v) ++h[o.indegree(v)];
  return h;
}

unsigned long long h_sum(const PolytopeGraph& g, const Orientation& o) {
  unsigned long long total = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    total += (unsigned long long)1 << o.indegree(v);
  return total;
}

unsigned long long h2_sum(const PolytopeGraph& g, const Orientation& o) {
  unsigned long long total = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    unsigned long long k = o.indegree(v);
    total += k * (k - 1) / 2;
  }
  return total;
}

VertexSubset sinks_in_subset(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s) {
  if (!is_sorted_subset(s, g.vertex_count()))
    fail(Err::InvalidParameter, "subset must be sorted, unique and in range");
  VertexSubset sinks;
  for (VertexId v : s) {
    bool sink = true;
    const auto& nbs = g.neighbors(v);
    const auto& inc = g.incident_edges(v);
    for (size_t i = 0; i < nbs.size() && sink; ++i)
      if (subset_contains(s, nbs[i]) && o.head(g, inc[i]) != v) sink = false;
    if (sink) sinks.push_back(v);
  }
  return sinks;
}

bool has_unique_sink(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s) {
  return sinks_in_subset(g, o, s).size() == 1;
}

bool is_aof_given_faces(const PolytopeGraph& g, const Orientation& o,
                        const std::vector<VertexSubset>& faces) {
  if (faces.empty()) fail(Err::FacesMissing, "need the complete nonempty-face list");
  if (!o.acyclic()) return false;
  for (const auto& f : faces)
    if (!has_unique_sink(g, o, f)) return false;
  return true;
}

namespace {

struct EdgeDfsEnum {
  const PolytopeGraph& g;
  const std::function<void(const Orientation&)>& fn;
  uint64_t budget;
  uint64_t states = 0;
  uint64_t emitted = 0;
  std::vector<uint8_t> bits;
  std::vector<std::vector<int>> out;  // current directed adjacency

  EdgeDfsEnum(const PolytopeGraph& g_, const std::function<void(const Orientation&)>& fn_,
              uint64_t budget_)
      : g(g_), fn(fn_), budget(budget_), bits(g_.edge_count(), 0), out(g_.vertex_count()) {}

  bool reaches(VertexId from, VertexId to) const {
    if (from == to) return true;
    std::vector<char> vis(g.vertex_count(), 0);
    std::vector<int> stack{from};
    vis[from] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : out[v]) {
        if (w == to) return true;
        if (!vis[w]) {
          vis[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return false;
  }

  void rec(int e) {
    if (++states > budget)
      fail(Err::TooLarge, "acyclic orientation enumeration exceeded state budget");
    if (e == g.edge_count()) {
      ++emitted;
      fn(Orientation::from_bits(g, bits));
      return;
    }
    const Edge& ed = g.edge(e);
    // Try u -> v: creates a cycle iff v already reaches u.
    if (!reaches(ed.v, ed.u)) {
      bits[e] = 1;
      out[ed.u].push_back(ed.v);
      rec(e + 1);
      out[ed.u].pop_back();
    }
    if (!reaches(ed.u, ed.v)) {
      bits[e] = 0;
      out[ed.v].push_back(ed.u);
      rec(e + 1);
      out[ed.v].pop_back();
    }
  }
};

uint64_t factorial_capped(int n, uint64_t cap) {
  uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

}  // namespace

uint64_t enumerate_acyclic(const PolytopeGraph& g,
                           const std::function<void(const Orientation&)>& fn,
                           const EnumOptions& opt) {
  EnumOptions::Mode mode = opt.mode;
  if (mode == EnumOptions::Mode::Auto) {
    uint64_t edge_states = g.edge_count() >= 63 ? ~uint64_t{0} : (uint64_t{1} << (g.edge_count() + 1));
    uint64_t perms = factorial_capped(g.vertex_count(), ~uint64_t{0} / 2);
    mode = edge_states <= perms ? EnumOptions::Mode::EdgeDfs : EnumOptions::Mode::Permutation;
  }
  if (mode == EnumOptions::Mode::EdgeDfs) {
    EdgeDfsEnum e(g, fn, opt.budget);
    e.rec(0);
    return e.emitted;
  }
  // Permutation sweep with signature deduplication.
  uint64_t perms = factorial_capped(g.vertex_count(), opt.budget);
  if (perms > opt.budget)
    fail(Err::TooLarge, "permutation sweep exceeds state budget");
  std::vector<VertexId> seq(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) seq[i] = i;
  std::unordered_set<std::string> seen;
  uint64_t emitted = 0;
  do {
    Orientation o = orient_by_order(g, VertexOrder::from_sequence(seq));
    if (seen.insert(o.signature()).second) {
      ++emitted;
      fn(o);
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
  return emitted;
}

MinHSumResult min_h_sum_orientations(const PolytopeGraph& g, const EnumOptions& opt) {
  MinHSumResult res;
  res.min_h_sum = ~0ull;
  res.acyclic_count = enumerate_acyclic(
      g,
      [&](const Orientation& o) {
        unsigned long long h = h_sum(g, o);
        if (h < res.min_h_sum) {
          res.min_h_sum = h;
          res.argmin.clear();
        }
        if (h == res.min_h_sum) res.argmin.push_back(o);
      },
      opt);
  return res;
}

namespace {

VertexSubset reachable_set(const PolytopeGraph& g, const Orientation& o, VertexId s) {
  std::vector<char> vis(g.vertex_count(), 0);
  std::vector<int> stack{s};
  vis[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const auto& nbs = g.neighbors(v);
    const auto& inc = g.incident_edges(v);
    for (size_t i = 0; i < nbs.size(); ++i) {
      if (o.head(g, inc[i]) == v) continue;  // edge enters v
      if (!vis[nbs[i]]) {
        vis[nbs[i]] = 1;
        stack.push_back(nbs[i]);
      }
    }
  }
  VertexSubset out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (vis[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<VertexSubset> faces_via_orientations(const PolytopeGraph& g,
                                                 const std::vector<Orientation>& orientations) {
  std::vector<VertexSubset> found;
  for (const Orientation& o : orientations) {
    for (int s = 0; s < g.vertex_count(); ++s) {
      VertexSubset r = reachable_set(g, o, s);
      int k = static_cast<int>(induced_subgraph(g, r).adj[0].size());
      if (is_k_regular_connected(g, r, k)) found.push_back(std::move(r));
    }
  }
  std::sort(found.begin(), found.end(), [](const VertexSubset& a, const VertexSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

bool is_terminal(const PolytopeGraph& g, const Orientation& o, const VertexSubset& s) {
  if (!is_sorted_subset(s, g.vertex_count()))
    fail(Err::InvalidParameter, "target set must be a sorted subset");
  for (int e = 0; e < g.edge_count(); ++e)
    if (subset_contains(s, o.tail(g, e)) && !subset_contains(s, o.head(g, e))) return false;
  return true;
}

std::optional<Orientation> orientation_making_terminal(const PolytopeGraph& g,
                                                       const std::vector<Orientation>& candidates,
                                                       const VertexSubset& w) {
  if (!is_sorted_subset(w, g.vertex_count()) || w.empty())
    fail(Err::InvalidParameter, "target set must be a nonempty sorted subset");
  for (const Orientation& o : candidates)
    if (is_terminal(g, o, w)) return o;
  return std::nullopt;
}

VertexOrder topological_order(const PolytopeGraph& g, const Orientation& o) {
  if (!o.acyclic()) fail(Err::NotAcyclic, "orientation contains a directed cycle");
  int n = g.vertex_count();
  // Peel sinks repeatedly; among simultaneous sinks take the smallest id,
  // which makes the result deterministic.
  std::vector<int> outdeg(n, 0);
  for (int e = 0; e < g.edge_count(); ++e) ++outdeg[o.tail(g, e)];
  std::priority_queue<int, std::vector<int>, std::greater<int>> q;
  for (int v = 0; v < n; ++v)
    if (outdeg[v] == 0) q.push(v);
  std::vector<VertexId> seq;
  seq.reserve(n);
  while (!q.empty()) {
    int v = q.top();
    q.pop();
    seq.push_back(v);
    const auto& nbs = g.neighbors(v);
    const auto& inc = g.incident_edges(v);
    for (size_t i = 0; i < nbs.size(); ++i) {
      if (o.head(g, inc[i]) != v) continue;
      if (--outdeg[nbs[i]] == 0) q.push(nbs[i]);
    }
  }
  return VertexOrder::from_sequence(std::move(seq));
}

}  // namespace polyrec
