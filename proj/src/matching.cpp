#include "polyrec/matching.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace polyrec {

GenericGraph GenericGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) fail(Err::InvalidParameter, "vertex count must be nonnegative");
  GenericGraph g;
  g.n = n;
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) fail(Err::InvalidParameter, "edge endpoint out of range");
    if (a == b) fail(Err::NotSimple, "loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) fail(Err::NotSimple, "duplicate edge");
  }
  g.adj.assign(n, {});
  g.edges.assign(seen.begin(), seen.end());
  for (auto [a, b] : g.edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

namespace {

// Blossom-contracting augmenting path search. Scans roots in index order, so
// the resulting matching is a deterministic function of the input.
struct BlossomMatcher {
  const GenericGraph& g;
  int n;
  std::vector<int> match, parent, base;
  std::vector<char> used, in_blossom;

  explicit BlossomMatcher(const GenericGraph& g_)
      : g(g_), n(g_.n), match(n, -1), parent(n, -1), base(n, 0), used(n, 0), in_blossom(n, 0) {}

  int lca(int a, int b) {
    std::vector<char> mark(n, 0);
    int x = a;
    while (true) {
      x = base[x];
      mark[x] = 1;
      if (match[x] == -1) break;
      x = parent[match[x]];
    }
    int y = b;
    while (true) {
      y = base[y];
      if (mark[y]) return y;
      y = parent[match[y]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[v] != b) {
      in_blossom[base[v]] = 1;
      in_blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  }

  int find_augmenting_path(int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : g.adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          int cur_base = lca(v, to);
          std::fill(in_blossom.begin(), in_blossom.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n; ++i)
            if (in_blossom[base[i]]) {
              base[i] = cur_base;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;
          used[match[to]] = 1;
          q.push(match[to]);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v != -1) {
      int pv = parent[v];
      int next = match[pv];
      match[v] = pv;
      match[pv] = v;
      v = next;
    }
  }

  void run() {
    // Greedy seed keeps the number of augmenting searches small.
    for (int v = 0; v < n; ++v) {
      if (match[v] != -1) continue;
      for (int to : g.adj[v])
        if (match[to] == -1) {
          match[v] = to;
          match[to] = v;
          break;
        }
    }
    for (int v = 0; v < n; ++v)
      if (match[v] == -1) {
        int leaf = find_augmenting_path(v);
        if (leaf != -1) augment(leaf);
      }
  }
};

}  // namespace

MatePairs max_matching(const GenericGraph& g) {
  BlossomMatcher m(g);
  m.run();
  MatePairs out;
  for (int v = 0; v < g.n; ++v)
    if (m.match[v] > v) out.push_back({v, m.match[v]});
  return out;
}

TutteGadget build_tutte_gadget(const GenericGraph& g) {
  TutteGadget t;
  std::vector<int> offset(g.n + 1, 0);
  for (int v = 0; v < g.n; ++v) {
    int deg = g.degree(v);
    if (deg < 2) fail(Err::DegreeTooSmall, "2-factor gadget needs minimum degree 2");
    offset[v + 1] = offset[v] + 2 * deg - 2;
  }
  int total = offset[g.n];
  std::vector<std::pair<int, int>> edges;
  // Outer node for the i-th incident edge of v sits at offset[v] + i;
  // the deg(v)-2 inner nodes follow.
  for (int v = 0; v < g.n; ++v) {
    int deg = g.degree(v);
    for (int i = 0; i < deg; ++i)
      for (int j = 0; j < deg - 2; ++j) edges.push_back({offset[v] + i, offset[v] + deg + j});
  }
  t.outer_pair.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) {
    int iu = static_cast<int>(std::lower_bound(g.adj[u].begin(), g.adj[u].end(), v) -
                              g.adj[u].begin());
    int iv = static_cast<int>(std::lower_bound(g.adj[v].begin(), g.adj[v].end(), u) -
                              g.adj[v].begin());
    int a = offset[u] + iu;
    int b = offset[v] + iv;
    edges.push_back({std::min(a, b), std::max(a, b)});
    t.outer_pair.push_back({a, b});
  }
  t.graph = GenericGraph::from_edges(total, std::move(edges));
  return t;
}

namespace {

std::vector<std::vector<int>> cycles_of_two_regular(int n,
                                                    const std::vector<std::vector<int>>& adj) {
  std::vector<char> vis(n, 0);
  std::vector<std::vector<int>> cycles;
  for (int s = 0; s < n; ++s) {
    if (vis[s]) continue;
    std::vector<int> cyc;
    int prev = -1, cur = s;
    do {
      vis[cur] = 1;
      cyc.push_back(cur);
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    } while (cur != s);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> two_factor(const GenericGraph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) < 2) return std::nullopt;

  bool all_two = true;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != 2) {
      all_two = false;
      break;
    }
  if (all_two) return cycles_of_two_regular(g.n, g.adj);

  TutteGadget t = build_tutte_gadget(g);
  MatePairs mm = max_matching(t.graph);
  if (2 * static_cast<int>(mm.size()) < t.graph.n) return std::nullopt;
  std::vector<int> mate(t.graph.n, -1);
  for (auto [a, b] : mm) {
    mate[a] = b;
    mate[b] = a;
  }
  std::vector<std::vector<int>> factor_adj(g.n);
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (mate[t.outer_pair[e].first] == t.outer_pair[e].second) {
      factor_adj[g.edges[e].first].push_back(g.edges[e].second);
      factor_adj[g.edges[e].second].push_back(g.edges[e].first);
    }
  for (int v = 0; v < g.n; ++v)
    if (factor_adj[v].size() != 2)
      fail(Err::InvalidParameter, "gadget matching did not induce a 2-factor");
  return cycles_of_two_regular(g.n, factor_adj);
}

}  // namespace polyrec
