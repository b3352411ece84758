#include "polyrec/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>

namespace polyrec {

PolytopeGraph PolytopeGraph::validate(int n, std::vector<std::pair<int, int>> edge_list) {
  if (n <= 0) fail(Err::InvalidParameter, "vertex count must be positive");
  PolytopeGraph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edge_list) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(Err::InvalidParameter, "edge endpoint out of range");
    if (a == b) fail(Err::NotSimple, "loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      fail(Err::NotSimple, "duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  }
  g.edges_.reserve(seen.size());
  for (auto [a, b] : seen) {
    g.edges_.push_back({a, b});
    g.adj_[a].push_back(b);
    g.adj_[b].push_back(a);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());

  g.d_ = static_cast<int>(g.adj_[0].size());
  for (int v = 0; v < n; ++v)
    if (static_cast<int>(g.adj_[v].size()) != g.d_)
      fail(Err::NotRegular, "vertex " + std::to_string(v) + " has degree " +
                                std::to_string(g.adj_[v].size()) + ", expected " +
                                std::to_string(g.d_));

  if (n > 1) {
    std::vector<char> vis(n, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.adj_[v])
        if (!vis[w]) {
          vis[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    if (reached != n) fail(Err::NotConnected, "graph is not connected");
  }

  g.incident_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    g.incident_[v].reserve(g.d_);
    for (int w : g.adj_[v]) {
      Edge key{std::min(v, w), std::max(v, w)};
      auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), key,
                                 [](const Edge& e, const Edge& k) {
                                   return e.u != k.u ? e.u < k.u : e.v < k.v;
                                 });
      g.incident_[v].push_back(static_cast<int>(it - g.edges_.begin()));
    }
  }
  return g;
}

bool PolytopeGraph::has_edge(VertexId u, VertexId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int PolytopeGraph::edge_index(VertexId u, VertexId v) const {
  if (!has_edge(u, v)) fail(Err::InvalidParameter, "no such edge");
  if (u > v) std::swap(u, v);
  const auto& nb = adj_[u];
  int i = static_cast<int>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
  return incident_[u][i];
}

bool is_sorted_subset(const VertexSubset& s, int n) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= n) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

bool subset_contains(const VertexSubset& s, VertexId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSubset subset_intersection(const VertexSubset& a, const VertexSubset& b) {
  VertexSubset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_includes(const VertexSubset& outer, const VertexSubset& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

InducedSubgraph induced_subgraph(const PolytopeGraph& g, const VertexSubset& s) {
  if (!is_sorted_subset(s, g.vertex_count()))
    fail(Err::InvalidParameter, "subset must be sorted, unique and in range");
  InducedSubgraph sub;
  sub.vertices = s;
  sub.adj.resize(s.size());
  for (size_t i = 0; i < s.size(); ++i)
    for (int w : g.neighbors(s[i]))
      if (subset_contains(s, w)) sub.adj[i].push_back(w);
  return sub;
}

bool is_k_regular_connected(const PolytopeGraph& g, const VertexSubset& s, int k) {
  if (s.empty()) return false;
  InducedSubgraph sub = induced_subgraph(g, s);
  for (const auto& nb : sub.adj)
    if (static_cast<int>(nb.size()) != k) return false;
  std::vector<char> vis(s.size(), 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  size_t reached = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int w : sub.adj[i]) {
      int j = static_cast<int>(std::lower_bound(s.begin(), s.end(), w) - s.begin());
      if (!vis[j]) {
        vis[j] = 1;
        ++reached;
        q.push(j);
      }
    }
  }
  return reached == s.size();
}

int regular_connected_degree(const PolytopeGraph& g, const VertexSubset& s) {
  if (s.empty()) fail(Err::RankInconsistent, "empty vertex set has no induced degree");
  InducedSubgraph sub = induced_subgraph(g, s);
  int k = static_cast<int>(sub.adj[0].size());
  if (!is_k_regular_connected(g, s, k))
    fail(Err::RankInconsistent, "induced subgraph is not regular and connected");
  return k;
}

PolytopeGraph make_segment() { return PolytopeGraph::validate(2, {{0, 1}}); }

PolytopeGraph make_simplex(int d) {
  if (d < 1) fail(Err::InvalidParameter, "simplex dimension must be >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) e.push_back({i, j});
  return PolytopeGraph::validate(d + 1, std::move(e));
}

PolytopeGraph make_cube(int d) {
  if (d < 1) fail(Err::InvalidParameter, "cube dimension must be >= 1");
  if (d > 20) fail(Err::TooLarge, "cube dimension too large");
  int n = 1 << d;
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) {
      int w = v ^ (1 << k);
      if (v < w) e.push_back({v, w});
    }
  return PolytopeGraph::validate(n, std::move(e));
}

PolytopeGraph make_polygon(int m) {
  if (m < 3) fail(Err::InvalidParameter, "polygon needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < m; ++i) e.push_back({i, (i + 1) % m});
  return PolytopeGraph::validate(m, std::move(e));
}

PolytopeGraph make_prism(int m) { return product(make_polygon(m), make_segment()); }

PolytopeGraph make_dodecahedron() {
  // Four concentric rings of five: outer cycle a(0..4), upper belt b,
  // lower belt c, inner cycle d. Standard planar layout.
  std::vector<std::pair<int, int>> e;
  auto a = [](int i) { return i % 5; };
  auto b = [](int i) { return 5 + i % 5; };
  auto c = [](int i) { return 10 + i % 5; };
  auto dd = [](int i) { return 15 + i % 5; };
  for (int i = 0; i < 5; ++i) {
    e.push_back({a(i), a(i + 1)});
    e.push_back({a(i), b(i)});
    e.push_back({b(i), c(i)});
    e.push_back({b(i), c(i + 1)});
    e.push_back({c(i), dd(i)});
    e.push_back({dd(i), dd(i + 1)});
  }
  return PolytopeGraph::validate(20, std::move(e));
}

PolytopeGraph product(const PolytopeGraph& a, const PolytopeGraph& b) {
  int na = a.vertex_count(), nb = b.vertex_count();
  std::vector<std::pair<int, int>> e;
  for (const Edge& ea : a.edges())
    for (int j = 0; j < nb; ++j) e.push_back({ea.u * nb + j, ea.v * nb + j});
  for (int i = 0; i < na; ++i)
    for (const Edge& eb : b.edges()) e.push_back({i * nb + eb.u, i * nb + eb.v});
  return PolytopeGraph::validate(na * nb, std::move(e));
}

namespace {

struct SpecParser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) fail(Err::ParseError, "expected name at position " + std::to_string(pos));
    return s.substr(start, pos - start);
  }

  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(Err::ParseError, std::string("expected '") + c + "' in graph spec");
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(Err::ParseError, "expected integer in graph spec");
    return std::stoi(s.substr(start, pos - start));
  }

  PolytopeGraph parse() {
    std::string name = ident();
    if (name == "segment") return make_segment();
    if (name == "dodecahedron") return make_dodecahedron();
    if (name == "product") {
      expect('(');
      PolytopeGraph lhs = parse();
      expect(',');
      PolytopeGraph rhs = parse();
      expect(')');
      return product(lhs, rhs);
    }
    expect('(');
    int k = integer();
    expect(')');
    if (name == "simplex") return make_simplex(k);
    if (name == "cube") return make_cube(k);
    if (name == "polygon") return make_polygon(k);
    if (name == "prism") return make_prism(k);
    fail(Err::ParseError, "unknown graph family: " + name);
  }
};

}  // namespace

PolytopeGraph generate(const std::string& spec) {
  SpecParser p{spec};
  PolytopeGraph g = p.parse();
  p.skip_ws();
  if (p.pos != spec.size()) fail(Err::ParseError, "trailing characters in graph spec");
  return g;
}

}  // namespace polyrec
