#include "polyrec/walks.hpp"

#include <algorithm>

#include "polyrec/matching.hpp"

namespace polyrec {

namespace {

int tri_index(int i, int j, int d) {
  // Position of pair (i, j), i < j, in row-major upper-triangle order.
  return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

}  // namespace

CornerTable::CornerTable(const PolytopeGraph& g) : g_(&g) {
  n_ = g.vertex_count();
  d_ = g.degree();
  if (d_ < 2) fail(Err::DegreeTooSmall, "corners require degree >= 2");
  per_vertex_ = d_ * (d_ - 1) / 2;
  corners_.reserve(static_cast<size_t>(n_) * per_vertex_);
  for (int v = 0; v < n_; ++v) {
    const auto& nb = g.neighbors(v);
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) corners_.push_back({nb[i], v, nb[j]});
  }
  by_directed_edge_.assign(2 * g.edge_count(), {});
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (int side = 0; side < 2; ++side) {
      VertexId center = side == 0 ? ed.u : ed.v;
      VertexId other = side == 0 ? ed.v : ed.u;
      auto& bucket = by_directed_edge_[2 * e + side];
      bucket.reserve(d_ - 1);
      for (VertexId w : g.neighbors(center))
        if (w != other) bucket.push_back(id(center, other, w));
    }
  }
}

int CornerTable::id(VertexId center, VertexId x, VertexId y) const {
  const auto& nb = g_->neighbors(center);
  auto pos = [&](VertexId w) {
    auto it = std::lower_bound(nb.begin(), nb.end(), w);
    if (it == nb.end() || *it != w)
      fail(Err::InvalidParameter, std::to_string(w) + " is not a neighbor of " + std::to_string(center));
    return static_cast<int>(it - nb.begin());
  };
  if (x == y) fail(Err::InvalidParameter, "corner endpoints must be distinct");
  int i = pos(x), j = pos(y);
  if (i > j) std::swap(i, j);
  return center * per_vertex_ + tri_index(i, j, d_);
}

const std::vector<int>& CornerTable::bucket(VertexId v, VertexId u) const {
  int e = g_->edge_index(u, v);
  int side = g_->edge(e).u == v ? 0 : 1;
  return by_directed_edge_[2 * e + side];
}

const std::vector<int>& CornerTable::corners_at(VertexId v, VertexId u) const {
  return bucket(v, u);
}

int CornerTable::slot_of(int corner_id, VertexId u) const {
  const Corner& c = corners_[corner_id];
  const auto& b = bucket(c.center, u);
  auto it = std::find(b.begin(), b.end(), corner_id);
  if (it == b.end()) fail(Err::InvalidParameter, "corner does not contain that endpoint");
  return static_cast<int>(it - b.begin());
}

int CornerTable::side_of(int corner_id, VertexId endpoint) const {
  const Corner& c = corners_[corner_id];
  if (endpoint == c.a) return 0;
  if (endpoint == c.b) return 1;
  fail(Err::InvalidParameter, "vertex is not an endpoint of the corner");
}

CornerGraph corner_graph(const PolytopeGraph& g) {
  CornerTable ct(g);
  CornerGraph cg;
  cg.nodes = ct.count();
  cg.adj.resize(cg.nodes);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (int l : ct.corners_at(ed.u, ed.v))
      for (int r : ct.corners_at(ed.v, ed.u)) {
        cg.edges.push_back({std::min(l, r), std::max(l, r)});
        cg.adj[l].push_back(r);
        cg.adj[r].push_back(l);
      }
  }
  std::sort(cg.edges.begin(), cg.edges.end());
  for (auto& nb : cg.adj) std::sort(nb.begin(), nb.end());
  return cg;
}

ClosedSmoothWalk ClosedSmoothWalk::canonical(const PolytopeGraph& g, std::vector<VertexId> seq) {
  int l = static_cast<int>(seq.size());
  if (l < 3) fail(Err::NotAWalk, "closed smooth walks have length >= 3");
  for (int i = 0; i < l; ++i) {
    VertexId cur = seq[i];
    VertexId nxt = seq[(i + 1) % l];
    VertexId prv = seq[(i + l - 1) % l];
    if (cur < 0 || cur >= g.vertex_count()) fail(Err::NotAWalk, "vertex out of range");
    if (!g.has_edge(cur, nxt))
      fail(Err::NotAWalk, "consecutive vertices " + std::to_string(cur) + "," +
                              std::to_string(nxt) + " are not adjacent");
    if (prv == nxt) fail(Err::NotAWalk, "walk reverses at vertex " + std::to_string(cur));
  }
  ClosedSmoothWalk w;
  w.seq_ = seq;
  std::vector<VertexId> cand = seq;
  for (int dir = 0; dir < 2; ++dir) {
    for (int r = 0; r < l; ++r) {
      std::rotate(cand.begin(), cand.begin() + 1, cand.end());
      if (cand < w.seq_) w.seq_ = cand;
    }
    std::reverse(cand.begin(), cand.end());
  }
  return w;
}

size_t FacoidalSystem::total_length() const {
  size_t t = 0;
  for (const auto& w : walks) t += w.seq().size();
  return t;
}

EdgePairing EdgePairing::canonical(const PolytopeGraph& g) {
  EdgePairing p;
  std::vector<int> ident(g.degree() - 1);
  for (int i = 0; i < g.degree() - 1; ++i) ident[i] = i;
  p.perm.assign(g.edge_count(), ident);
  return p;
}

EdgePairing EdgePairing::random(const PolytopeGraph& g, uint64_t seed) {
  EdgePairing p = canonical(g);
  std::mt19937_64 rng(seed);
  for (auto& pi : p.perm)
    for (int i = static_cast<int>(pi.size()) - 1; i > 0; --i)
      std::swap(pi[i], pi[rng() % (i + 1)]);
  return p;
}

void EdgePairing::check(const PolytopeGraph& g) const {
  if (static_cast<int>(perm.size()) != g.edge_count())
    fail(Err::InvalidPairing, "pairing must have one bijection per edge");
  for (const auto& pi : perm) {
    if (static_cast<int>(pi.size()) != g.degree() - 1)
      fail(Err::InvalidPairing, "bijection arity must be degree - 1");
    std::vector<char> seen(pi.size(), 0);
    for (int x : pi) {
      if (x < 0 || x >= static_cast<int>(pi.size()) || seen[x])
        fail(Err::InvalidPairing, "edge map is not a bijection");
      seen[x] = 1;
    }
  }
}

PortLinks port_links(const PolytopeGraph& g, const CornerTable& ct, const EdgePairing& p) {
  PortLinks link(ct.count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& left = ct.corners_at(ed.u, ed.v);
    const auto& right = ct.corners_at(ed.v, ed.u);
    for (size_t i = 0; i < left.size(); ++i) {
      int l = left[i];
      int r = right[p.perm[e][i]];
      int sl = ct.side_of(l, ed.v);
      int sr = ct.side_of(r, ed.u);
      link[l][sl] = {r, sr};
      link[r][sr] = {l, sl};
    }
  }
  return link;
}

std::vector<std::vector<int>> trace_cycles(const CornerTable& ct, const PortLinks& link) {
  std::vector<char> visited(ct.count(), 0);
  std::vector<std::vector<int>> cycles;
  for (int c0 = 0; c0 < ct.count(); ++c0) {
    if (visited[c0]) continue;
    std::vector<int> cycle;
    int cur = c0, in_slot = 1;
    do {
      visited[cur] = 1;
      cycle.push_back(cur);
      auto [nc, ns] = link[cur][1 - in_slot];
      cur = nc;
      in_slot = ns;
    } while (cur != c0 || in_slot != 1);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

FacoidalSystem walks_from_pairing(const PolytopeGraph& g, const EdgePairing& p) {
  p.check(g);
  CornerTable ct(g);
  PortLinks link = port_links(g, ct, p);
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

EdgePairing pairing_from_system(const PolytopeGraph& g, const FacoidalSystem& fs) {
  CornerTable ct(g);
  EdgePairing p;
  p.perm.assign(g.edge_count(), std::vector<int>(g.degree() - 1, -1));
  for (const auto& w : fs.walks) {
    const auto& s = w.seq();
    int l = w.length();
    for (int i = 0; i < l; ++i) {
      VertexId x = s[i];
      VertexId y = s[(i + 1) % l];
      int cx = ct.id(x, s[(i + l - 1) % l], y);
      int cy = ct.id(y, x, s[(i + 2) % l]);
      int e = g.edge_index(x, y);
      int cl = g.edge(e).u == x ? cx : cy;
      int cr = cl == cx ? cy : cx;
      int sl = ct.slot_of(cl, g.edge(e).v);
      int sr = ct.slot_of(cr, g.edge(e).u);
      if (p.perm[e][sl] != -1 && p.perm[e][sl] != sr)
        fail(Err::InvalidPairing, "system induces conflicting links on an edge");
      p.perm[e][sl] = sr;
    }
  }
  p.check(g);
  return p;
}

FacoidalSystem validate_facoidal(const PolytopeGraph& g,
                                 const std::vector<std::vector<VertexId>>& raw) {
  CornerTable ct(g);
  FacoidalSystem fs;
  std::vector<char> covered(ct.count(), 0);
  for (const auto& r : raw) {
    ClosedSmoothWalk w = ClosedSmoothWalk::canonical(g, r);
    const auto& s = w.seq();
    int l = w.length();
    for (int i = 0; i < l; ++i) {
      int c = ct.id(s[i], s[(i + l - 1) % l], s[(i + 1) % l]);
      if (covered[c]) {
        const Corner& cc = ct.corner(c);
        fail(Err::CornerDuplicated, "corner (" + std::to_string(cc.a) + "," +
                                        std::to_string(cc.center) + "," + std::to_string(cc.b) +
                                        ") is covered more than once");
      }
      covered[c] = 1;
    }
    fs.walks.push_back(std::move(w));
  }
  for (int c = 0; c < ct.count(); ++c)
    if (!covered[c]) {
      const Corner& cc = ct.corner(c);
      fail(Err::CornerMissing, "corner (" + std::to_string(cc.a) + "," +
                                   std::to_string(cc.center) + "," + std::to_string(cc.b) +
                                   ") is not covered");
    }
  std::sort(fs.walks.begin(), fs.walks.end());
  return fs;
}

TwoFactor facoidal_to_two_factor(const PolytopeGraph& g, const FacoidalSystem& fs) {
  CornerTable ct(g);
  TwoFactor tf;
  for (const auto& w : fs.walks) {
    const auto& s = w.seq();
    int l = w.length();
    std::vector<int> cycle;
    cycle.reserve(l);
    for (int i = 0; i < l; ++i)
      cycle.push_back(ct.id(s[i], s[(i + l - 1) % l], s[(i + 1) % l]));
    tf.push_back(std::move(cycle));
  }
  return tf;
}

FacoidalSystem two_factor_to_facoidal(const PolytopeGraph& g, const TwoFactor& tf) {
  CornerTable ct(g);
  std::vector<char> used(ct.count(), 0);
  std::vector<std::vector<VertexId>> raw;
  for (const auto& cycle : tf) {
    int l = static_cast<int>(cycle.size());
    if (l < 3) fail(Err::InvalidParameter, "corner cycles have length >= 3");
    std::vector<VertexId> centers(l);
    for (int i = 0; i < l; ++i) {
      int c = cycle[i];
      if (c < 0 || c >= ct.count()) fail(Err::InvalidParameter, "corner id out of range");
      if (used[c]) fail(Err::InvalidParameter, "corner appears in two cycles");
      used[c] = 1;
      centers[i] = ct.corner(c).center;
    }
    for (int i = 0; i < l; ++i) {
      const Corner& cur = ct.corner(cycle[i]);
      VertexId prev_center = centers[(i + l - 1) % l];
      VertexId next_center = centers[(i + 1) % l];
      bool prev_ok = prev_center == cur.a || prev_center == cur.b;
      bool next_ok = next_center == cur.a || next_center == cur.b;
      if (!prev_ok || !next_ok || prev_center == cur.center || next_center == cur.center)
        fail(Err::InvalidParameter, "consecutive corners are not adjacent in the corner graph");
      if (prev_center == next_center)
        fail(Err::IncoherentFactor,
             "both cycle edges at corner (" + std::to_string(cur.a) + "," +
                 std::to_string(cur.center) + "," + std::to_string(cur.b) +
                 ") use the graph edge toward " + std::to_string(prev_center));
    }
    raw.push_back(std::move(centers));
  }
  for (int c = 0; c < ct.count(); ++c)
    if (!used[c]) fail(Err::InvalidParameter, "2-factor does not cover every corner");
  return validate_facoidal(g, raw);
}

// Keeps the per-edge links realized coherently by the factor and completes
// the rest canonically, yielding a proper pairing.
FacoidalSystem repair_incoherent_factor(const PolytopeGraph& g, const CornerTable& ct,
                                        const TwoFactor& tf) {
  EdgePairing p;
  p.perm.assign(g.edge_count(), std::vector<int>(g.degree() - 1, -1));
  std::vector<std::vector<char>> right_used(g.edge_count(),
                                            std::vector<char>(g.degree() - 1, 0));
  for (const auto& cycle : tf) {
    int l = static_cast<int>(cycle.size());
    for (int i = 0; i < l; ++i) {
      int c1 = cycle[i];
      int c2 = cycle[(i + 1) % l];
      VertexId v1 = ct.corner(c1).center;
      VertexId v2 = ct.corner(c2).center;
      int e = g.edge_index(v1, v2);
      int cl = g.edge(e).u == v1 ? c1 : c2;
      int cr = cl == c1 ? c2 : c1;
      int sl = ct.slot_of(cl, g.edge(e).v);
      int sr = ct.slot_of(cr, g.edge(e).u);
      if (p.perm[e][sl] == -1 && !right_used[e][sr]) {
        p.perm[e][sl] = sr;
        right_used[e][sr] = 1;
      }
    }
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    int j = 0;
    for (int i = 0; i < g.degree() - 1; ++i) {
      if (p.perm[e][i] != -1) continue;
      while (right_used[e][j]) ++j;
      p.perm[e][i] = j;
      right_used[e][j] = 1;
    }
  }
  return walks_from_pairing(g, p);
}

FacoidalSystem repair_incoherent_factor(const PolytopeGraph& g, const TwoFactor& tf) {
  CornerTable ct(g);
  return repair_incoherent_factor(g, ct, tf);
}

FacoidalSystem find_facoidal(const PolytopeGraph& g, const FindStrategy& strategy) {
  if (g.degree() < 2) fail(Err::DegreeTooSmall, "facoidal systems require degree >= 2");
  switch (strategy.kind) {
    case FindStrategy::Kind::PairingCanonical:
      return walks_from_pairing(g, EdgePairing::canonical(g));
    case FindStrategy::Kind::PairingRandom:
      return walks_from_pairing(g, EdgePairing::random(g, strategy.seed));
    case FindStrategy::Kind::Matching:
      break;
  }
  CornerGraph cg = corner_graph(g);
  GenericGraph generic = GenericGraph::from_edges(cg.nodes, cg.edges);
  auto tf = two_factor(generic);
  if (!tf) fail(Err::InvalidParameter, "corner graph has no 2-factor");
  CornerTable ct(g);
  try {
    return two_factor_to_facoidal(g, *tf);
  } catch (const Error& err) {
    if (err.code() != Err::IncoherentFactor) throw;
    return repair_incoherent_factor(g, ct, *tf);
  }
}

std::vector<int> walk_sink_positions(const PolytopeGraph& g, const ClosedSmoothWalk& w,
                                     const Orientation& o) {
  const auto& s = w.seq();
  int l = w.length();
  std::vector<int> positions;
  for (int i = 0; i < l; ++i) {
    VertexId prv = s[(i + l - 1) % l];
    VertexId nxt = s[(i + 1) % l];
    if (o.head(g, g.edge_index(prv, s[i])) == s[i] &&
        o.head(g, g.edge_index(s[i], nxt)) == s[i])
      positions.push_back(i);
  }
  return positions;
}

std::vector<int> walk_source_positions(const PolytopeGraph& g, const ClosedSmoothWalk& w,
                                       const Orientation& o) {
  const auto& s = w.seq();
  int l = w.length();
  std::vector<int> positions;
  for (int i = 0; i < l; ++i) {
    VertexId prv = s[(i + l - 1) % l];
    VertexId nxt = s[(i + 1) % l];
    if (o.head(g, g.edge_index(prv, s[i])) != s[i] &&
        o.head(g, g.edge_index(s[i], nxt)) != s[i])
      positions.push_back(i);
  }
  return positions;
}

bool is_aof_via_twofaces(const PolytopeGraph& g, const Orientation& o,
                         const std::vector<ClosedSmoothWalk>& twofaces) {
  if (!o.acyclic()) return false;
  for (const auto& w : twofaces)
    if (walk_sink_positions(g, w, o).size() != 1) return false;
  return true;
}

}  // namespace polyrec
