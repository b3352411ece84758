#include "polyrec/reconstruct.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace polyrec {

TwoFaceSet TwoFaceSet::from_system(const PolytopeGraph& g, const FacoidalSystem& fs) {
  std::vector<std::vector<VertexId>> raw;
  raw.reserve(fs.walks.size());
  for (const auto& w : fs.walks) raw.push_back(w.seq());
  TwoFaceSet tf;
  tf.fs_ = validate_facoidal(g, raw);
  for (const auto& w : tf.fs_.walks) {
    std::set<VertexId> distinct(w.seq().begin(), w.seq().end());
    if (static_cast<int>(distinct.size()) != w.length())
      fail(Err::NotACycle, "2-face walks must be simple cycles");
  }
  CornerTable ct(g);
  tf.where_.assign(ct.count(), {-1, -1});
  for (size_t wi = 0; wi < tf.fs_.walks.size(); ++wi) {
    const auto& s = tf.fs_.walks[wi].seq();
    int l = static_cast<int>(s.size());
    for (int i = 0; i < l; ++i)
      tf.where_[ct.id(s[i], s[(i + l - 1) % l], s[(i + 1) % l])] = {static_cast<int>(wi), i};
  }
  return tf;
}

std::pair<int, int> TwoFaceSet::locate(int corner_id) const {
  if (corner_id < 0 || corner_id >= static_cast<int>(where_.size()))
    fail(Err::InvalidParameter, "corner id out of range");
  auto loc = where_[corner_id];
  if (loc.first < 0) fail(Err::CornerNotCovered, "corner not covered by any 2-face");
  return loc;
}

namespace {

VertexId psi_singleton_ct(const PolytopeGraph& g, const CornerTable& ct, const TwoFaceSet& tf,
                          VertexId v, VertexId w, VertexId u) {
  if (!g.has_edge(v, w)) fail(Err::InvalidParameter, "v and w must be adjacent");
  if (u == w || !g.has_edge(v, u)) fail(Err::InvalidParameter, "u must be a neighbor of v other than w");
  auto [wi, pos] = tf.locate(ct.id(v, u, w));
  const auto& s = tf.cycles()[wi].seq();
  int l = static_cast<int>(s.size());
  if (s[(pos + 1) % l] == w) return s[(pos + 2) % l];
  return s[(pos + l - 2) % l];
}

VertexSubset psi_subset_ct(const PolytopeGraph& g, const CornerTable& ct, const TwoFaceSet& tf,
                           VertexId v, VertexId w, const VertexSubset& s) {
  VertexSubset image;
  image.reserve(s.size());
  for (VertexId u : s) image.push_back(psi_singleton_ct(g, ct, tf, v, w, u));
  std::sort(image.begin(), image.end());
  for (size_t i = 1; i < image.size(); ++i)
    if (image[i] == image[i - 1])
      fail(Err::InconsistentPropagation, "propagation map is not injective on the given set");
  return image;
}

VertexSubset spanned_face_ct(const PolytopeGraph& g, const CornerTable& ct, const TwoFaceSet& tf,
                             VertexId v, const VertexSubset& t) {
  if (v < 0 || v >= g.vertex_count()) fail(Err::InvalidParameter, "vertex out of range");
  for (VertexId u : t)
    if (!g.has_edge(v, u)) fail(Err::InvalidParameter, "t must consist of neighbors of v");
  if (!is_sorted_subset(t, g.vertex_count()))
    fail(Err::InvalidParameter, "t must be sorted and duplicate-free");
  if (t.empty()) return {v};

  std::map<VertexId, VertexSubset> tangent;  // vertex -> its neighbor set inside the face
  std::queue<VertexId> q;
  tangent[v] = t;
  q.push(v);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    const VertexSubset& tu = tangent[u];
    for (VertexId w : tu) {
      VertexSubset rest;
      rest.reserve(tu.size() - 1);
      for (VertexId x : tu)
        if (x != w) rest.push_back(x);
      VertexSubset tw = psi_subset_ct(g, ct, tf, u, w, rest);
      tw.insert(std::lower_bound(tw.begin(), tw.end(), u), u);
      auto it = tangent.find(w);
      if (it == tangent.end()) {
        tangent[w] = std::move(tw);
        q.push(w);
      } else if (it->second != tw) {
        fail(Err::InconsistentPropagation,
             "conflicting neighbor sets propagated to vertex " + std::to_string(w));
      }
    }
  }
  VertexSubset face;
  face.reserve(tangent.size());
  for (const auto& [u, _] : tangent) face.push_back(u);
  return face;
}

}  // namespace

VertexId psi_singleton(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v, VertexId w,
                       VertexId u) {
  CornerTable ct(g);
  return psi_singleton_ct(g, ct, tf, v, w, u);
}

VertexSubset psi_subset(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v, VertexId w,
                        const VertexSubset& s) {
  CornerTable ct(g);
  return psi_subset_ct(g, ct, tf, v, w, s);
}

VertexSubset spanned_face(const PolytopeGraph& g, const TwoFaceSet& tf, VertexId v,
                          const VertexSubset& t) {
  CornerTable ct(g);
  return spanned_face_ct(g, ct, tf, v, t);
}

VertexFacetIncidence facets_from_twofaces(const PolytopeGraph& g, const TwoFaceSet& tf) {
  CornerTable ct(g);
  int n = g.vertex_count();
  int d = g.degree();
  std::set<VertexSubset> facet_set;
  for (VertexId v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    for (int skip = 0; skip < d; ++skip) {
      VertexSubset t;
      t.reserve(d - 1);
      for (int i = 0; i < d; ++i)
        if (i != skip) t.push_back(nb[i]);
      // Grown already from an earlier vertex?
      bool known = false;
      for (const auto& f : facet_set)
        if (subset_contains(f, v) && subset_intersection(f, nb) == t) {
          known = true;
          break;
        }
      if (!known) facet_set.insert(spanned_face_ct(g, ct, tf, v, t));
    }
  }
  VertexFacetIncidence vfi;
  vfi.facets.assign(facet_set.begin(), facet_set.end());
  std::sort(vfi.facets.begin(), vfi.facets.end());
  vfi.facets_of.assign(n, {});
  for (size_t fi = 0; fi < vfi.facets.size(); ++fi)
    for (VertexId v : vfi.facets[fi]) vfi.facets_of[v].push_back(static_cast<int>(fi));
  for (VertexId v = 0; v < n; ++v)
    if (static_cast<int>(vfi.facets_of[v].size()) != d)
      fail(Err::InconsistentPropagation, "vertex " + std::to_string(v) + " lies on " +
                                             std::to_string(vfi.facets_of[v].size()) +
                                             " facets, expected " + std::to_string(d));
  for (const Edge& e : g.edges()) {
    std::vector<int> shared;
    std::set_intersection(vfi.facets_of[e.u].begin(), vfi.facets_of[e.u].end(),
                          vfi.facets_of[e.v].begin(), vfi.facets_of[e.v].end(),
                          std::back_inserter(shared));
    if (static_cast<int>(shared.size()) != d - 1)
      fail(Err::InconsistentPropagation, "edge {" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) + "} lies on " +
                                             std::to_string(shared.size()) +
                                             " facets, expected " + std::to_string(d - 1));
  }
  return vfi;
}

TwoFaceSet twofaces_from_facets(const PolytopeGraph& g, const VertexFacetIncidence& vfi) {
  CornerTable ct(g);
  int d = g.degree();
  VertexSubset everything(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) everything[v] = v;

  std::set<ClosedSmoothWalk> walks;
  for (int c = 0; c < ct.count(); ++c) {
    const Corner& cr = ct.corner(c);
    VertexSubset common = everything;
    if (d > 2) {
      std::vector<int> shared;
      for (int fi : vfi.facets_of[cr.center])
        if (std::binary_search(vfi.facets_of[cr.a].begin(), vfi.facets_of[cr.a].end(), fi) &&
            std::binary_search(vfi.facets_of[cr.b].begin(), vfi.facets_of[cr.b].end(), fi))
          shared.push_back(fi);
      if (shared.empty())
        fail(Err::InconsistentPropagation, "no facet contains a full corner");
      common = vfi.facets[shared[0]];
      for (size_t i = 1; i < shared.size(); ++i)
        common = subset_intersection(common, vfi.facets[shared[i]]);
    }
    if (!is_k_regular_connected(g, common, 2))
      fail(Err::NotACycle, "facet intersection at a corner is not a cycle");
    // The center's two in-set neighbors must be exactly the corner endpoints.
    {
      VertexSubset nb_in = subset_intersection(common, g.neighbors(cr.center));
      if (nb_in != VertexSubset{std::min(cr.a, cr.b), std::max(cr.a, cr.b)})
        fail(Err::NotACycle, "corner endpoints do not bound the recovered 2-face");
    }
    std::vector<VertexId> seq;
    seq.reserve(common.size());
    VertexId prev = cr.a, cur = cr.center;
    do {
      seq.push_back(cur);
      VertexSubset nb_in = subset_intersection(common, g.neighbors(cur));
      VertexId next = nb_in[0] == prev ? nb_in[1] : nb_in[0];
      prev = cur;
      cur = next;
    } while (cur != cr.center);
    walks.insert(ClosedSmoothWalk::canonical(g, std::move(seq)));
  }
  FacoidalSystem fs;
  fs.walks.assign(walks.begin(), walks.end());
  return TwoFaceSet::from_system(g, fs);
}

long long FaceLattice::face_count() const {
  long long t = 0;
  for (long long c : fvector) t += c;
  return t;
}

FaceLattice lattice_from_faces(const PolytopeGraph& g, std::vector<VertexSubset> faces) {
  int d = g.degree();
  FaceLattice lat;
  lat.dim = d;
  lat.faces.assign(d + 1, {});
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  for (auto& f : faces) {
    int k = regular_connected_degree(g, f);
    if (k > d) fail(Err::RankInconsistent, "face rank exceeds graph degree");
    lat.faces[k].push_back(std::move(f));
  }
  for (auto& level : lat.faces) std::sort(level.begin(), level.end());
  lat.fvector.resize(d + 1);
  for (int k = 0; k <= d; ++k) lat.fvector[k] = static_cast<long long>(lat.faces[k].size());
  if (lat.fvector[0] != g.vertex_count())
    fail(Err::RankInconsistent, "face family does not contain every vertex as a 0-face");
  if (lat.fvector[1] != g.edge_count())
    fail(Err::RankInconsistent, "face family does not contain every edge as a 1-face");
  if (lat.fvector[d] != 1)
    fail(Err::RankInconsistent, "face family must contain the whole vertex set exactly once");
  lat.offset.assign(d + 2, 0);
  for (int k = 0; k <= d; ++k) lat.offset[k + 1] = lat.offset[k] + static_cast<int>(lat.fvector[k]);
  for (int k = 0; k < d; ++k)
    for (size_t i = 0; i < lat.faces[k].size(); ++i)
      for (size_t j = 0; j < lat.faces[k + 1].size(); ++j)
        if (subset_includes(lat.faces[k + 1][j], lat.faces[k][i]))
          lat.hasse.push_back({lat.offset[k] + static_cast<int>(i),
                               lat.offset[k + 1] + static_cast<int>(j)});
  return lat;
}

FaceLattice face_lattice(const PolytopeGraph& g, const VertexFacetIncidence& vfi) {
  std::set<VertexSubset> closed(vfi.facets.begin(), vfi.facets.end());
  VertexSubset everything(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) everything[v] = v;
  closed.insert(everything);
  std::queue<VertexSubset> q;
  for (const auto& f : closed) q.push(f);
  while (!q.empty()) {
    VertexSubset f = std::move(q.front());
    q.pop();
    for (const auto& facet : vfi.facets) {
      VertexSubset meet = subset_intersection(f, facet);
      if (!meet.empty() && closed.insert(meet).second) q.push(std::move(meet));
    }
  }
  return lattice_from_faces(g, std::vector<VertexSubset>(closed.begin(), closed.end()));
}

}  // namespace polyrec
