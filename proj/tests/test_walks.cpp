#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polyrec/io.hpp"
#include "polyrec/walks.hpp"

using namespace polyrec;

namespace {

// the four Petrie hexagons of the 3-cube: a valid facoidal system of only
// four walks, far from the six face cycles
const std::vector<std::vector<VertexId>> kPetrie = {
    {0, 1, 3, 7, 6, 4}, {0, 2, 3, 7, 5, 4}, {0, 1, 5, 7, 6, 2}, {1, 3, 2, 6, 4, 5}};

std::vector<std::vector<VertexId>> face_walks(const char* spec) {
    PolytopeGraph g = generate(spec);
    oracle::FaceSet fs = oracle::faces_for(spec);
    std::vector<std::vector<VertexId>> out;
    for (const auto& f : fs.two_faces()) out.push_back(oracle::face_cycle(g, f));
    return out;
}

FacoidalSystem face_system(const PolytopeGraph& g, const char* spec) {
    return validate_facoidal(g, face_walks(spec));
}

int corner_node(const CornerGraph& cg, const CornerTable& ct, VertexId a, VertexId c, VertexId b) {
    (void)cg;
    return ct.id(c, a, b);
}

VertexOrder random_order(int n, std::mt19937_64& rng) {
    std::vector<VertexId> seq(n);
    for (int i = 0; i < n; ++i) seq[i] = i;
    std::shuffle(seq.begin(), seq.end(), rng);
    return VertexOrder::from_sequence(seq);
}

}  // namespace

TEST_CASE("corner tables enumerate all corners") {
    PolytopeGraph k4 = make_simplex(3);
    CornerTable t4(k4);
    CHECK(t4.count() == 12);
    CHECK(t4.per_vertex() == 3);

    CornerTable tc(make_cube(3));
    CHECK(tc.count() == 24);

    CornerTable tp(make_polygon(7));
    CHECK(tp.count() == 7);

    // id <-> corner round trip and bucket structure
    for (int c = 0; c < t4.count(); ++c) {
        const Corner& k = t4.corner(c);
        CHECK(k.a < k.b);
        CHECK(t4.id(k.center, k.a, k.b) == c);
        CHECK(t4.id(k.center, k.b, k.a) == c);
        CHECK(t4.side_of(c, k.a) == 0);
        CHECK(t4.side_of(c, k.b) == 1);
    }
    for (VertexId v = 0; v < 4; ++v)
        for (VertexId u : k4.neighbors(v)) {
            const auto& bucket = t4.corners_at(v, u);
            REQUIRE(bucket.size() == 2);  // d - 1
            for (size_t s = 0; s < bucket.size(); ++s)
                CHECK(t4.slot_of(bucket[s], u) == static_cast<int>(s));
        }
    CHECK_THROWS_AS(t4.id(0, 1, 1), Error);

    PolytopeGraph seg = make_segment();
    CHECK_THROWS_AS(CornerTable{seg}, Error);  // d < 2
}

TEST_CASE("corner graph shape") {
    PolytopeGraph k4 = make_simplex(3);
    CornerGraph cg = corner_graph(k4);
    CHECK(cg.nodes == 12);
    CHECK(cg.edges.size() == 24);
    for (const auto& nbs : cg.adj) CHECK(nbs.size() == 4);  // 2(d-1)

    CornerGraph cc = corner_graph(make_cube(3));
    CHECK(cc.nodes == 24);
    for (const auto& nbs : cc.adj) CHECK(nbs.size() == 4);

    // polygon: single cycle
    CornerGraph cp = corner_graph(make_polygon(6));
    CHECK(cp.nodes == 6);
    for (const auto& nbs : cp.adj) CHECK(nbs.size() == 2);

    // adjacency definition: shared edge, distinct centers
    CornerTable ct(k4);
    for (auto [x, y] : cg.edges) {
        const Corner& cx = ct.corner(x);
        const Corner& cy = ct.corner(y);
        CHECK(cx.center != cy.center);
        bool xy = (cx.a == cy.center || cx.b == cy.center) &&
                  (cy.a == cx.center || cy.b == cx.center);
        CHECK(xy);
    }
}

TEST_CASE("walk canonical form is rotation and reflection invariant") {
    PolytopeGraph c = make_cube(3);
    std::vector<VertexId> base = {0, 1, 3, 2};
    ClosedSmoothWalk w = ClosedSmoothWalk::canonical(c, base);
    for (size_t r = 0; r < base.size(); ++r) {
        std::vector<VertexId> rot(base.begin() + r, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + r);
        CHECK(ClosedSmoothWalk::canonical(c, rot) == w);
        std::vector<VertexId> rev(rot.rbegin(), rot.rend());
        CHECK(ClosedSmoothWalk::canonical(c, rev) == w);
    }
    CHECK(w.seq() == std::vector<VertexId>{0, 1, 3, 2});
}

TEST_CASE("walk validation rejects defects") {
    PolytopeGraph c = make_cube(3);
    for (auto bad : {std::vector<VertexId>{0, 1},          // too short
                     std::vector<VertexId>{0, 1, 2},       // 1-2 not an edge
                     std::vector<VertexId>{0, 1, 0, 2},    // repeated edge use
                     std::vector<VertexId>{0, 1, 3, 1}}) { // backtrack at 1
        try {
            ClosedSmoothWalk::canonical(c, bad);
            FAIL_CHECK("accepted a defective walk");
        } catch (const Error& e) {
            CHECK(e.code() == Err::NotAWalk);
        }
    }
}

TEST_CASE("pairings generate valid facoidal systems") {
    std::mt19937_64 seeds(17);
    for (const char* spec : {"simplex(3)", "cube(3)", "prism(3)", "simplex(4)", "dodecahedron"}) {
        PolytopeGraph g = generate(spec);
        CornerTable ct(g);
        size_t corners = static_cast<size_t>(ct.count());

        EdgePairing canon = EdgePairing::canonical(g);
        canon.check(g);
        FacoidalSystem fs = walks_from_pairing(g, canon);
        CHECK(fs.total_length() == corners);

        for (int t = 0; t < 8; ++t) {
            EdgePairing p = EdgePairing::random(g, seeds());
            p.check(g);
            FacoidalSystem r = walks_from_pairing(g, p);
            CHECK(r.total_length() == corners);
            // validate_facoidal re-accepts the traced walks
            std::vector<std::vector<VertexId>> raw;
            for (const auto& w : r.walks) raw.push_back(w.seq());
            CHECK(validate_facoidal(g, raw).cardinality() == r.cardinality());

            // every edge is traversed d-1 times in total
            std::map<std::pair<int, int>, int> uses;
            for (const auto& w : r.walks) {
                const auto& s = w.seq();
                for (size_t i = 0; i < s.size(); ++i) {
                    VertexId u = s[i], v = s[(i + 1) % s.size()];
                    ++uses[{std::min(u, v), std::max(u, v)}];
                }
            }
            for (const Edge& e : g.edges()) CHECK(uses[{e.u, e.v}] == g.degree() - 1);

            // the pairing is recoverable from its walks
            EdgePairing back = pairing_from_system(g, r);
            CHECK(back.perm == p.perm);
        }
    }
}

TEST_CASE("polygon has a unique one-walk system") {
    for (int m = 3; m <= 7; ++m) {
        PolytopeGraph g = make_polygon(m);
        FacoidalSystem fs = walks_from_pairing(g, EdgePairing::canonical(g));
        REQUIRE(fs.cardinality() == 1);
        CHECK(fs.walks[0].length() == m);
        CHECK(find_facoidal(g, {FindStrategy::Kind::Matching, 0}).cardinality() == 1);
    }
}

TEST_CASE("invalid pairings are rejected") {
    PolytopeGraph g = make_cube(3);
    EdgePairing p = EdgePairing::canonical(g);
    p.perm[0] = {0, 0};  // not a bijection
    CHECK_THROWS_AS(p.check(g), Error);
    CHECK_THROWS_AS(walks_from_pairing(g, p), Error);
}

TEST_CASE("face cycles of the cube form the maximum system") {
    PolytopeGraph g = make_cube(3);
    FacoidalSystem fs = face_system(g, "cube(3)");
    CHECK(fs.cardinality() == 6);
    CHECK(fs.total_length() == 24);
    // reading the pairing off the face system and tracing it again is stable
    FacoidalSystem again = walks_from_pairing(g, pairing_from_system(g, fs));
    CHECK(again.walks == fs.walks);
}

TEST_CASE("four Petrie hexagons cover the cube corners") {
    PolytopeGraph g = make_cube(3);
    FacoidalSystem fs = validate_facoidal(g, kPetrie);
    CHECK(fs.cardinality() == 4);
    CHECK(fs.total_length() == 24);
}

TEST_CASE("partial systems are rejected precisely") {
    PolytopeGraph g = make_cube(3);
    auto walks = face_walks("cube(3)");
    auto missing = walks;
    missing.pop_back();
    try {
        validate_facoidal(g, missing);
        FAIL_CHECK("five faces accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Err::CornerMissing);
    }

    auto doubled = walks;
    doubled.push_back(doubled.front());
    try {
        validate_facoidal(g, doubled);
        FAIL_CHECK("duplicate face accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Err::CornerDuplicated);
    }

    auto broken = walks;
    broken[0] = {0, 1, 2};  // not even a walk
    CHECK_THROWS_AS(validate_facoidal(g, broken), Error);
}

TEST_CASE("facoidal systems and coherent 2-factors are in bijection") {
    for (const char* spec : {"simplex(3)", "cube(3)", "prism(3)"}) {
        PolytopeGraph g = generate(spec);
        FacoidalSystem fs = face_system(g, spec);
        TwoFactor tf = facoidal_to_two_factor(g, fs);
        CHECK(tf.size() == fs.walks.size());

        // covers every corner exactly once, and walk lengths match
        CornerTable ct(g);
        std::vector<int> hits(ct.count(), 0);
        for (const auto& cyc : tf)
            for (int c : cyc) ++hits[c];
        CHECK(std::count(hits.begin(), hits.end(), 1) == ct.count());

        // cycles really live in the corner graph
        CornerGraph cg = corner_graph(g);
        for (const auto& cyc : tf)
            for (size_t i = 0; i < cyc.size(); ++i) {
                int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
                CHECK(std::binary_search(cg.adj[x].begin(), cg.adj[x].end(), y));
            }

        FacoidalSystem back = two_factor_to_facoidal(g, tf);
        CHECK(back.walks == fs.walks);
    }
}

TEST_CASE("incoherent 2-factors are detected and repairable") {
    PolytopeGraph g = make_simplex(3);
    CornerTable ct(g);
    CornerGraph cg = corner_graph(g);
    auto node = [&](VertexId a, VertexId c, VertexId b) { return corner_node(cg, ct, a, c, b); };
    // single 12-cycle on K4's corners; corners (1,0,2), (1,0,3), (2,0,3) each
    // use one of their two graph edges twice
    TwoFactor incoherent = {{
        node(1, 0, 2), node(0, 1, 2), node(0, 2, 1), node(2, 0, 3), node(0, 2, 3), node(1, 3, 2),
        node(2, 1, 3), node(1, 2, 3), node(0, 3, 2), node(1, 0, 3), node(0, 3, 1), node(0, 1, 3),
    }};
    try {
        two_factor_to_facoidal(g, incoherent);
        FAIL_CHECK("incoherent factor accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Err::IncoherentFactor);
    }

    FacoidalSystem repaired = repair_incoherent_factor(g, incoherent);
    CHECK(repaired.total_length() == 12);

    // garbage input: a cycle that is not a corner-graph cycle at all
    TwoFactor junk = {{node(1, 0, 2), node(1, 0, 3)}};
    CHECK_THROWS_AS(two_factor_to_facoidal(g, junk), Error);
}

TEST_CASE("find_facoidal strategies always return valid systems") {
    for (const char* spec : {"simplex(3)", "cube(3)", "prism(4)", "simplex(4)"}) {
        PolytopeGraph g = generate(spec);
        CornerTable ct(g);
        for (FindStrategy s : {FindStrategy{FindStrategy::Kind::PairingCanonical, 0},
                               FindStrategy{FindStrategy::Kind::PairingRandom, 99},
                               FindStrategy{FindStrategy::Kind::Matching, 0}}) {
            FacoidalSystem fs = find_facoidal(g, s);
            CHECK(fs.total_length() == static_cast<size_t>(ct.count()));
            CHECK(fs.cardinality() >= 1);
        }
    }
    PolytopeGraph seg = make_segment();
    CHECK_THROWS_AS(find_facoidal(seg, {}), Error);
}

TEST_CASE("walk sinks and sources under orientations") {
    PolytopeGraph g = make_cube(3);
    Orientation coord = orient_by_order(g, VertexOrder::identity(8));
    FacoidalSystem faces = face_system(g, "cube(3)");
    for (const auto& w : faces.walks) {
        CHECK(walk_sink_positions(g, w, coord).size() == 1);
        CHECK(walk_source_positions(g, w, coord).size() == 1);
    }
    CHECK(is_aof_via_twofaces(g, coord, faces.walks));

    // a directed square has no sink position at all
    PolytopeGraph sq = make_polygon(4);
    Orientation cyc = Orientation::from_bits(sq, {1, 0, 1, 1});  // 0>1>2>3>0
    REQUIRE_FALSE(cyc.acyclic());
    ClosedSmoothWalk loop = ClosedSmoothWalk::canonical(sq, {0, 1, 2, 3});
    CHECK(walk_sink_positions(sq, loop, cyc).empty());
    CHECK(walk_source_positions(sq, loop, cyc).empty());
    CHECK_FALSE(is_aof_via_twofaces(sq, cyc, {loop}));

    // two directed paths around the square: one sink, one source
    Orientation two_paths = orient_by_order(sq, VertexOrder::identity(4));
    CHECK(walk_sink_positions(sq, loop, two_paths) == std::vector<int>{0});
    CHECK(walk_source_positions(sq, loop, two_paths).size() == 1);
}

TEST_CASE("total walk sinks equal the pair count of the in-degrees") {
    std::mt19937_64 rng(23);
    for (const char* spec : {"simplex(3)", "cube(3)", "prism(3)", "dodecahedron"}) {
        PolytopeGraph g = generate(spec);
        for (int t = 0; t < 12; ++t) {
            Orientation o = orient_by_order(g, random_order(g.vertex_count(), rng));
            FacoidalSystem fs = walks_from_pairing(g, EdgePairing::random(g, rng()));
            long long sinks = 0;
            for (const auto& w : fs.walks)
                sinks += static_cast<long long>(walk_sink_positions(g, w, o).size());
            CHECK(sinks == static_cast<long long>(h2_sum(g, o)));
            // acyclic: at least one sink per walk, so cardinality is bounded
            CHECK(fs.cardinality() <= static_cast<int>(h2_sum(g, o)));
        }
    }
}

TEST_CASE("facoidal json round trip") {
    PolytopeGraph g = make_cube(3);
    FacoidalSystem fs = face_system(g, "cube(3)");
    nlohmann::json j = facoidal_to_json(fs);
    REQUIRE(j.contains("walks"));
    FacoidalSystem back = validate_facoidal(g, raw_walks_from_json(j));
    CHECK(back.walks == fs.walks);
}
