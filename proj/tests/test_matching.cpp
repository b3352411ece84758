#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polyrec/matching.hpp"
#include "polyrec/walks.hpp"

using namespace polyrec;

namespace {

GenericGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) edges.push_back({u, v});
    return GenericGraph::from_edges(n, edges);
}

void check_matching_valid(const GenericGraph& g, const MatePairs& m) {
    std::set<int> touched;
    for (auto [u, v] : m) {
        CHECK(u != v);
        CHECK(std::binary_search(g.adj[u].begin(), g.adj[u].end(), v));
        CHECK(touched.insert(u).second);
        CHECK(touched.insert(v).second);
    }
}

GenericGraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return GenericGraph::from_edges(n, edges);
}

GenericGraph from_polytope(const PolytopeGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return GenericGraph::from_edges(g.vertex_count(), edges);
}

GenericGraph corner_generic(const char* spec) {
    CornerGraph cg = corner_graph(generate(spec));
    return GenericGraph::from_edges(cg.nodes, cg.edges);
}

}  // namespace

TEST_CASE("matching on tiny named graphs") {
    GenericGraph k4 = from_polytope(make_simplex(3));
    MatePairs mk4 = max_matching(k4);
    check_matching_valid(k4, mk4);
    CHECK(mk4.size() == 2);

    GenericGraph c5 = cycle_graph(5);
    MatePairs mc5 = max_matching(c5);
    check_matching_valid(c5, mc5);
    CHECK(mc5.size() == 2);

    GenericGraph empty = GenericGraph::from_edges(4, {});
    CHECK(max_matching(empty).empty());

    GenericGraph one = GenericGraph::from_edges(2, {{0, 1}});
    CHECK(max_matching(one).size() == 1);
}

TEST_CASE("petersen graph has a perfect matching") {
    GenericGraph p = from_polytope(oracle::petersen());
    MatePairs m = max_matching(p);
    check_matching_valid(p, m);
    CHECK(m.size() == 5);
    CHECK(oracle::brute_force_matching_size(p) == 5);
}

TEST_CASE("blossom equals brute force on random graphs") {
    std::mt19937_64 rng(101);
    int checked = 0;
    for (double p : {0.2, 0.35, 0.5, 0.75}) {
        for (int t = 0; t < 20; ++t) {
            int n = 4 + static_cast<int>(rng() % 7);  // 4..10 nodes
            GenericGraph g = random_graph(n, p, rng);
            MatePairs m = max_matching(g);
            check_matching_valid(g, m);
            CHECK(static_cast<int>(m.size()) == oracle::brute_force_matching_size(g));
            ++checked;
        }
    }
    CHECK(checked == 80);
}

TEST_CASE("blossom equals brute force on odd-cycle-heavy graphs") {
    // unions of odd cycles plus chords exercise blossom contraction
    std::mt19937_64 rng(55);
    for (int t = 0; t < 20; ++t) {
        int n = 7 + static_cast<int>(rng() % 3);
        GenericGraph base = cycle_graph(n);
        std::vector<std::pair<int, int>> edges = base.edges;
        for (int extra = 0; extra < 2; ++extra) {
            int u = static_cast<int>(rng() % n);
            int v = static_cast<int>(rng() % n);
            if (u == v) continue;
            edges.push_back({std::min(u, v), std::max(u, v)});
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        GenericGraph g = GenericGraph::from_edges(n, edges);
        MatePairs m = max_matching(g);
        check_matching_valid(g, m);
        CHECK(static_cast<int>(m.size()) == oracle::brute_force_matching_size(g));
    }
}

TEST_CASE("blossom equals brute force on corner graphs") {
    for (const char* spec : {"simplex(3)", "prism(3)", "cube(3)", "polygon(5)", "polygon(8)"}) {
        GenericGraph g = corner_generic(spec);
        MatePairs m = max_matching(g);
        check_matching_valid(g, m);
        CHECK(static_cast<int>(m.size()) == oracle::brute_force_matching_size(g));
    }
}

TEST_CASE("matching is deterministic") {
    GenericGraph g = corner_generic("cube(3)");
    CHECK(max_matching(g) == max_matching(g));
}

TEST_CASE("tutte gadget sizes") {
    GenericGraph k4 = from_polytope(make_simplex(3));
    TutteGadget tg = build_tutte_gadget(k4);
    CHECK(tg.graph.n == 16);  // sum of 2*deg - 2
    CHECK(tg.outer_pair.size() == k4.edges.size());

    GenericGraph cc = corner_generic("cube(3)");
    CHECK(build_tutte_gadget(cc).graph.n == 144);  // 24 corners, degree 4

    // degenerate 2-regular case: no inner nodes, gadget is 5 disjoint
    // outer-outer edges and its perfect matching forces the whole cycle
    GenericGraph c5 = cycle_graph(5);
    TutteGadget g5 = build_tutte_gadget(c5);
    CHECK(g5.graph.n == 10);
    CHECK(g5.graph.edges.size() == 5);
    CHECK(max_matching(g5.graph).size() == 5);

    GenericGraph path = GenericGraph::from_edges(3, {{0, 1}, {1, 2}});
    try {
        build_tutte_gadget(path);
        FAIL_CHECK("gadget built despite degree-1 vertex");
    } catch (const Error& e) {
        CHECK(e.code() == Err::DegreeTooSmall);
    }
}

TEST_CASE("gadget matchings select exactly the 2-factor edges") {
    // on K4 a perfect gadget matching must pick a hamiltonian 4-cycle
    GenericGraph k4 = from_polytope(make_simplex(3));
    TutteGadget tg = build_tutte_gadget(k4);
    MatePairs m = max_matching(tg.graph);
    CHECK(m.size() * 2 == static_cast<size_t>(tg.graph.n));  // perfect
    std::set<std::pair<int, int>> mates;
    for (auto [u, v] : m) mates.insert({std::min(u, v), std::max(u, v)});
    std::vector<int> deg(k4.n, 0);
    int picked = 0;
    for (size_t e = 0; e < k4.edges.size(); ++e) {
        auto [a, b] = tg.outer_pair[e];
        auto key = std::minmax(a, b);
        if (mates.count({key.first, key.second})) {
            ++picked;
            ++deg[k4.edges[e].first];
            ++deg[k4.edges[e].second];
        }
    }
    CHECK(picked == 4);
    for (int v = 0; v < k4.n; ++v) CHECK(deg[v] == 2);
}

TEST_CASE("two factors of small graphs") {
    auto check_two_factor = [](const GenericGraph& g, const std::vector<std::vector<int>>& tf) {
        std::vector<int> seen(g.n, 0);
        for (const auto& cyc : tf) {
            CHECK(cyc.size() >= 3);
            for (size_t i = 0; i < cyc.size(); ++i) {
                int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
                CHECK(std::binary_search(g.adj[u].begin(), g.adj[u].end(), v));
                ++seen[u];
            }
        }
        for (int v = 0; v < g.n; ++v) CHECK(seen[v] == 1);
    };

    GenericGraph c6 = cycle_graph(6);
    auto t6 = two_factor(c6);
    REQUIRE(t6.has_value());
    CHECK(t6->size() == 1);
    CHECK(t6->front().size() == 6);
    CHECK(oracle::brute_force_two_factor_count(c6) == 1);

    GenericGraph k4 = from_polytope(make_simplex(3));
    auto t4 = two_factor(k4);
    REQUIRE(t4.has_value());
    check_two_factor(k4, *t4);
    CHECK(oracle::brute_force_two_factor_count(k4) == 3);  // the 3 hamiltonian cycles

    GenericGraph pet = from_polytope(oracle::petersen());
    auto tp = two_factor(pet);
    REQUIRE(tp.has_value());
    check_two_factor(pet, *tp);

    GenericGraph cc = corner_generic("cube(3)");
    auto tcc = two_factor(cc);
    REQUIRE(tcc.has_value());
    check_two_factor(cc, *tcc);

    // corner graph of a polygon is a single cycle already
    GenericGraph cp = corner_generic("polygon(6)");
    auto tcp = two_factor(cp);
    REQUIRE(tcp.has_value());
    CHECK(tcp->size() == 1);
    CHECK(tcp->front().size() == 6);
}

TEST_CASE("graphs without 2-factors give nothing") {
    // bowtie: two triangles sharing vertex 2; vertex 2 cannot drop to degree 2
    GenericGraph bowtie =
        GenericGraph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    CHECK_FALSE(two_factor(bowtie).has_value());
    CHECK(oracle::brute_force_two_factor_count(bowtie) == 0);

    GenericGraph path = GenericGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(two_factor(path).has_value());

    // K4 minus an edge: the degree-2 vertices force the unique hamiltonian cycle
    GenericGraph nearly = GenericGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}});
    auto tn = two_factor(nearly);
    if (tn) {
        std::vector<int> seen(4, 0);
        for (const auto& cyc : *tn)
            for (int v : cyc) ++seen[v];
        for (int v = 0; v < 4; ++v) CHECK(seen[v] == 1);
    }
    CHECK(oracle::brute_force_two_factor_count(nearly) ==
          (tn.has_value() ? 1 : 0));
}
