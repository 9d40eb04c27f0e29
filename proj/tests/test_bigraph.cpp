#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "bitree/bigraph.hpp"
#include "oracles.hpp"

using namespace bitree;

namespace {

BipartiteGraph g0_shape() {
    // Six edges on (3,3) with a degree-3 vertex on each side.
    std::vector<std::pair<int, int>> edges{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    return BipartiteGraph(3, 3, edges);
}

}  // namespace

TEST_CASE("graph construction") {
    std::vector<std::pair<int, int>> k22{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    BipartiteGraph g(2, 2, k22);
    CHECK(g.edge_count() == 4);
    CHECK(g == BipartiteGraph::complete(2, 2));

    BipartiteGraph empty(1, 1, {});
    CHECK(empty.edge_count() == 0);

    SUBCASE("duplicates are idempotent") {
        std::vector<std::pair<int, int>> dup{{0, 0}, {0, 0}, {1, 1}};
        CHECK(BipartiteGraph(2, 2, dup).edge_count() == 2);
    }
    SUBCASE("out-of-range edges name the pair") {
        std::vector<std::pair<int, int>> bad{{0, 0}, {2, 0}};
        CHECK_THROWS_WITH_AS(BipartiteGraph(2, 2, bad),
                             doctest::Contains("(2,0)"), contract_error);
    }
    SUBCASE("empty sides rejected") {
        CHECK_THROWS_AS(BipartiteGraph(0, 2, {}), contract_error);
        CHECK_THROWS_AS(BipartiteGraph(2, 0, {}), contract_error);
    }
}

TEST_CASE("degree sequences") {
    CHECK(degree_sequence(BipartiteGraph::complete(3, 2), Side::U).degrees ==
          std::vector<int>{2, 2, 2});

    BipartiteGraph g0 = g0_shape();
    CHECK(degree_sequence(g0, Side::U).degrees == std::vector<int>{1, 2, 3});
    CHECK(degree_sequence(g0, Side::V).degrees == std::vector<int>{1, 2, 3});

    BipartiteGraph edgeless(3, 3, {});
    CHECK(degree_sequence(edgeless, Side::V).degrees == std::vector<int>{0, 0, 0});

    SUBCASE("sum identity over random graphs") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            BipartiteGraph g = oracles::random_graph(1 + trial % 6, 1 + (trial / 3) % 6, rng);
            auto du = degree_sequence(g, Side::U).degrees;
            auto dv = degree_sequence(g, Side::V).degrees;
            long long su = 0, sv = 0;
            for (int d : du) su += d;
            for (int d : dv) sv += d;
            CHECK(su == g.edge_count());
            CHECK(sv == g.edge_count());
        }
    }
}

TEST_CASE("canonical key invariance and separation") {
    SUBCASE("relabeling V of K_{1,2}") {
        BipartiteGraph a(1, 2, std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
        BipartiteGraph b(1, 2, std::vector<std::pair<int, int>>{{0, 1}, {0, 0}});
        CHECK(canonical_key(a) == canonical_key(b));
    }

    SUBCASE("orbit invariance under random relabelings") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 1000; ++trial) {
            BipartiteGraph g = oracles::random_graph(1 + trial % 5, 1 + (trial / 5) % 5, rng);
            CHECK(canonical_key(g) == canonical_key(oracles::permuted(g, rng)));
        }
    }

    SUBCASE("classes match explicit orbits for n,m <= 3") {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
            auto orbits = oracles::orbits_by_edges(n, m, false);
            std::map<int, std::set<CanonicalKey>> classes;
            const std::uint64_t total = 1ULL << (n * m);
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                BipartiteGraph g = oracles::graph_from_mask(mask, n, m);
                classes[g.edge_count()].insert(canonical_key(g));
            }
            for (auto& [e, orbit_set] : orbits) {
                CHECK(classes[e].size() == orbit_set.size());
            }
        }
    }

    SUBCASE("side-swap policy merges mirror classes on (2,2)") {
        auto orbits = oracles::orbits_by_edges(2, 2, true);
        std::size_t orbit_count = 0;
        for (auto& [e, s] : orbits) orbit_count += s.size();
        std::set<CanonicalKey> keys;
        for (std::uint64_t mask = 0; mask < 16; ++mask) {
            keys.insert(canonical_key(oracles::graph_from_mask(mask, 2, 2), true));
        }
        CHECK(keys.size() == orbit_count);
        CHECK(keys.size() == 6);  // frozen from the orbit enumeration above
    }

    SUBCASE("labeled sides: a graph and its transpose get distinct keys") {
        BipartiteGraph g(3, 2, std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 1}});
        CHECK(canonical_key(g) != canonical_key(g.transposed()));
        CHECK(canonical_key(g, true) != canonical_key(g.transposed(), true));  // n != m
    }

    SUBCASE("unique (3,3) class with six edges and degree-3 apexes") {
        std::set<CanonicalKey> keys;
        for (std::uint64_t mask = 0; mask < (1ULL << 9); ++mask) {
            if (std::popcount(mask) != 6) continue;
            BipartiteGraph g = oracles::graph_from_mask(mask, 3, 3);
            auto du = degree_sequence(g, Side::U).degrees;
            auto dv = degree_sequence(g, Side::V).degrees;
            if (du.back() == 3 && dv.back() == 3) keys.insert(canonical_key(g));
        }
        CHECK(keys.size() == 1);
    }
}

TEST_CASE("bmat parse and serialize") {
    BipartiteGraph g = parse_bmat("2 2\n11\n11\n");
    CHECK(g == BipartiteGraph::complete(2, 2));

    SUBCASE("round trip is the identity on normalized text") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            BipartiteGraph h = oracles::random_graph(1 + trial % 7, 1 + (trial / 7) % 7, rng);
            std::string text = serialize_bmat(h);
            CHECK(parse_bmat(text) == h);
            CHECK(serialize_bmat(parse_bmat(text)) == text);
        }
    }

    SUBCASE("parse errors carry line numbers") {
        CHECK_THROWS_WITH_AS(parse_bmat("nonsense\n"), doctest::Contains("line 1"), parse_error);
        CHECK_THROWS_WITH_AS(parse_bmat("2 2\n11\n"), doctest::Contains("line 3"), parse_error);
        CHECK_THROWS_WITH_AS(parse_bmat("2 2\n111\n11\n"), doctest::Contains("line 2"),
                             parse_error);
        CHECK_THROWS_WITH_AS(parse_bmat("2 2\n1x\n11\n"), doctest::Contains("line 2"), parse_error);
    }
}

TEST_CASE("dot output ranks the two sides") {
    std::string dot = to_dot(BipartiteGraph::complete(2, 1));
    CHECK(dot.find("rank=same; u0; u1;") != std::string::npos);
    CHECK(dot.find("rank=same; v0;") != std::string::npos);
    CHECK(dot.find("u0 -- v0") != std::string::npos);
}

TEST_CASE("components and connectivity") {
    BipartiteGraph split =
        BipartiteGraph::complete(2, 2).disjoint_union(BipartiteGraph::complete(1, 1));
    CHECK(components(split).size() == 2);
    CHECK(!is_connected(split));
    CHECK(is_connected(BipartiteGraph::complete(3, 2)));
    CHECK(components(BipartiteGraph(2, 2, {})).size() == 4);
}
