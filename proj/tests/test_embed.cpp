#include <doctest.h>

#include <random>

#include "../src/stratum_scan.hpp"
#include "bitree/embed.hpp"
#include "bitree/formulas.hpp"
#include "bitree/treegen.hpp"
#include "oracles.hpp"

using namespace bitree;

namespace {

BipartiteGraph split_graph(int n, int m) {
    return BipartiteGraph::complete(2, m - 2).disjoint_union(BipartiteGraph::complete(n - 2, 2));
}

}  // namespace

TEST_CASE("complete hosts contain their tree families") {
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 3}}) {
        BipartiteGraph host = BipartiteGraph::complete(k, l);
        for (const auto& t : enumerate_trees(k, l).members) {
            CHECK(find_embedding(host, t, Orientation::SidesPreserved).has_value());
        }
        CHECK(contains_all(host, enumerate_trees(k, l)).all);
    }
}

TEST_CASE("the six-edge apex host strongly contains all (3,3) trees") {
    const BipartiteGraph& g0 = graph_g0();
    for (const auto& t : enumerate_trees(3, 3).members) {
        CHECK(find_embedding(g0, t, Orientation::SidesPreserved).has_value());
        CHECK(find_embedding(g0, t, Orientation::SidesSwapped).has_value());
        CHECK(strongly_contains(g0, t));
    }
}

TEST_CASE("the split extremal graph misses the double star") {
    BipartiteGraph host = split_graph(6, 6);
    CHECK(!find_embedding(host, tree_g1(), Orientation::SidesPreserved).has_value());
    CHECK(!find_embedding(host, tree_g1(), Orientation::SidesSwapped).has_value());
    CHECK(!contains_tree(host, tree_g1()));
}

TEST_CASE("double-star host against the (3,2) trees") {
    BipartiteGraph host = make_double_star(5, 4).graph();
    TreeFamily fam = enumerate_trees(3, 2);
    // One member is the double star S_{2,3}, the other is P_5.
    int star_idx = -1, path_idx = -1;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        auto dv = degree_sequence(fam.members[i].graph(), Side::V).degrees;
        if (dv == std::vector<int>{1, 3}) star_idx = static_cast<int>(i);
        if (dv == std::vector<int>{2, 2}) path_idx = static_cast<int>(i);
    }
    REQUIRE(star_idx >= 0);
    REQUIRE(path_idx >= 0);
    CHECK(contains_tree(host, fam.members[static_cast<std::size_t>(star_idx)]) ==
          oracles::contains_naive(host, fam.members[static_cast<std::size_t>(star_idx)].graph()));
    CHECK(contains_tree(host, fam.members[static_cast<std::size_t>(path_idx)]) ==
          oracles::contains_naive(host, fam.members[static_cast<std::size_t>(path_idx)].graph()));
    CHECK(contains_tree(host, fam.members[static_cast<std::size_t>(star_idx)]));
    CHECK(!contains_tree(host, fam.members[static_cast<std::size_t>(path_idx)]));
    auto r = contains_all(host, fam);
    CHECK(!r.all);
}

TEST_CASE("edgeless hosts contain nothing with an edge") {
    BipartiteGraph host(3, 3, {});
    for (const auto& t : enumerate_trees(2, 2).members) CHECK(!contains_tree(host, t));
    for (const auto& t : enumerate_trees(3, 3).members) CHECK(!contains_tree(host, t));
}

TEST_CASE("pendant-augmented complete hosts versus the long path") {
    // Checked against the naive oracle rather than asserted blind.
    for (int n : {3, 4}) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), ((1ULL << n) - 1) & ~1ULL);
        rows.back() = (1ULL << n) - 1;
        BipartiteGraph host = BipartiteGraph::from_rows(n, n, std::move(rows));
        BipartiteTree p2n = make_path(2 * n);
        const bool naive = oracles::contains_naive(host, p2n.graph());
        CHECK(contains_tree(host, p2n) == naive);
        CHECK(naive);  // the path threads the pendant as an endpoint
    }
}

TEST_CASE("contains_all counterexamples from the uniform families") {
    SUBCASE("V-uniform n-1 host misses a tree of its own size") {
        std::vector<std::uint64_t> rows(5, (1ULL << 4) - 1);
        rows[0] = 0;  // every v misses u_0
        BipartiteGraph host = BipartiteGraph::from_rows(5, 4, std::move(rows));
        auto r = contains_all(host, enumerate_trees(5, 4));
        CHECK(!r.all);
        CHECK(r.first_missing >= 0);
    }
    SUBCASE("split union misses a (4,2) tree at (7,3)") {
        BipartiteGraph host =
            BipartiteGraph::complete(3, 2).disjoint_union(BipartiteGraph::complete(4, 1));
        CHECK(!contains_all(host, enumerate_trees(4, 2)).all);
    }
}

TEST_CASE("strong containment contracts") {
    CHECK_THROWS_AS(strongly_contains(BipartiteGraph::complete(3, 2), make_path(4)),
                    contract_error);
    for (int n : {3, 4}) {
        BipartiteGraph host = BipartiteGraph::complete(n, n);
        for (const auto& t : enumerate_trees(n, n).members) CHECK(strongly_contains(host, t));
    }
}

TEST_CASE("dense non-uniform (4,4) hosts strongly contain the whole family") {
    TreeFamily fam = enumerate_trees(4, 4);
    detail::StratumScan scan(4, 4);
    for (int e = 12; e <= 16; ++e) {
        scan.run(e, [&](const std::vector<std::uint64_t>& rows) {
            BipartiteGraph host = BipartiteGraph::from_rows(4, 4, rows);
            auto du = host.u_degrees();
            auto dv = host.v_degrees();
            auto uniform3 = [](const std::vector<int>& d) {
                return std::all_of(d.begin(), d.end(), [](int x) { return x == 3; });
            };
            if (uniform3(du) || uniform3(dv)) return;
            for (const auto& t : fam.members) CHECK(strongly_contains(host, t));
        });
    }
}

TEST_CASE("certificate verifier") {
    BipartiteGraph host = BipartiteGraph::complete(3, 3);
    BipartiteTree t = make_path(6);
    auto e = find_embedding(host, t, Orientation::SidesPreserved);
    REQUIRE(e.has_value());
    CHECK(verify_certificate(host, t, *e));

    SUBCASE("identity map of a tree into itself") {
        Embedding id;
        id.orientation = Orientation::SidesPreserved;
        id.map_u = {0, 1, 2};
        id.map_v = {0, 1, 2};
        CHECK(verify_certificate(t.graph(), t, id));
    }
    SUBCASE("collapsing two leaves breaks injectivity") {
        Embedding bad = *e;
        bad.map_u[2] = bad.map_u[0];
        CHECK(!verify_certificate(host, t, bad));
    }
    SUBCASE("non-edge image is rejected") {
        BipartiteGraph sparse(3, 3, std::vector<std::pair<int, int>>{{0, 0}});
        CHECK(!verify_certificate(sparse, t, *e));
    }
}

TEST_CASE("backtracking agrees with the naive containment check") {
    std::mt19937 rng(2024);
    std::vector<TreeFamily> families;
    for (auto [k, l] :
         std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 3}}) {
        families.push_back(enumerate_trees(k, l));
    }
    int trials = 0;
    while (trials < 2000) {
        const auto& fam = families[static_cast<std::size_t>(trials) % families.size()];
        int n = 1 + static_cast<int>(rng() % 5);
        int m = 1 + static_cast<int>(rng() % 5);
        BipartiteGraph host = oracles::random_graph(n, m, rng, 0.4 + 0.2 * (trials % 3));
        const auto& t = fam.members[static_cast<std::size_t>(rng() % fam.members.size())];
        CHECK(contains_tree(host, t) == oracles::contains_naive(host, t.graph()));
        ++trials;
    }
}

TEST_CASE("exhaustive agreement on (3,3) and (4,3) hosts") {
    std::vector<TreeFamily> families;
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 3}}) {
        families.push_back(enumerate_trees(k, l));
    }
    for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}}) {
        const std::uint64_t total = 1ULL << (n * m);
        // Step through the labeled space; the stride keeps the sweep fast
        // while still covering every residue pattern.
        for (std::uint64_t mask = 0; mask < total; mask += 3) {
            BipartiteGraph host = oracles::graph_from_mask(mask, n, m);
            for (const auto& fam : families) {
                for (const auto& t : fam.members) {
                    CHECK(contains_tree(host, t) == oracles::contains_naive(host, t.graph()));
                }
            }
        }
    }
}

TEST_CASE("containment is monotone under edge addition") {
    std::mt19937 rng(99);
    TreeFamily fam = enumerate_trees(3, 3);
    for (int trial = 0; trial < 500; ++trial) {
        BipartiteGraph host = oracles::random_graph(4, 4, rng, 0.45);
        const auto& t = fam.members[static_cast<std::size_t>(rng() % fam.members.size())];
        if (!contains_tree(host, t)) continue;
        int u = static_cast<int>(rng() % 4);
        int v = static_cast<int>(rng() % 4);
        CHECK(contains_tree(host.with_edge(u, v), t));
    }
}

TEST_CASE("strong containment implies containment") {
    std::mt19937 rng(5);
    TreeFamily fam = enumerate_trees(4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        BipartiteGraph host = oracles::random_graph(4, 4, rng, 0.7);
        for (const auto& t : fam.members) {
            if (strongly_contains(host, t)) CHECK(contains_tree(host, t));
        }
    }
}

TEST_CASE("shared-neighbor property of hosts missing a (k,2) tree") {
    // Whenever a host misses some member of T_{k,2}, two vertices of one side
    // with degrees above ceil(k/2)-1 and k-1 have disjoint neighborhoods.
    // Exhaustive up to isomorphism (the property is isomorphism-invariant).
    for (int k = 2; k <= 4; ++k) {
        TreeFamily fam = enumerate_trees(k, 2);
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= 4; ++m) {
                const int cols = std::min(n, m);
                const int rows_n = std::max(n, m);
                detail::StratumScan scan(rows_n, cols);
                for (int e = 0; e <= n * m; ++e) {
                    scan.run(e, [&](const std::vector<std::uint64_t>& rows) {
                        BipartiteGraph host = BipartiteGraph::from_rows(rows_n, cols, rows);
                        if (m > n) host = host.transposed();
                        if (contains_all(host, fam).all) return;
                        const int lo = (k + 1) / 2 - 1;
                        for (int i = 0; i < m; ++i) {
                            for (int j = 0; j < m; ++j) {
                                if (i == j) continue;
                                if (host.degree_v(i) > lo && host.degree_v(j) > k - 1) {
                                    CHECK((host.column(i) & host.column(j)) == 0);
                                }
                            }
                        }
                        for (int i = 0; i < n; ++i) {
                            for (int j = 0; j < n; ++j) {
                                if (i == j) continue;
                                if (host.degree_u(i) > lo && host.degree_u(j) > k - 1) {
                                    CHECK((host.row(i) & host.row(j)) == 0);
                                }
                            }
                        }
                    });
                }
            }
        }
    }
}

TEST_CASE("constructive balanced embedding") {
    SUBCASE("apex host plus any seventh edge") {
        const BipartiteGraph& g0 = graph_g0();
        for (int u = 0; u < 3; ++u) {
            for (int v = 0; v < 3; ++v) {
                if (g0.has_edge(u, v)) continue;
                BipartiteGraph host = g0.with_edge(u, v);
                for (const auto& t : enumerate_trees(3, 3).members) {
                    Embedding e = constructive_embed_balanced(host, t);
                    CHECK(verify_certificate(host, t, e));
                }
            }
        }
    }
    SUBCASE("matching-free K_{4,4} variant") {
        BipartiteGraph host = BipartiteGraph::from_rows(
            4, 4, {0b1110ULL, 0b1101ULL, 0b1011ULL, 0b1111ULL});  // e = 13, no uniform side
        for (const auto& t : enumerate_trees(4, 4).members) {
            Embedding e = constructive_embed_balanced(host, t);
            CHECK(verify_certificate(host, t, e));
        }
    }
    SUBCASE("complete host") {
        BipartiteGraph host = BipartiteGraph::complete(4, 4);
        for (const auto& t : enumerate_trees(4, 4).members) {
            CHECK(verify_certificate(host, t, constructive_embed_balanced(host, t)));
        }
    }
    SUBCASE("contract violations are named") {
        BipartiteGraph uniform = make_regular_bipartite(3, 2);
        CHECK_THROWS_WITH_AS(constructive_embed_balanced(uniform, make_double_star(3, 3)),
                             doctest::Contains("uniformly"), contract_error);
        BipartiteGraph sparse(3, 3, std::vector<std::pair<int, int>>{{0, 0}});
        CHECK_THROWS_WITH_AS(constructive_embed_balanced(sparse, make_double_star(3, 3)),
                             doctest::Contains("edges"), contract_error);
    }
}

TEST_CASE("constructive unbalanced embedding") {
    SUBCASE("K_{4,3} minus one edge") {
        BipartiteGraph host = BipartiteGraph::from_rows(4, 3, {0b110ULL, 0b111ULL, 0b111ULL, 0b111ULL});
        for (const auto& t : enumerate_trees(4, 3).members) {
            Embedding e = constructive_embed_unbalanced(host, t);
            CHECK(verify_certificate(host, t, e));
        }
    }
    SUBCASE("complete hosts") {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 4}, {5, 1}}) {
            BipartiteGraph host = BipartiteGraph::complete(n, m);
            for (const auto& t : enumerate_trees(n, m).members) {
                CHECK(verify_certificate(host, t, constructive_embed_unbalanced(host, t)));
            }
        }
    }
    SUBCASE("a host whose reduction can land on an excluded shape") {
        // d(v) = (2,3,4), one degree-3 row; the straightforward deletion can
        // leave a degree-uniform remainder, so the fallback pair must kick in.
        BipartiteGraph host =
            BipartiteGraph(4, 3, std::vector<std::pair<int, int>>{
                                     {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 1}, {2, 2},
                                     {3, 1}, {3, 2}});
        REQUIRE(host.edge_count() == 9);
        for (const auto& t : enumerate_trees(4, 3).members) {
            Embedding e = constructive_embed_unbalanced(host, t);
            CHECK(verify_certificate(host, t, e));
        }
    }
    SUBCASE("the excluded degree families are rejected by name") {
        std::vector<std::uint64_t> uniform_rows(5, (1ULL << 4) - 1);
        uniform_rows[0] = 0;
        BipartiteGraph uniform = BipartiteGraph::from_rows(5, 4, std::move(uniform_rows));
        CHECK_THROWS_WITH_AS(
            constructive_embed_unbalanced(uniform, enumerate_trees(5, 4).members.front()),
            doctest::Contains("uniformly"), contract_error);

        std::vector<std::uint64_t> pendant_rows(5, ((1ULL << 4) - 1) & ~1ULL);
        pendant_rows[0] = (1ULL << 4) - 1;
        BipartiteGraph pendant = BipartiteGraph::from_rows(5, 4, std::move(pendant_rows));
        CHECK_THROWS_WITH_AS(
            constructive_embed_unbalanced(pendant, enumerate_trees(5, 4).members.front()),
            doctest::Contains("(1, n, ..., n)"), contract_error);
    }
}
