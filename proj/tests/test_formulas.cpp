#include <doctest.h>

#include <random>

#include "bitree/embed.hpp"
#include "bitree/formulas.hpp"
#include "oracles.hpp"

using namespace bitree;

TEST_CASE("family formula values") {
    auto val = [](int n, int m, int k, int l) { return ex_formula(n, m, k, l); };
    CHECK(val(3, 3, 3, 3).value == 6);
    CHECK(val(3, 3, 3, 3).status == ExStatus::Proven);
    CHECK(val(4, 4, 3, 3).value == 9);
    CHECK(val(4, 4, 3, 3).case_label == "Thm1.7 n=m=4");
    CHECK(val(7, 3, 4, 2).value == 10);
    CHECK(val(6, 2, 3, 2).value == 7);
    CHECK(val(5, 4, 3, 2).value == 8);
    CHECK(val(5, 5, 3, 3).value == 12);
    CHECK(val(9, 4, 2, 2).value == 11);  // k = 2 gives n + m - 2

    SUBCASE("orientation is normalized and recorded") {
        ExValue v = val(3, 7, 2, 4);
        CHECK(v.value == val(7, 3, 4, 2).value);
        CHECK(v.case_label.find("transposed") != std::string::npos);
    }
    SUBCASE("uncovered parameters are Unknown") {
        CHECK(val(4, 4, 5, 2).status == ExStatus::Unknown);   // k > n
        CHECK(val(10, 1, 3, 2).status == ExStatus::Unknown);  // no tree fits
        CHECK(val(7, 5, 4, 3).status == ExStatus::Unknown);   // no covering case or guard
    }
    SUBCASE("bad parameters throw") { CHECK_THROWS_AS(val(0, 1, 1, 1), contract_error); }
}

TEST_CASE("path formula values") {
    CHECK(ex_path(6, 5, 6).value == 14);
    CHECK(ex_path(6, 2, 6).value == 12);
    CHECK(ex_path(6, 3, 6).value == 12);
    CHECK(ex_path(6, 5, 6).status == ExStatus::Proven);
    CHECK(ex_path(6, 5, 7).status == ExStatus::Unknown);
    CHECK_THROWS_AS(ex_path(4, 4, 2), contract_error);
}

TEST_CASE("conjecture guard values") {
    auto c1 = conjecture_value(8, 6, 3, 3);
    REQUIRE(c1.has_value());
    CHECK(c1->value == 20);
    CHECK(c1->value == ex_formula(8, 6, 3, 3).value);  // matches the proven (3,3) value

    auto c2 = conjecture_value(9, 5, 5, 2);
    REQUIRE(c2.has_value());
    CHECK(c2->value == 21);
    CHECK(c2->value == ex_formula(9, 5, 5, 2).value);

    auto c3 = conjecture_value(7, 6, 5, 2);
    REQUIRE(c3.has_value());
    CHECK(c3->value == 24);
    CHECK(c3->status == ExStatus::Conjectured);

    CHECK(!conjecture_value(7, 5, 4, 3).has_value());
}

TEST_CASE("conjecture agrees with every proven value it covers") {
    for (int l = 2; l <= 3; ++l) {
        for (int k = l; k <= 6; ++k) {
            for (int m = l; m <= 8; ++m) {
                for (int n = std::max(m, k); n <= 10; ++n) {
                    auto conj = conjecture_value(n, m, k, l);
                    if (!conj) continue;
                    ExValue proven = ex_formula(n, m, k, l);
                    if (proven.status != ExStatus::Proven) continue;
                    CHECK(conj->value == proven.value);
                }
            }
        }
    }
}

TEST_CASE("the two shapes of the sparse-host value agree") {
    // (k-1)(m-1)+n-m+1 and (k-2)(m-1)+n are the same number.
    std::mt19937 rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        long long n = 1 + rng() % 50, m = 1 + rng() % 50, k = 1 + rng() % 50;
        CHECK((k - 1) * (m - 1) + n - m + 1 == (k - 2) * (m - 1) + n);
    }
}

TEST_CASE("case boundaries coincide") {
    for (int k = 3; k <= 7; ++k) {
        const int boundary = (3 * k) / 2 - 1;
        CHECK(ex_formula(boundary, 2, k, 2).value == 2 * (k - 1));
        CHECK(boundary + (k + 1) / 2 - 1 == 2 * (k - 1));
    }
    // Thm1.6(3) boundary between the two branches at n = 2k-1 vs 2k-2.
    for (int k = 3; k <= 5; ++k) {
        for (int m = 3; m <= k; ++m) {
            CHECK(ex_formula(2 * k - 1, m, k, 2).value == (m - 2) * (k - 1) + 2 * k - 1);
            CHECK(ex_formula(2 * k - 2, m, k, 2).value == m * (k - 1));
        }
    }
}

TEST_CASE("regular circulant") {
    BipartiteGraph g = make_regular_bipartite(5, 2);
    CHECK(g.edge_count() == 10);
    for (int u = 0; u < 5; ++u) CHECK(g.degree_u(u) == 2);
    for (int v = 0; v < 5; ++v) CHECK(g.degree_v(v) == 2);
    CHECK(make_regular_bipartite(4, 4) == BipartiteGraph::complete(4, 4));
    CHECK_THROWS_AS(make_regular_bipartite(4, 5), contract_error);

    SUBCASE("3-regular half of a sparse-host extremal graph avoids T_{4,2}") {
        BipartiteGraph host =
            make_regular_bipartite(6, 3).disjoint_union(BipartiteGraph::complete(4, 1));
        CHECK(host.n() == 10);
        CHECK(host.m() == 7);
        CHECK(host.edge_count() == ex_formula(10, 7, 4, 2).value);
        CHECK(!contains_all(host, enumerate_trees(4, 2)).all);
    }
}

TEST_CASE("named figure graphs are pinned by their uniqueness scans") {
    const BipartiteGraph& g0 = graph_g0();
    CHECK(g0.edge_count() == 6);
    CHECK(degree_sequence(g0, Side::U).degrees == std::vector<int>{1, 2, 3});
    CHECK(degree_sequence(g0, Side::V).degrees == std::vector<int>{1, 2, 3});
    CHECK(canonical_key(parse_bmat(serialize_bmat(g0))) == canonical_key(g0));

    CHECK(graph_g1_prime().edge_count() == 9);
    CHECK(graph_g2_prime().edge_count() == 10);
    CHECK(graph_g3_prime().edge_count() == 12);
    CHECK(is_connected(graph_g3_prime()));

    // The three (3,3) trees are the double star, the path, and one more.
    CHECK(canonical_key(tree_g1().graph(), true) !=
          canonical_key(tree_g2().graph(), true));
    CHECK(canonical_key(tree_g2().graph(), true) !=
          canonical_key(tree_g3().graph(), true));
    CHECK(pendant_count(tree_g1(), Side::U) + pendant_count(tree_g1(), Side::V) == 4);
}

TEST_CASE("catalog soundness at desk scale") {
    // Every catalog member has the extremal edge count and misses a tree.
    std::vector<std::array<int, 4>> params{{4, 4, 4, 4},  {5, 4, 5, 4}, {7, 3, 7, 3},
                                           {6, 2, 3, 2},  {4, 2, 3, 2}, {7, 3, 4, 2},
                                           {6, 3, 4, 2},  {6, 6, 3, 2}, {9, 5, 3, 2},
                                           {6, 5, 3, 2},  {5, 2, 2, 2}, {6, 4, 2, 2}, {5, 4, 3, 2}, {7, 4, 3, 2}, {4, 3, 3, 2},
                                           {4, 4, 3, 3},  {5, 4, 3, 3}, {6, 3, 3, 3},
                                           {6, 6, 3, 3},  {5, 5, 3, 3}, {4, 1, 4, 1},
                                           {11, 3, 5, 2}, {8, 2, 5, 2}};
    for (auto [n, m, k, l] : params) {
        ExtremalCatalog cat = construct_extremal(n, m, k, l);
        REQUIRE(cat.supported);
        CHECK(cat.value == ex_formula(n, m, k, l).value);
        TreeFamily fam = enumerate_trees(k, l);
        for (const auto& entry : cat.entries) {
            CAPTURE(n);
            CAPTURE(m);
            CAPTURE(k);
            CAPTURE(l);
            CAPTURE(entry.family);
            CHECK(entry.graph.n() == n);
            CHECK(entry.graph.m() == m);
            CHECK(entry.graph.edge_count() == cat.value);
            CHECK(!contains_all(entry.graph, fam).all);
        }
    }
    SUBCASE("specific members named by the characterizations") {
        ExtremalCatalog c1 = construct_extremal(7, 3, 4, 2);
        bool has_split = false;
        const CanonicalKey split = canonical_key(
            BipartiteGraph::complete(3, 2).disjoint_union(BipartiteGraph::complete(4, 1)));
        for (const auto& e : c1.entries) {
            if (canonical_key(e.graph) == split) has_split = true;
        }
        CHECK(has_split);

        ExtremalCatalog c2 = construct_extremal(6, 6, 3, 2);
        REQUIRE(c2.entries.size() == 1);
        CHECK(canonical_key(c2.entries[0].graph) == canonical_key(make_regular_bipartite(6, 2)));

        ExtremalCatalog c3 = construct_extremal(4, 4, 3, 3);
        REQUIRE(c3.entries.size() == 1);
        CHECK(canonical_key(c3.entries[0].graph) == canonical_key(graph_g1_prime()));

        ExtremalCatalog c4 = construct_extremal(6, 6, 3, 3);
        REQUIRE(c4.entries.size() == 1);
        CHECK(canonical_key(c4.entries[0].graph) ==
              canonical_key(BipartiteGraph::complete(2, 4).disjoint_union(
                  BipartiteGraph::complete(4, 2))));
    }
    SUBCASE("uncharacterized parameters are reported unsupported") {
        CHECK(!construct_extremal(7, 5, 4, 3).supported);
        CHECK(!construct_extremal(4, 4, 5, 2).supported);
    }
}
