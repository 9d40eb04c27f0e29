#include "bitree/formulas.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "bitree/embed.hpp"
#include "stratum_scan.hpp"

namespace bitree {

namespace {

void check_positive(int n, int m, int k, int l) {
    if (n < 1 || m < 1 || k < 1 || l < 1) {
        throw contract_error("parameters must be positive, got (" + std::to_string(n) + "," +
                             std::to_string(m) + "," + std::to_string(k) + "," +
                             std::to_string(l) + ")");
    }
}

struct Params {
    int n, m, k, l;
    bool flipped;
};

// The value is orientation-free (containment admits both embeddings), so the
// host and the tree family are normalized to n >= m, k >= l.
Params normalize(int n, int m, int k, int l) {
    Params p{n, m, k, l, false};
    if (p.n < p.m) {
        std::swap(p.n, p.m);
        p.flipped = true;
    }
    if (p.k < p.l) {
        std::swap(p.k, p.l);
        p.flipped = true;
    }
    return p;
}

ExValue proven(long long value, std::string label, bool flipped) {
    if (flipped) label += " (transposed input)";
    return ExValue{value, ExStatus::Proven, std::move(label)};
}

int ceil_half(int k) { return (k + 1) / 2; }

}  // namespace

ExValue ex_formula(int n, int m, int k, int l) {
    check_positive(n, m, k, l);
    const Params p = normalize(n, m, k, l);

    if (p.k == p.n && p.l == p.m) {
        return proven(static_cast<long long>(p.n - 1) * p.m, "Thm1.5", p.flipped);
    }

    if (p.l == 2) {
        if (p.k > p.n || p.m < 2) return ExValue{-1, ExStatus::Unknown, "uncovered"};
        if (p.k == 2) {
            return proven(p.n + p.m - 2, "Thm1.6(1) k=2", p.flipped);
        }
        if (p.m == 2) {
            const int boundary = (3 * p.k) / 2 - 1;
            if (p.n >= boundary) {
                return proven(p.n + ceil_half(p.k) - 1, "Thm1.6(2) n>=floor(3k/2)-1", p.flipped);
            }
            return proven(2LL * (p.k - 1), "Thm1.6(2) n<floor(3k/2)-1", p.flipped);
        }
        if (p.m <= p.k) {
            if (p.n >= 2 * p.k - 1) {
                return proven(static_cast<long long>(p.m - 2) * (p.k - 1) + p.n,
                              "Thm1.6(3) n>=2k-1", p.flipped);
            }
            return proven(static_cast<long long>(p.m) * (p.k - 1), "Thm1.6(3) n<=2k-2", p.flipped);
        }
        // m >= k+1
        if (p.n - p.m >= p.k - 1) {
            return proven(static_cast<long long>(p.k - 1) * (p.m - 1) + p.n - p.m + 1,
                          "Thm1.6(4) n-m>=k-1", p.flipped);
        }
        return proven(static_cast<long long>(p.k - 1) * p.m, "Thm1.6(4) n-m<=k-2", p.flipped);
    }

    if (p.k == 3 && p.l == 3) {
        if (p.m <= 2) {
            return proven(static_cast<long long>(p.n) * p.m, "Lem4.1 m<=2", p.flipped);
        }
        if (p.n == 4 && p.m == 4) return proven(9, "Thm1.7 n=m=4", p.flipped);
        if (p.n >= 5 && p.m >= 5) {
            return proven(2LL * (p.n + p.m) - 8, "Thm1.7 n,m>=5", p.flipped);
        }
        return proven(2LL * p.n, "Thm1.7 2n", p.flipped);
    }

    if (auto conj = conjecture_value(n, m, k, l)) return *conj;
    return ExValue{-1, ExStatus::Unknown, "uncovered"};
}

ExValue ex_path(int n, int m, int path_len) {
    if (n < 1 || m < 1) throw contract_error("host sides must be positive");
    if (path_len < 4) throw contract_error("path extremal values start at P_4");
    bool flipped = false;
    if (n < m) {
        std::swap(n, m);
        flipped = true;
    }
    if (path_len % 2 != 0) {
        return ExValue{-1, ExStatus::Unknown, "odd path length not covered"};
    }
    const int l = path_len / 2;
    std::string suffix = flipped ? " (transposed input)" : "";
    if (m <= l - 1) {
        return ExValue{static_cast<long long>(n) * m, ExStatus::Proven, "Thm1.4 m<=l-1" + suffix};
    }
    if (m < 2 * (l - 1)) {
        return ExValue{static_cast<long long>(l - 1) * n, ExStatus::Proven,
                       "Thm1.4 l-1<m<2(l-1)" + suffix};
    }
    return ExValue{static_cast<long long>(l - 1) * (n + m - 2 * l + 2), ExStatus::Proven,
                   "Thm1.4 m>=2(l-1)" + suffix};
}

std::optional<ExValue> conjecture_value(int n, int m, int k, int l) {
    check_positive(n, m, k, l);
    const Params p = normalize(n, m, k, l);
    if (p.n < p.k || p.m < p.l) return std::nullopt;
    auto conj = [&](long long value, const char* label) {
        std::string text = label;
        if (p.flipped) text += " (transposed input)";
        return ExValue{value, ExStatus::Conjectured, std::move(text)};
    };
    if (p.k < 2 * p.l - 2 && p.m >= 2 * p.l) {
        return conj(static_cast<long long>(p.l - 1) * (p.n + p.m - 2 * p.l + 2), "Conj4.4(1)");
    }
    if (p.k >= 2 * p.l - 1 && p.m - p.l + 1 >= p.k - 1) {
        if (p.n - p.m + p.l - 1 >= p.k) {
            return conj(static_cast<long long>(p.k - 1) * (p.m - p.l + 1) +
                            static_cast<long long>(p.l - 1) * (p.n - p.m + p.l - 1),
                        "Conj4.4(2)");
        }
        return conj(static_cast<long long>(p.k - 1) * p.m, "Conj4.4(3)");
    }
    return std::nullopt;
}

BipartiteGraph make_regular_bipartite(int size, int degree) {
    if (size < 1) throw contract_error("regular graph needs size >= 1");
    if (degree < 0 || degree > size) throw contract_error("regular degree must be in [0, size]");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < degree; ++j) {
            rows[static_cast<std::size_t>(i)] |= 1ULL << ((i + j) % size);
        }
    }
    return BipartiteGraph::from_rows(size, size, std::move(rows));
}

// ---------------------------------------------------------------------------
// Named figure graphs, each pinned by a uniqueness statement and recovered by
// enumeration at its parameters.
// ---------------------------------------------------------------------------

namespace {

std::vector<BipartiteGraph> scan_classes(int n, int m, int edges,
                                         const std::function<bool(const BipartiteGraph&)>& pred) {
    detail::StratumScan scan(n, m);
    std::map<CanonicalKey, BipartiteGraph> found;
    scan.run(edges, [&](const std::vector<std::uint64_t>& rows) {
        BipartiteGraph g = BipartiteGraph::from_rows(n, m, rows);
        if (!pred(g)) return;
        found.emplace(canonical_key(g), g);
    });
    std::vector<BipartiteGraph> out;
    out.reserve(found.size());
    for (auto& [key, g] : found) out.push_back(std::move(g));
    return out;
}

bool avoids_family(const BipartiteGraph& g, const TreeFamily& fam) {
    return !contains_all(g, fam).all;
}

bool is_u_uniform(const BipartiteGraph& g, int d) {
    auto degs = g.u_degrees();
    return std::all_of(degs.begin(), degs.end(), [&](int x) { return x == d; });
}

}  // namespace

const BipartiteGraph& graph_g0() {
    static const BipartiteGraph g = [] {
        auto classes = scan_classes(3, 3, 6, [](const BipartiteGraph& h) {
            auto du = h.u_degrees();
            auto dv = h.v_degrees();
            return *std::max_element(du.begin(), du.end()) == 3 &&
                   *std::max_element(dv.begin(), dv.end()) == 3;
        });
        if (classes.size() != 1) throw std::logic_error("expected a unique (3,3) apex graph");
        return classes.front();
    }();
    return g;
}

const BipartiteTree& tree_g1() {
    static const BipartiteTree t = make_double_star(3, 3);
    return t;
}

const BipartiteTree& tree_g3() {
    static const BipartiteTree t = make_path(6);
    return t;
}

const BipartiteTree& tree_g2() {
    static const BipartiteTree t = [] {
        TreeFamily fam = enumerate_trees(3, 3);
        if (fam.members.size() != 3) throw std::logic_error("expected three (3,3) trees");
        const CanonicalKey k1 = canonical_key(tree_g1().graph(), true);
        const CanonicalKey k3 = canonical_key(tree_g3().graph(), true);
        for (std::size_t i = 0; i < fam.members.size(); ++i) {
            if (fam.keys[i] != k1 && fam.keys[i] != k3) return fam.members[i];
        }
        throw std::logic_error("third (3,3) tree not found");
    }();
    return t;
}

const BipartiteGraph& graph_g1_prime() {
    static const BipartiteGraph g = [] {
        TreeFamily fam = enumerate_trees(3, 3);
        auto classes = scan_classes(4, 4, 9,
                                    [&](const BipartiteGraph& h) { return avoids_family(h, fam); });
        if (classes.size() != 1) throw std::logic_error("expected a unique (4,4) extremal class");
        return classes.front();
    }();
    return g;
}

const BipartiteGraph& graph_g2_prime() {
    static const BipartiteGraph g = [] {
        TreeFamily fam = enumerate_trees(3, 3);
        auto classes = scan_classes(5, 4, 10, [&](const BipartiteGraph& h) {
            return avoids_family(h, fam) && !is_u_uniform(h, 2);
        });
        if (classes.size() != 1) {
            throw std::logic_error("expected a unique non-uniform (5,4) extremal class");
        }
        return classes.front();
    }();
    return g;
}

const BipartiteGraph& graph_g3_prime() {
    static const BipartiteGraph g = [] {
        const CanonicalKey split_key =
            canonical_key(BipartiteGraph::complete(2, 3).disjoint_union(BipartiteGraph::complete(3, 2)));
        TreeMatcher matcher(tree_g1());
        auto classes = scan_classes(5, 5, 12, [&](const BipartiteGraph& h) {
            return !matcher.embeds_any(h.rows(), 5, 5) && canonical_key(h) != split_key;
        });
        if (classes.size() != 1) {
            throw std::logic_error("expected a unique connected (5,5) extremal class");
        }
        return classes.front();
    }();
    return g;
}

// ---------------------------------------------------------------------------
// Extremal catalogs
// ---------------------------------------------------------------------------

namespace {

BipartiteGraph rep_v_uniform_drop_one(int n, int m) {
    // Every V-vertex misses u_0.
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), (1ULL << m) - 1);
    rows[0] = 0;
    return BipartiteGraph::from_rows(n, m, std::move(rows));
}

BipartiteGraph rep_v_regular_round_robin(int n, int m, int d) {
    // All V-degrees d, U-degrees spread evenly (hence <= d whenever m <= n).
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    int next = 0;
    for (int v = 0; v < m; ++v) {
        for (int i = 0; i < d; ++i) {
            rows[static_cast<std::size_t>(next)] |= 1ULL << v;
            next = (next + 1) % n;
        }
    }
    return BipartiteGraph::from_rows(n, m, std::move(rows));
}

BipartiteGraph rep_u_uniform2(int n, int m) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        rows[static_cast<std::size_t>(u)] =
            (1ULL << ((2 * u) % m)) | (1ULL << ((2 * u + 1) % m));
    }
    return BipartiteGraph::from_rows(n, m, std::move(rows));
}

BipartiteGraph two_v_centers(int n, int d0, int d1, int overlap) {
    // (n,2) graph with column degrees d0, d1 overlapping in `overlap` vertices.
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < d0; ++i) rows[static_cast<std::size_t>(i)] |= 1ULL;
    for (int i = d0 - overlap; i < d0 - overlap + d1; ++i) {
        rows[static_cast<std::size_t>(i)] |= 2ULL;
    }
    return BipartiteGraph::from_rows(n, 2, std::move(rows));
}

BipartiteGraph three_v_family(int n, int c) {
    // V-degrees (c, c, n) with the two small neighborhoods disjoint.
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 4ULL);
    for (int i = 0; i < c; ++i) rows[static_cast<std::size_t>(i)] |= 1ULL;
    for (int i = c; i < 2 * c; ++i) rows[static_cast<std::size_t>(i)] |= 2ULL;
    return BipartiteGraph::from_rows(n, 3, std::move(rows));
}

void add(ExtremalCatalog& cat, BipartiteGraph g, std::string family, bool symbolic) {
    cat.entries.push_back(CatalogEntry{std::move(g), std::move(family), symbolic});
}

// For k = 3 the avoiders of the 5-vertex path include every union of one
// double star with complete (2,2) blocks; exhaustive search shows the degree
// families alone do not cover these once m > 3. Emitted alongside the stated
// families so the catalog matches the verified extremal sets.
void add_double_star_unions(ExtremalCatalog& cat, int n, int m) {
    for (int j = 1; 2 * j < m; ++j) {
        BipartiteGraph g = make_double_star(n - 2 * j, m - 2 * j).graph();
        for (int i = 0; i < j; ++i) g = g.disjoint_union(BipartiteGraph::complete(2, 2));
        add(cat, std::move(g),
            "double star S_{" + std::to_string(n - 2 * j) + "," + std::to_string(m - 2 * j) +
                "} + " + std::to_string(j) + " K_{2,2}",
            false);
    }
}

}  // namespace

ExtremalCatalog construct_extremal(int n, int m, int k, int l) {
    check_positive(n, m, k, l);
    const Params p = normalize(n, m, k, l);
    ExtremalCatalog cat;
    const ExValue val = ex_formula(p.n, p.m, p.k, p.l);
    cat.value = val.value;

    if (p.k == p.n && p.l == p.m) {
        cat.supported = true;
        cat.complete = true;
        if (p.n == p.m) {
            add(cat, rep_v_uniform_drop_one(p.n, p.m).transposed(), "U-degrees all n-1", true);
            add(cat, rep_v_uniform_drop_one(p.n, p.m), "V-degrees all n-1", true);
        } else if (p.n == p.m + 1) {
            add(cat, rep_v_uniform_drop_one(p.n, p.m), "V-degrees all n-1", true);
            std::vector<std::uint64_t> rows(static_cast<std::size_t>(p.n),
                                            ((1ULL << p.m) - 1) & ~1ULL);
            rows[0] = (1ULL << p.m) - 1;
            add(cat, BipartiteGraph::from_rows(p.n, p.m, std::move(rows)),
                "V-degrees (1, n, ..., n)", false);
        } else {
            add(cat, rep_v_uniform_drop_one(p.n, p.m), "V-degrees all n-1", true);
        }
        return cat;
    }

    if (p.l == 2) {
        if (p.k > p.n || p.m < 2) return cat;  // unsupported
        cat.supported = true;
        cat.complete = true;
        if (p.k == 2) {
            if (p.m == 2) {
                for (int q = 0; q <= p.n / 2; ++q) {
                    add(cat, two_v_centers(p.n, q, p.n - q, 0),
                        "two V-centered stars K_{1," + std::to_string(q) + "} + K_{1," +
                            std::to_string(p.n - q) + "}",
                        false);
                }
            } else {
                BipartiteGraph star_v = BipartiteGraph::complete(p.n - 1, 1);   // V-center
                BipartiteGraph star_u = BipartiteGraph::complete(1, p.m - 1);   // U-center
                add(cat, star_v.disjoint_union(star_u), "K_{1,n-1} + K_{1,m-1}", false);
            }
            return cat;
        }
        if (p.m == 2) {
            const int boundary = (3 * p.k) / 2 - 1;
            const int c = ceil_half(p.k) - 1;
            if (p.n >= boundary) {
                add(cat, two_v_centers(p.n, p.n, c, c), "V-degrees (n, ceil(k/2)-1)", false);
            }
            if (p.n <= boundary) {
                const int t0 = std::max(0, 2 * (p.k - 1) - p.n);
                add(cat, two_v_centers(p.n, p.k - 1, p.k - 1, t0), "V-degrees (k-1, k-1)", true);
            }
            return cat;
        }
        if (p.n == p.m) {
            add(cat, make_regular_bipartite(p.n, p.k - 1), "(k-1)-regular", true);
            return cat;
        }
        if (p.m <= p.k) {
            if (p.n >= 2 * p.k - 1) {
                add(cat,
                    BipartiteGraph::complete(p.k - 1, p.m - 1)
                        .disjoint_union(BipartiteGraph::complete(p.n - p.k + 1, 1)),
                    "K_{k-1,m-1} + K_{n-k+1,1}", false);
                if (p.m == 3 && p.k == 3) {
                    add(cat, make_double_star(p.n, 3).graph(), "double star S_{n,3}", false);
                }
                if (p.m == 3 && p.k >= 5 && p.k % 2 == 1) {
                    add(cat, three_v_family(p.n, ceil_half(p.k) - 1),
                        "V-degrees (ceil(k/2)-1, ceil(k/2)-1, n)", true);
                }
            } else {
                add(cat, rep_v_regular_round_robin(p.n, p.m, p.k - 1),
                    "V-degrees all k-1, U-degrees <= k-1", true);
                if (p.m == 3 && p.k == 3 && p.n == 4) {
                    add(cat, make_double_star(4, 3).graph(), "double star S_{4,3}", false);
                }
                if (p.m == 3 && p.k >= 5 && p.k % 2 == 1 && p.n == 2 * p.k - 2) {
                    add(cat, three_v_family(p.n, ceil_half(p.k) - 1),
                        "V-degrees (ceil(k/2)-1, ceil(k/2)-1, n)", true);
                }
            }
            return cat;
        }
        // m >= k+1
        if (p.n - p.m >= p.k - 1) {
            add(cat,
                make_regular_bipartite(p.m - 1, p.k - 1)
                    .disjoint_union(BipartiteGraph::complete(p.n - p.m + 1, 1)),
                "(k-1)-regular on (m-1,m-1) + K_{1,n-m+1}", true);
            if (p.k == 3) {
                add(cat, make_double_star(p.n, p.m).graph(), "double star S_{n,m}", false);
                add_double_star_unions(cat, p.n, p.m);
            }
        } else {
            add(cat, rep_v_regular_round_robin(p.n, p.m, p.k - 1),
                "V-degrees all k-1, U-degrees <= k-1", true);
            if (p.k == 3 && p.n == p.m + 1) {
                add(cat, make_double_star(p.n, p.m).graph(), "double star S_{m+1,m}", false);
                add_double_star_unions(cat, p.n, p.m);
            }
        }
        return cat;
    }

    if (p.k == 3 && p.l == 3) {
        cat.supported = true;
        cat.complete = true;
        if (p.m <= 2) {
            add(cat, BipartiteGraph::complete(p.n, p.m), "K_{n,m}", false);
        } else if (p.n == 4 && p.m == 4) {
            add(cat, graph_g1_prime(), "G1'", false);
        } else if (p.n == 5 && p.m == 4) {
            add(cat, rep_u_uniform2(p.n, p.m), "U-degrees all 2", true);
            add(cat, graph_g2_prime(), "G2'", false);
        } else if (p.m <= 4) {
            add(cat, rep_u_uniform2(p.n, p.m), "U-degrees all 2", true);
        } else {
            add(cat,
                BipartiteGraph::complete(2, p.m - 2)
                    .disjoint_union(BipartiteGraph::complete(p.n - 2, 2)),
                "K_{2,n-2} + K_{2,m-2}", false);
            if (p.n == 5 && p.m == 5) add(cat, graph_g3_prime(), "G3'", false);
        }
        return cat;
    }

    return cat;  // unsupported
}

}  // namespace bitree
