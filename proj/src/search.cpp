#include "bitree/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "bitree/hamilton.hpp"
#include "stratum_scan.hpp"

namespace bitree {

void SearchBudget::validate() const {
    if (max_labeled_graphs == 0) throw contract_error("budget needs max_labeled_graphs >= 1");
    if (max_seconds <= 0) throw contract_error("budget needs a positive time limit");
    if (workers < 0) throw contract_error("budget needs a nonnegative worker count");
}

int SearchBudget::resolved_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(4u, std::max(1u, hw)));
}

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::Thm1_4: return "Thm1.4";
        case TheoremId::Thm1_5: return "Thm1.5";
        case TheoremId::Thm1_6: return "Thm1.6";
        case TheoremId::Thm1_7: return "Thm1.7";
        case TheoremId::Lem2_2: return "Lem2.2";
        case TheoremId::Lem3_5: return "Lem3.5";
        case TheoremId::Lem4_2: return "Lem4.2";
    }
    return "?";
}

std::optional<TheoremId> theorem_from_name(const std::string& name) {
    for (TheoremId id : {TheoremId::Thm1_4, TheoremId::Thm1_5, TheoremId::Thm1_6,
                         TheoremId::Thm1_7, TheoremId::Lem2_2, TheoremId::Lem3_5,
                         TheoremId::Lem4_2}) {
        if (theorem_name(id) == name) return id;
    }
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;
using RowVec = std::vector<std::uint64_t>;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Columns are always the smaller side so the enumeration stays compact; reps
// are transposed back before canonicalization when flipped.
struct ScanSetup {
    int N, M;
    bool flipped;
};

ScanSetup scan_setup(int n, int m) {
    return (m <= n) ? ScanSetup{n, m, false} : ScanSetup{m, n, true};
}

using FailsFn = std::function<bool(const RowVec&, int, int)>;

// All failing representatives in a stratum. Workers own disjoint first-row
// branches; results are flattened in branch order, so the output does not
// depend on scheduling.
std::vector<RowVec> stratum_failures(const detail::StratumScan& scan, int e, int workers,
                                     const FailsFn& fails) {
    const auto firsts = scan.first_values(e);
    std::vector<std::vector<RowVec>> slots(firsts.size());
    if (workers <= 1 || firsts.size() <= 1) {
        for (std::size_t i = 0; i < firsts.size(); ++i) {
            scan.run_from(e, firsts[i], [&](const RowVec& rows) {
                if (fails(rows, scan.n(), scan.m())) slots[i].push_back(rows);
            });
        }
    } else {
        const int w = std::min<std::size_t>(static_cast<std::size_t>(workers), firsts.size());
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
        std::vector<std::thread> pool;
        for (int t = 0; t < w; ++t) {
            pool.emplace_back([&, t]() {
                try {
                    for (std::size_t i = static_cast<std::size_t>(t); i < firsts.size();
                         i += static_cast<std::size_t>(w)) {
                        scan.run_from(e, firsts[i], [&](const RowVec& rows) {
                            if (fails(rows, scan.n(), scan.m())) slots[i].push_back(rows);
                        });
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    std::vector<RowVec> out;
    for (auto& s : slots) {
        for (auto& r : s) out.push_back(std::move(r));
    }
    return out;
}

// Quick acceptance filter for T_{k,2} families: two vertices on one side with
// degrees at least ceil(k/2) and k sharing a neighbor force containment of
// the whole family (in the orientation where that side hosts the centers).
bool prop32_contains_all(const RowVec& rows, int N, int M, int k) {
    const int need_lo = (k + 1) / 2;
    const int need_hi = k;
    if (k <= N) {
        std::vector<std::uint64_t> cols(static_cast<std::size_t>(M), 0);
        for (int u = 0; u < N; ++u) {
            std::uint64_t r = rows[static_cast<std::size_t>(u)];
            while (r) {
                int v = std::countr_zero(r);
                r &= r - 1;
                cols[static_cast<std::size_t>(v)] |= 1ULL << u;
            }
        }
        for (int i = 0; i < M; ++i) {
            const int di = std::popcount(cols[static_cast<std::size_t>(i)]);
            if (di < need_lo) continue;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                const int dj = std::popcount(cols[static_cast<std::size_t>(j)]);
                if (dj < need_hi) continue;
                if (cols[static_cast<std::size_t>(i)] & cols[static_cast<std::size_t>(j)]) {
                    return true;
                }
            }
        }
    }
    if (k <= M) {
        for (int i = 0; i < N; ++i) {
            const int di = std::popcount(rows[static_cast<std::size_t>(i)]);
            if (di < need_lo) continue;
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                const int dj = std::popcount(rows[static_cast<std::size_t>(j)]);
                if (dj < need_hi) continue;
                if (rows[static_cast<std::size_t>(i)] & rows[static_cast<std::size_t>(j)]) {
                    return true;
                }
            }
        }
    }
    return false;
}

BruteResult brute_core(int n, int m, const FailsFn& fails, std::optional<ExValue> formula,
                       ExtremalRecord base, const SearchBudget& budget) {
    budget.validate();
    const auto start = Clock::now();
    const long long bits = static_cast<long long>(n) * m;
    if (bits > 62 || (1ULL << bits) > budget.max_labeled_graphs) {
        throw budget_error("labeled graph space 2^" + std::to_string(bits) +
                               " exceeds the graph budget",
                           n * m, n * m);
    }

    const ScanSetup s = scan_setup(n, m);
    detail::StratumScan scan(s.N, s.M);
    const int workers = budget.resolved_workers();

    for (int e = n * m; e >= 0; --e) {
        if (ms_since(start) > budget.max_seconds * 1000.0) {
            throw budget_error("time budget exhausted; strata above " + std::to_string(e) +
                                   " are clean, so ex <= " + std::to_string(e),
                               e, e);
        }
        auto failures = stratum_failures(scan, e, workers, fails);
        if (failures.empty()) continue;

        std::map<std::string, BipartiteGraph> classes;
        for (auto& rows : failures) {
            BipartiteGraph g = BipartiteGraph::from_rows(s.N, s.M, std::move(rows));
            if (s.flipped) g = g.transposed();
            std::string key = canonical_key(g).hex();
            classes.emplace(std::move(key), std::move(g));
        }
        std::set<std::string> merged;
        for (const auto& [key, g] : classes) merged.insert(canonical_key(g, true).hex());

        BruteResult result;
        result.record = std::move(base);
        result.record.n = n;
        result.record.m = m;
        result.record.ex = e;
        for (auto& [key, g] : classes) {
            result.record.extremal_keys.push_back(key);
            result.extremal_reps.push_back(std::move(g));
        }
        result.record.extremal_keys_merged.assign(merged.begin(), merged.end());
        result.record.formula = std::move(formula);
        result.record.agreement =
            result.record.formula.has_value()
                ? (result.record.formula->value == e ? Agreement::Match : Agreement::Mismatch)
                : Agreement::NoFormula;
        result.record.elapsed_ms = ms_since(start);
        result.record.method_version = kMethodVersion;
        return result;
    }
    throw std::logic_error("no stratum contained an avoider; empty tree family?");
}

std::optional<ExValue> single_tree_formula(int n, int m, const BipartiteTree& tree) {
    const auto degs_u = tree.graph().u_degrees();
    const auto degs_v = tree.graph().v_degrees();
    const int maxdeg = std::max(*std::max_element(degs_u.begin(), degs_u.end()),
                                *std::max_element(degs_v.begin(), degs_v.end()));
    const int p = tree.k() + tree.l();
    if (maxdeg <= 2 && p >= 4 && p % 2 == 0) {
        ExValue v = ex_path(n, m, p);
        if (v.status != ExStatus::Unknown) return v;
        return std::nullopt;
    }
    if (tree.k() == 3 && tree.l() == 3 && std::min(n, m) >= 5 &&
        canonical_key(tree.graph(), true) == canonical_key(tree_g1().graph(), true)) {
        return ExValue{2LL * (n + m) - 8, ExStatus::Proven, "Lem4.2"};
    }
    return std::nullopt;
}

}  // namespace

BruteResult ex_bruteforce(int n, int m, const TreeFamily& family, const SearchBudget& budget) {
    if (n < 1 || m < 1) throw contract_error("host sides must be positive");
    FamilyMatcher matcher(family);
    const int k = family.k;
    const bool prune = budget.prop32_prune && family.l == 2;
    FailsFn fails = [&matcher, k, prune](const RowVec& rows, int N, int M) {
        if (prune && prop32_contains_all(rows, N, M, k)) return false;
        return matcher.first_missing(rows, N, M) >= 0;
    };
    ExtremalRecord base;
    base.k = family.k;
    base.l = family.l;
    std::optional<ExValue> formula;
    ExValue v = ex_formula(n, m, family.k, family.l);
    if (v.status != ExStatus::Unknown) formula = v;
    return brute_core(n, m, fails, std::move(formula), std::move(base), budget);
}

BruteResult ex_bruteforce_single(int n, int m, const BipartiteTree& tree,
                                 const SearchBudget& budget) {
    if (n < 1 || m < 1) throw contract_error("host sides must be positive");
    TreeMatcher matcher(tree);
    FailsFn fails = [&matcher](const RowVec& rows, int N, int M) {
        return !matcher.embeds_any(rows, N, M);
    };
    ExtremalRecord base;
    base.k = tree.k();
    base.l = tree.l();
    base.tree_key = canonical_key(tree.graph(), tree.k() == tree.l()).hex();
    return brute_core(n, m, fails, single_tree_formula(n, m, tree), std::move(base), budget);
}

// ---------------------------------------------------------------------------
// Characterization predicates
// ---------------------------------------------------------------------------

namespace {

bool uniform(const std::vector<int>& degs, int d) {
    return std::all_of(degs.begin(), degs.end(), [&](int x) { return x == d; });
}

bool max_at_most(const std::vector<int>& degs, int d) {
    return std::all_of(degs.begin(), degs.end(), [&](int x) { return x <= d; });
}

bool sorted_v_equals(const BipartiteGraph& g, std::vector<int> expect) {
    auto degs = g.v_degrees();
    std::sort(degs.begin(), degs.end());
    std::sort(expect.begin(), expect.end());
    return degs == expect;
}

bool same_class(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n() == b.n() && a.m() == b.m() && canonical_key(a) == canonical_key(b);
}

// Two components, each a star (one center, possibly bare).
bool is_two_star_forest(const BipartiteGraph& g) {
    auto comps = components(g);
    if (comps.size() != 2) return false;
    auto du = g.u_degrees();
    auto dv = g.v_degrees();
    for (const auto& c : comps) {
        int vertices = static_cast<int>(c.us.size() + c.vs.size());
        int centers = 0;
        long long edge_ends = 0;
        for (int u : c.us) {
            edge_ends += du[static_cast<std::size_t>(u)];
            if (du[static_cast<std::size_t>(u)] >= 2) centers++;
        }
        for (int v : c.vs) {
            edge_ends += dv[static_cast<std::size_t>(v)];
            if (dv[static_cast<std::size_t>(v)] >= 2) centers++;
        }
        if (centers > 1) return false;
        if (edge_ends != 2LL * (vertices - 1)) return false;  // spanning tree of the component
    }
    return true;
}

// One star component (single V-center with `leaves` U-leaves), remainder
// regular of degree d on parts (rest_n, rest_m).
bool is_star_plus_regular(const BipartiteGraph& g, int leaves, int d, int rest_n, int rest_m) {
    auto comps = components(g);
    auto du = g.u_degrees();
    auto dv = g.v_degrees();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        if (c.vs.size() != 1 || static_cast<int>(c.us.size()) != leaves) continue;
        if (dv[static_cast<std::size_t>(c.vs[0])] != leaves) continue;
        bool star_ok = true;
        for (int u : c.us) {
            if (du[static_cast<std::size_t>(u)] != 1) star_ok = false;
        }
        if (!star_ok) continue;
        int other_us = 0, other_vs = 0;
        bool degrees_ok = true;
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (j == i) continue;
            other_us += static_cast<int>(comps[j].us.size());
            other_vs += static_cast<int>(comps[j].vs.size());
            for (int u : comps[j].us) {
                if (du[static_cast<std::size_t>(u)] != d) degrees_ok = false;
            }
            for (int v : comps[j].vs) {
                if (dv[static_cast<std::size_t>(v)] != d) degrees_ok = false;
            }
        }
        if (degrees_ok && other_us == rest_n && other_vs == rest_m) return true;
    }
    return false;
}

PredicateResult as_result(bool b) {
    return b ? PredicateResult::InFamily : PredicateResult::NotInFamily;
}

// One tree component of diameter at most 3 (a double star, possibly
// degenerate) and any number of complete (2,2) components. These avoid the
// 5-vertex path, and at the extremal stratum they are exactly the avoiders
// missed by degree conditions when k = 3; exhaustive search confirms the
// stated k = 3 family lists are incomplete without them.
bool is_double_star_union(const BipartiteGraph& g) {
    auto comps = components(g);
    auto du = g.u_degrees();
    auto dv = g.v_degrees();
    int tree_components = 0;
    for (const auto& c : comps) {
        long long ends = 0;
        int centers = 0;
        std::vector<std::pair<bool, int>> center_ids;
        for (int u : c.us) {
            ends += du[static_cast<std::size_t>(u)];
            if (du[static_cast<std::size_t>(u)] >= 2) {
                centers++;
                center_ids.push_back({true, u});
            }
        }
        for (int v : c.vs) {
            ends += dv[static_cast<std::size_t>(v)];
            if (dv[static_cast<std::size_t>(v)] >= 2) {
                centers++;
                center_ids.push_back({false, v});
            }
        }
        const int verts = static_cast<int>(c.us.size() + c.vs.size());
        if (c.us.size() == 2 && c.vs.size() == 2 && ends == 8) continue;  // K_{2,2}
        if (ends != 2LL * (verts - 1)) return false;  // not a tree
        if (centers > 2) return false;
        if (centers == 2) {
            auto [a_is_u, a] = center_ids[0];
            auto [b_is_u, b] = center_ids[1];
            if (a_is_u == b_is_u) return false;
            const int uu = a_is_u ? a : b;
            const int vv = a_is_u ? b : a;
            if (!g.has_edge(uu, vv)) return false;
        }
        tree_components++;
    }
    return tree_components <= 1;
}

PredicateResult predicate_thm15(int n, int m, const BipartiteGraph& g) {
    if (n == m) {
        return as_result(uniform(g.u_degrees(), n - 1) || uniform(g.v_degrees(), n - 1));
    }
    if (n == m + 1) {
        std::vector<int> pendant(static_cast<std::size_t>(m), n);
        pendant[0] = 1;
        return as_result(uniform(g.v_degrees(), n - 1) || sorted_v_equals(g, pendant));
    }
    return as_result(uniform(g.v_degrees(), n - 1));
}

PredicateResult predicate_thm16(int n, int m, int k, const BipartiteGraph& g) {
    const int c = (k + 1) / 2 - 1;
    if (k == 2) return as_result(is_two_star_forest(g));
    if (k == 3 && n > m && is_double_star_union(g)) return PredicateResult::InFamily;
    if (m == 2) {
        const int boundary = (3 * k) / 2 - 1;
        bool hi = (n >= boundary) && sorted_v_equals(g, {c, n});
        bool lo = (n <= boundary) && sorted_v_equals(g, {k - 1, k - 1});
        return as_result(hi || lo);
    }
    if (n == m) {
        return as_result(uniform(g.u_degrees(), k - 1) && uniform(g.v_degrees(), k - 1));
    }
    if (m <= k) {
        if (n >= 2 * k - 1) {
            if (same_class(g, BipartiteGraph::complete(k - 1, m - 1)
                                  .disjoint_union(BipartiteGraph::complete(n - k + 1, 1)))) {
                return PredicateResult::InFamily;
            }
            if (m == 3 && k == 3 && same_class(g, make_double_star(n, 3).graph())) {
                return PredicateResult::InFamily;
            }
            if (m == 3 && k >= 5 && k % 2 == 1 && sorted_v_equals(g, {c, c, n})) {
                return PredicateResult::InFamily;
            }
            return PredicateResult::NotInFamily;
        }
        bool base = uniform(g.v_degrees(), k - 1) && max_at_most(g.u_degrees(), k - 1);
        // At k = 3 the degree pattern alone is too wide (only the double-star
        // shape avoids the path); that shape is handled above.
        bool odd_extra = (m == 3 && k >= 5 && k % 2 == 1 && n == 2 * k - 2) &&
                         sorted_v_equals(g, {c, c, n});
        return as_result(base || odd_extra);
    }
    // m >= k+1
    if (n - m >= k - 1) {
        if (is_star_plus_regular(g, n - m + 1, k - 1, m - 1, m - 1)) return PredicateResult::InFamily;
        if (k == 3 && same_class(g, make_double_star(n, m).graph())) return PredicateResult::InFamily;
        return PredicateResult::NotInFamily;
    }
    bool base = uniform(g.v_degrees(), k - 1) && max_at_most(g.u_degrees(), k - 1);
    bool star_extra = (k == 3 && n == m + 1) && same_class(g, make_double_star(n, m).graph());
    return as_result(base || star_extra);
}

PredicateResult predicate_thm17(int n, int m, const BipartiteGraph& g) {
    if (m <= 2) return as_result(same_class(g, BipartiteGraph::complete(n, m)));
    if (n == 3 && m == 3) {
        return as_result(uniform(g.u_degrees(), 2) || uniform(g.v_degrees(), 2));
    }
    if (n == 4 && m == 4) return as_result(same_class(g, graph_g1_prime()));
    if (n == 5 && m == 4) {
        return as_result(uniform(g.u_degrees(), 2) || same_class(g, graph_g2_prime()));
    }
    if (m <= 4) return as_result(uniform(g.u_degrees(), 2));
    bool split = same_class(g, BipartiteGraph::complete(2, m - 2)
                                   .disjoint_union(BipartiteGraph::complete(n - 2, 2)));
    bool g3p = (n == 5 && m == 5) && same_class(g, graph_g3_prime());
    return as_result(split || g3p);
}

}  // namespace

PredicateResult characterization_predicate(TheoremId id, int n, int m, int k, int l,
                                           const BipartiteGraph& g) {
    if (g.n() != n || g.m() != m || n < m) return PredicateResult::Unsupported;
    switch (id) {
        case TheoremId::Thm1_5:
            if (k != n || l != m) return PredicateResult::Unsupported;
            return predicate_thm15(n, m, g);
        case TheoremId::Thm1_6:
            if (l != 2 || k < 2 || k > n || m < 2) return PredicateResult::Unsupported;
            return predicate_thm16(n, m, k, g);
        case TheoremId::Lem3_5:
            if (l != 2 || n != m || m < 3 || k < 3 || n < k - 1) return PredicateResult::Unsupported;
            return as_result(uniform(g.u_degrees(), k - 1) && uniform(g.v_degrees(), k - 1));
        case TheoremId::Thm1_7:
            if (k != 3 || l != 3) return PredicateResult::Unsupported;
            return predicate_thm17(n, m, g);
        case TheoremId::Lem4_2: {
            if (std::min(n, m) < 5) return PredicateResult::Unsupported;
            bool split = same_class(g, BipartiteGraph::complete(2, m - 2)
                                           .disjoint_union(BipartiteGraph::complete(n - 2, 2)));
            bool g3p = (n == 5 && m == 5) && same_class(g, graph_g3_prime());
            return as_result(split || g3p);
        }
        case TheoremId::Thm1_4: {
            if (k != l || k < 2) return PredicateResult::Unsupported;
            const int pl = k;  // path P_{2l} has parts (l,l)
            if (m <= pl - 1) return as_result(same_class(g, BipartiteGraph::complete(n, m)));
            if (m < 2 * (pl - 1)) {
                std::vector<std::uint64_t> rows(static_cast<std::size_t>(n),
                                                (1ULL << (pl - 1)) - 1);
                return as_result(same_class(g, BipartiteGraph::from_rows(n, m, std::move(rows))));
            }
            if (same_class(g, BipartiteGraph::complete(pl - 1, m - pl + 1)
                                  .disjoint_union(BipartiteGraph::complete(n - pl + 1, pl - 1)))) {
                return PredicateResult::InFamily;
            }
            if (m == 2 * (pl - 1)) {
                for (int i = 0; i <= n / 2; ++i) {
                    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
                    const std::uint64_t mask_a = (1ULL << (pl - 1)) - 1;
                    const std::uint64_t mask_b = mask_a << (pl - 1);
                    for (int u = 0; u < n; ++u) {
                        rows[static_cast<std::size_t>(u)] = (u < i) ? mask_a : mask_b;
                    }
                    if (same_class(g, BipartiteGraph::from_rows(n, m, std::move(rows)))) {
                        return PredicateResult::InFamily;
                    }
                }
            }
            return PredicateResult::NotInFamily;
        }
        case TheoremId::Lem2_2: return PredicateResult::Unsupported;
    }
    return PredicateResult::Unsupported;
}

// ---------------------------------------------------------------------------
// Theorem verification sweeps
// ---------------------------------------------------------------------------

namespace {

// Both directions at the extremal stratum: every avoider must satisfy the
// characterization and every characterized graph must avoid.
void check_classes_two_sided(TheoremId id, int n, int m, int k, int l, long long ex,
                             const FamilyMatcher& matcher, const SearchBudget& budget,
                             TupleCheck& out) {
    const ScanSetup s = scan_setup(n, m);
    detail::StratumScan scan(s.N, s.M);
    std::set<std::string> reported;
    scan.run(static_cast<int>(ex), [&](const RowVec& rows) {
        const bool avoids = matcher.first_missing(rows, s.N, s.M) >= 0;
        BipartiteGraph g = BipartiteGraph::from_rows(s.N, s.M, rows);
        if (s.flipped) g = g.transposed();
        PredicateResult pred = characterization_predicate(id, n, m, k, l, g);
        if (pred == PredicateResult::Unsupported) return;
        const bool in_family = pred == PredicateResult::InFamily;
        if (avoids != in_family) {
            std::string key = canonical_key(g).hex();
            if (reported.insert(key).second) {
                out.mismatches.push_back(
                    std::string(avoids ? "extremal class outside the characterization"
                                       : "characterized graph is not extremal") +
                    ":\n" + serialize_bmat(g));
            }
        }
    });
    (void)budget;
}

void check_value(TupleCheck& t) {
    if (t.formula >= 0 && t.brute != t.formula) {
        t.mismatches.push_back("value mismatch: brute " + std::to_string(t.brute) + " vs formula " +
                               std::to_string(t.formula));
    }
}

TupleCheck family_tuple(TheoremId id, int n, int m, int k, int l, const SearchBudget& budget,
                        bool two_sided) {
    TupleCheck t;
    t.n = n;
    t.m = m;
    t.k = k;
    t.l = l;
    TreeFamily fam = enumerate_trees(k, l);
    BruteResult brute = ex_bruteforce(n, m, fam, budget);
    t.brute = brute.record.ex;
    t.formula = ex_formula(n, m, k, l).value;
    t.class_count = static_cast<int>(brute.record.extremal_keys.size());
    check_value(t);
    if (two_sided && t.brute == t.formula) {
        FamilyMatcher matcher(fam);
        check_classes_two_sided(id, n, m, k, l, t.brute, matcher, budget, t);
    }
    return t;
}

}  // namespace

TheoremReport verify_theorem(TheoremId id, const VerifyOptions& opt) {
    TheoremReport report;
    report.id = theorem_name(id);
    auto add = [&](TupleCheck t) {
        report.mismatch_count += static_cast<int>(t.mismatches.size());
        report.tuples.push_back(std::move(t));
    };

    switch (id) {
        case TheoremId::Thm1_5: {
            for (int m = 1; m <= opt.sum_budget / 2; ++m) {
                for (int n = m; n + m <= opt.sum_budget; ++n) {
                    add(family_tuple(id, n, m, n, m, opt.budget, true));
                }
            }
            break;
        }
        case TheoremId::Thm1_6: {
            for (int m = 2; m * m <= opt.nm_budget; ++m) {
                for (int n = m; n * m <= opt.nm_budget; ++n) {
                    for (int k = 2; k <= std::min(opt.kmax, n); ++k) {
                        add(family_tuple(id, n, m, k, 2, opt.budget, true));
                    }
                }
            }
            break;
        }
        case TheoremId::Thm1_7: {
            for (int m = 1; m <= 5; ++m) {
                for (int n = m; n <= 5; ++n) {
                    add(family_tuple(id, n, m, 3, 3, opt.budget, true));
                }
            }
            break;
        }
        case TheoremId::Lem3_5: {
            for (int n = 3; n <= 5; ++n) {
                for (int k = 3; k <= std::min(opt.kmax, n + 1); ++k) {
                    add(family_tuple(id, n, n, k, 2, opt.budget, true));
                }
            }
            break;
        }
        case TheoremId::Lem2_2: {
            for (int n = 2; n <= 5; ++n) {
                TupleCheck t;
                t.n = n;
                t.m = n;
                C2nReport c2n = verify_c2n_extremal(n);
                t.brute = c2n.ex;
                t.formula = static_cast<long long>(n) * n - n + 1;
                t.class_count = static_cast<int>(c2n.extremal_keys.size());
                t.mismatches = c2n.violations;
                add(std::move(t));
            }
            break;
        }
        case TheoremId::Lem4_2: {
            SearchBudget budget = opt.budget;
            // The (6,6) tuple sits just past the default labeled-space bound.
            budget.max_labeled_graphs = std::max<std::uint64_t>(budget.max_labeled_graphs, 1ULL << 37);
            for (int m = 5; m <= 6; ++m) {
                for (int n = m; n <= 6; ++n) {
                    TupleCheck t;
                    t.n = n;
                    t.m = m;
                    t.k = 3;
                    t.l = 3;
                    BruteResult brute = ex_bruteforce_single(n, m, tree_g1(), budget);
                    t.brute = brute.record.ex;
                    t.formula = 2LL * (n + m) - 8;
                    t.class_count = static_cast<int>(brute.record.extremal_keys.size());
                    check_value(t);
                    std::set<std::string> expected{
                        canonical_key(BipartiteGraph::complete(2, m - 2)
                                          .disjoint_union(BipartiteGraph::complete(n - 2, 2)))
                            .hex()};
                    if (n == 5 && m == 5) expected.insert(canonical_key(graph_g3_prime()).hex());
                    std::set<std::string> got(brute.record.extremal_keys.begin(),
                                              brute.record.extremal_keys.end());
                    if (got != expected) {
                        t.mismatches.push_back("extremal classes differ from the characterized set");
                    }
                    add(std::move(t));
                }
            }
            break;
        }
        case TheoremId::Thm1_4: {
            for (int l = 2; l <= opt.path_lmax; ++l) {
                BipartiteTree path = make_path(2 * l);
                for (int m = 1; m * m <= opt.nm_budget; ++m) {
                    for (int n = m; n * m <= opt.nm_budget; ++n) {
                        TupleCheck t;
                        t.n = n;
                        t.m = m;
                        t.k = l;
                        t.l = l;
                        BruteResult brute = ex_bruteforce_single(n, m, path, opt.budget);
                        t.brute = brute.record.ex;
                        t.formula = ex_path(n, m, 2 * l).value;
                        t.class_count = static_cast<int>(brute.record.extremal_keys.size());
                        check_value(t);
                        if (t.brute == t.formula) {
                            // The characterized families are finite; compare
                            // the class sets exactly. The statements assume
                            // labeled sides with n >= m, so close the set
                            // under transposition when n = m.
                            std::vector<BipartiteGraph> family;
                            if (m <= l - 1) {
                                family.push_back(BipartiteGraph::complete(n, m));
                            } else if (m < 2 * (l - 1)) {
                                std::vector<std::uint64_t> rows(static_cast<std::size_t>(n),
                                                                (1ULL << (l - 1)) - 1);
                                family.push_back(
                                    BipartiteGraph::from_rows(n, m, std::move(rows)));
                            } else {
                                family.push_back(BipartiteGraph::complete(l - 1, m - l + 1)
                                                     .disjoint_union(BipartiteGraph::complete(
                                                         n - l + 1, l - 1)));
                                if (m == 2 * (l - 1)) {
                                    const std::uint64_t mask_a = (1ULL << (l - 1)) - 1;
                                    for (int i = 0; i <= n / 2; ++i) {
                                        std::vector<std::uint64_t> rows(
                                            static_cast<std::size_t>(n), mask_a << (l - 1));
                                        for (int u = 0; u < i; ++u) {
                                            rows[static_cast<std::size_t>(u)] = mask_a;
                                        }
                                        family.push_back(
                                            BipartiteGraph::from_rows(n, m, std::move(rows)));
                                    }
                                }
                            }
                            std::set<std::string> expected;
                            for (const auto& g : family) {
                                expected.insert(canonical_key(g).hex());
                                if (n == m) expected.insert(canonical_key(g.transposed()).hex());
                            }
                            std::set<std::string> got(brute.record.extremal_keys.begin(),
                                                      brute.record.extremal_keys.end());
                            if (got != expected) {
                                t.mismatches.push_back(
                                    "extremal classes differ from the characterized set");
                            }
                        }
                        add(std::move(t));
                    }
                }
            }
            break;
        }
    }
    return report;
}

ConjectureReport explore_conjecture(const ConjectureOptions& opt) {
    ConjectureReport report;
    for (int l = opt.lmin; l <= opt.lmax; ++l) {
        for (int k = l; k <= opt.kmax; ++k) {
            if (k + l > kDefaultTreeCap) continue;
            for (int m = l; m * m <= opt.nm_budget; ++m) {
                if (opt.mmax > 0 && m > opt.mmax) break;
                for (int n = std::max(m, k); n * m <= opt.nm_budget; ++n) {
                    if (opt.nmax > 0 && n > opt.nmax) break;
                    ConjectureRow row;
                    row.n = n;
                    row.m = m;
                    row.k = k;
                    row.l = l;
                    auto conj = conjecture_value(n, m, k, l);
                    if (!conj) {
                        row.outcome = "GuardNotMet";
                        report.rows.push_back(std::move(row));
                        continue;
                    }
                    row.conjectured = conj->value;
                    if (conj->case_label.find("(1)") != std::string::npos) row.guard_case = 1;
                    if (conj->case_label.find("(2)") != std::string::npos) row.guard_case = 2;
                    if (conj->case_label.find("(3)") != std::string::npos) row.guard_case = 3;
                    TreeFamily fam = enumerate_trees(k, l);
                    BruteResult brute = ex_bruteforce(n, m, fam, opt.budget);
                    row.brute = brute.record.ex;
                    row.outcome = (row.brute == row.conjectured) ? "Match" : "Mismatch";
                    if (row.outcome == "Mismatch") report.mismatch_count++;
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }
    return report;
}

}  // namespace bitree
