#include "bitree/hamilton.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "stratum_scan.hpp"

namespace bitree {

namespace {

bool ordering_holds(const std::vector<int>& du, const std::vector<int>& dv, int n) {
    // d(u_k) <= k < n forces d(v_{n-k}) >= n-k+1, with 1-based sorted degrees.
    for (int k = 1; k < n; ++k) {
        if (du[static_cast<std::size_t>(k - 1)] <= k &&
            dv[static_cast<std::size_t>(n - k - 1)] < n - k + 1) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool chvatal_condition(const BipartiteGraph& g) {
    const int n = g.n();
    if (g.m() != n || n < 2) throw contract_error("degree condition needs a balanced graph, n >= 2");
    auto du = g.u_degrees();
    auto dv = g.v_degrees();
    std::sort(du.begin(), du.end());
    std::sort(dv.begin(), dv.end());
    // The sorted-degree setup does not distinguish the sides; both orderings
    // are evaluated and the conjunction reported.
    return ordering_holds(du, dv, n) && ordering_holds(dv, du, n);
}

HamiltonicityVerdict is_hamiltonian(const BipartiteGraph& g, int cap) {
    const int n = g.n();
    if (g.m() != n || n < 2) throw contract_error("Hamiltonicity needs a balanced graph, n >= 2");
    if (n > cap) throw size_error("Hamiltonicity cap " + std::to_string(cap) + " exceeded");

    HamiltonicityVerdict verdict;
    verdict.condition_holds = chvatal_condition(g);

    std::vector<std::uint64_t> cols(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        std::uint64_t r = g.row(u);
        while (r) {
            int v = std::countr_zero(r);
            r &= r - 1;
            cols[static_cast<std::size_t>(v)] |= 1ULL << u;
        }
    }

    // Anchor the cycle at u_0 to kill rotational symmetry.
    std::vector<int> seq{0};
    std::uint64_t used_u = 1ULL;
    std::uint64_t used_v = 0;
    std::function<bool(int, int)> rec = [&](int cur_u, int placed_v) -> bool {
        std::uint64_t cands = g.row(cur_u) & ~used_v;
        while (cands) {
            const int v = std::countr_zero(cands);
            cands &= cands - 1;
            if (placed_v == n - 1) {
                if (g.has_edge(0, v)) {
                    seq.push_back(v);
                    return true;
                }
                continue;
            }
            used_v |= 1ULL << v;
            seq.push_back(v);
            std::uint64_t ucands = cols[static_cast<std::size_t>(v)] & ~used_u;
            while (ucands) {
                const int u = std::countr_zero(ucands);
                ucands &= ucands - 1;
                used_u |= 1ULL << u;
                seq.push_back(u);
                if (rec(u, placed_v + 1)) return true;
                seq.pop_back();
                used_u &= ~(1ULL << u);
            }
            seq.pop_back();
            used_v &= ~(1ULL << v);
        }
        return false;
    };

    if (rec(0, 0)) {
        verdict.is_hamiltonian = true;
        verdict.witness_cycle = seq;
    }
    return verdict;
}

BipartiteGraph make_knn1_plus_pendant(int n) {
    if (n < 2) throw contract_error("needs n >= 2");
    const std::uint64_t all = (1ULL << n) - 1;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), all & ~1ULL);
    rows.back() = all;  // the pendant v_0 hangs off the last U vertex
    return BipartiteGraph::from_rows(n, n, std::move(rows));
}

C2nReport verify_c2n_extremal(int n) {
    if (n < 2 || n > 6) throw contract_error("verify_c2n_extremal supports 2 <= n <= 6");
    C2nReport report;
    report.n = n;
    report.ex = static_cast<long long>(n) * n - n + 1;
    report.full_space = n <= 4;

    const int low = report.full_space ? 0 : static_cast<int>(report.ex);
    detail::StratumScan scan(n, n);
    long long best_nonham = -1;
    std::set<std::string> keys_at_best;

    for (int e = n * n; e >= low; --e) {
        scan.run(e, [&](const std::vector<std::uint64_t>& rows) {
            BipartiteGraph g = BipartiteGraph::from_rows(n, n, rows);
            HamiltonicityVerdict v = is_hamiltonian(g);
            if (v.is_hamiltonian) return;
            if (e > best_nonham) {
                best_nonham = e;
                keys_at_best.clear();
            }
            if (e == best_nonham) keys_at_best.insert(canonical_key(g, true).hex());
            if (e >= report.ex + 1) {
                report.violations.push_back("non-Hamiltonian graph above the bound at e=" +
                                            std::to_string(e) + ":\n" + serialize_bmat(g));
            }
        });
    }

    if (best_nonham != report.ex) {
        report.violations.push_back("largest non-Hamiltonian edge count is " +
                                    std::to_string(best_nonham) + ", expected " +
                                    std::to_string(report.ex));
    }
    const std::string expected = canonical_key(make_knn1_plus_pendant(n), true).hex();
    if (keys_at_best != std::set<std::string>{expected}) {
        std::string msg = "extremal classes at e=" + std::to_string(report.ex) + " are {";
        for (const auto& k : keys_at_best) msg += k + ",";
        msg += "}, expected the pendant-augmented complete graph only";
        report.violations.push_back(msg);
    }
    report.extremal_keys.assign(keys_at_best.begin(), keys_at_best.end());
    return report;
}

}  // namespace bitree
