#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "bitree/errors.hpp"

namespace bitree::detail {

/**
 * Enumerates every (n,m)-bipartite graph with a fixed edge count, one
 * representative per relabeling of U: row masks in nondecreasing numeric
 * order. Containment and degree predicates are isomorphism-invariant, so
 * scanning these representatives covers every isomorphism class.
 *
 * Parallel scans split on the first row value; see first_values().
 */
class StratumScan {
public:
    StratumScan(int n, int m) : n_(n), m_(m) {
        if (n < 1 || m < 1 || m > 20) throw contract_error("stratum scan sides out of range");
        const std::size_t count = 1ULL << m;
        minpc_ge_.resize(count);
        int best = m;
        for (std::size_t v = count; v-- > 0;) {
            best = std::min(best, std::popcount(v));
            minpc_ge_[v] = best;
        }
    }

    int n() const { return n_; }
    int m() const { return m_; }

    /// First-row values that admit a completion with `edges` edges total.
    std::vector<std::uint64_t> first_values(int edges) const {
        std::vector<std::uint64_t> out;
        const std::uint64_t top = 1ULL << m_;
        for (std::uint64_t v = 0; v < top; ++v) {
            int pc = std::popcount(v);
            if (pc > edges) continue;
            int rest = edges - pc;
            if (rest > (n_ - 1) * m_) continue;
            if (rest < (n_ - 1) * minpc_ge_[v]) continue;
            out.push_back(v);
        }
        return out;
    }

    /// Visit all representatives whose first row equals `first`.
    template <typename Visit>
    void run_from(int edges, std::uint64_t first, Visit&& visit) const {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n_));
        rows[0] = first;
        rec(1, first, edges - std::popcount(first), rows, visit);
    }

    /// Visit all representatives in the stratum.
    template <typename Visit>
    void run(int edges, Visit&& visit) const {
        if (edges < 0 || edges > n_ * m_) return;
        for (std::uint64_t v : first_values(edges)) run_from(edges, v, visit);
    }

private:
    template <typename Visit>
    void rec(int idx, std::uint64_t minval, int remaining, std::vector<std::uint64_t>& rows,
             Visit& visit) const {
        if (idx == n_) {
            if (remaining == 0) visit(const_cast<const std::vector<std::uint64_t>&>(rows));
            return;
        }
        const int rows_left = n_ - idx;
        const std::uint64_t top = 1ULL << m_;
        for (std::uint64_t v = minval; v < top; ++v) {
            int pc = std::popcount(v);
            if (pc > remaining) continue;
            int rest = remaining - pc;
            if (rest > (rows_left - 1) * m_) continue;
            if (rest < (rows_left - 1) * minpc_ge_[v]) continue;
            rows[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1, v, rest, rows, visit);
        }
    }

    int n_;
    int m_;
    std::vector<int> minpc_ge_;
};

}  // namespace bitree::detail
