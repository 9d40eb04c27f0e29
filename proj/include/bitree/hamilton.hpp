#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bitree/bigraph.hpp"

namespace bitree {

struct HamiltonicityVerdict {
    bool is_hamiltonian = false;
    // Alternating vertex sequence u, v, u, v, ... of length 2n; entries are
    // side-local indices (even positions U, odd positions V). The closing
    // pair is an edge as well.
    std::optional<std::vector<int>> witness_cycle;
    bool condition_holds = false;
};

/// Degree condition sufficient for a Hamilton cycle, evaluated on both
/// side orderings; the conjunction is reported.
bool chvatal_condition(const BipartiteGraph& g);

inline constexpr int kDefaultHamiltonCap = 8;

/// Exact backtracking answer for balanced hosts up to the cap.
HamiltonicityVerdict is_hamiltonian(const BipartiteGraph& g, int cap = kDefaultHamiltonCap);

struct C2nReport {
    int n = 0;
    long long ex = 0;  // n^2 - n + 1, as verified
    std::vector<std::string> extremal_keys;  // side-swap-merged canonical keys, hex
    std::vector<std::string> violations;     // empty on a clean pass
    bool full_space = false;                 // n <= 4 scans every stratum
};

/// Exhaustively confirms that the largest non-Hamiltonian balanced graph has
/// n^2-n+1 edges and that the unique class attaining it is K_{n,n-1} plus a
/// pendant edge. For n >= 5 only the strata at or above n^2-n+1 are scanned.
C2nReport verify_c2n_extremal(int n);

/// K_{n,n-1} with a pendant edge attached, as an (n,n) graph.
BipartiteGraph make_knn1_plus_pendant(int n);

}  // namespace bitree
