#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bitree/bigraph.hpp"
#include "bitree/embed.hpp"
#include "bitree/formulas.hpp"
#include "bitree/treegen.hpp"

namespace bitree {

/// Bumped whenever the search algorithm changes; cached records from other
/// versions are invisible.
inline constexpr const char* kMethodVersion = "rowscan-1";

struct SearchBudget {
    std::uint64_t max_labeled_graphs = 1ULL << 30;  // bound on 2^(n*m)
    double max_seconds = 900.0;
    int workers = 0;  // 0 = min(4, hardware threads)
    bool prop32_prune = true;

    void validate() const;
    int resolved_workers() const;
};

enum class Agreement { Match, Mismatch, NoFormula };

struct ExtremalRecord {
    int n = 0, m = 0;
    int k = 0, l = 0;      // family parameters; 0,0 for a single-tree run
    std::string tree_key;  // single-tree id (canonical key hex), else empty
    long long ex = -1;
    std::vector<std::string> extremal_keys;         // labeled-sides classes, hex, sorted
    std::vector<std::string> extremal_keys_merged;  // side-swap-merged classes (n = m)
    std::optional<ExValue> formula;
    Agreement agreement = Agreement::NoFormula;
    double elapsed_ms = 0.0;
    std::string method_version = kMethodVersion;
};

struct BruteResult {
    ExtremalRecord record;
    std::vector<BipartiteGraph> extremal_reps;  // parallel to record.extremal_keys
};

/**
 * Exact ex(n,m;family) by scanning edge-count strata from n*m downward; the
 * first stratum containing a graph that misses some family member is the
 * extremal value, and all its canonical classes are collected.
 */
BruteResult ex_bruteforce(int n, int m, const TreeFamily& family,
                          const SearchBudget& budget = {});
BruteResult ex_bruteforce_single(int n, int m, const BipartiteTree& tree,
                                 const SearchBudget& budget = {});

enum class TheoremId { Thm1_4, Thm1_5, Thm1_6, Thm1_7, Lem2_2, Lem3_5, Lem4_2 };
std::string theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(const std::string& name);

struct VerifyOptions {
    int sum_budget = 10;  // n + m cap for the whole-family sweep
    int nm_budget = 30;   // n * m cap elsewhere
    int kmax = 5;
    int path_lmax = 3;  // P_{2l} sweeps
    SearchBudget budget;
};

struct TupleCheck {
    int n = 0, m = 0, k = 0, l = 0;
    long long brute = -1;
    long long formula = -1;
    int class_count = 0;
    std::vector<std::string> mismatches;  // human-readable, with bmat witnesses
};

struct TheoremReport {
    std::string id;
    std::vector<TupleCheck> tuples;
    int mismatch_count = 0;
};

/// Brute-force values and extremal classes against the closed forms and the
/// characterized families, over a desk-scale parameter sweep. Mismatches are
/// findings, not errors.
TheoremReport verify_theorem(TheoremId id, const VerifyOptions& opt = {});

enum class PredicateResult { InFamily, NotInFamily, Unsupported };

/// Structural membership test for the characterized extremal families of the
/// given result at these parameters.
PredicateResult characterization_predicate(TheoremId id, int n, int m, int k, int l,
                                           const BipartiteGraph& g);

struct ConjectureOptions {
    int nm_budget = 30;
    int nmax = 0;  // 0 = bounded by nm_budget only
    int mmax = 0;
    int lmin = 2;
    int lmax = 5;
    int kmax = 6;
    SearchBudget budget;
};

struct ConjectureRow {
    int n = 0, m = 0, k = 0, l = 0;
    int guard_case = 0;  // 1..3, or 0 when no guard matches
    long long conjectured = -1;
    long long brute = -1;
    std::string outcome;  // "Match" | "Mismatch" | "GuardNotMet"
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    int mismatch_count = 0;
};

/// Evidence sweep: never asserts the conjecture, only reports agreement.
ConjectureReport explore_conjecture(const ConjectureOptions& opt = {});

}  // namespace bitree
