#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bitree/bigraph.hpp"
#include "bitree/treegen.hpp"

namespace bitree {

enum class Orientation { SidesPreserved, SidesSwapped };

/**
 * Injective vertex map of a tree into a host. With SidesPreserved, map_u
 * lands in the host's U side and map_v in V; with SidesSwapped the targets
 * are exchanged.
 */
struct Embedding {
    Orientation orientation = Orientation::SidesPreserved;
    std::vector<int> map_u;  // tree U-index -> host vertex index
    std::vector<int> map_v;  // tree V-index -> host vertex index
};

/// Exhaustive backtracking; tree vertices are embedded in BFS order from a
/// max-degree tree vertex, host candidates tried in descending degree.
std::optional<Embedding> find_embedding(const BipartiteGraph& host, const BipartiteTree& t,
                                        Orientation orientation);

/// True iff the tree embeds in at least one size-compatible orientation.
bool contains_tree(const BipartiteGraph& host, const BipartiteTree& t);

struct ContainsAllResult {
    bool all = false;
    int first_missing = -1;  // index into family.members, -1 when all contained
};
ContainsAllResult contains_all(const BipartiteGraph& host, const TreeFamily& family);

/// Both orientations embed (balanced host and tree of the same size).
bool strongly_contains(const BipartiteGraph& host, const BipartiteTree& t);

/// Independent validity check: injectivity, orientation, edge preservation.
bool verify_certificate(const BipartiteGraph& host, const BipartiteTree& t, const Embedding& e);

/**
 * Embedding built by leaf peeling and host reduction, for balanced hosts with
 * e >= n(n-1) that are not degree-(n-1)-uniform on either side. Orientation
 * SidesPreserved; apply to the transposed host for the swapped direction.
 */
Embedding constructive_embed_balanced(const BipartiteGraph& host, const BipartiteTree& t);

/**
 * Same scheme for hosts with n > m >= 1 and e >= m(n-1) outside the two
 * exceptional degree families (V-uniform n-1; or n-m = 1 with V-degrees
 * (1, n, ..., n)).
 */
Embedding constructive_embed_unbalanced(const BipartiteGraph& host, const BipartiteTree& t);

/**
 * Reusable matcher: the tree's traversal order is precompiled so a scan can
 * test many hosts cheaply. Row masks are accepted directly to avoid
 * per-candidate graph construction.
 */
class TreeMatcher {
public:
    explicit TreeMatcher(const BipartiteTree& t);

    int k() const { return k_; }
    int l() const { return l_; }

    bool embeds(std::span<const std::uint64_t> rows, int n, int m, Orientation orientation) const;
    /// Either orientation, size permitting.
    bool embeds_any(std::span<const std::uint64_t> rows, int n, int m) const;
    std::optional<Embedding> find(const BipartiteGraph& host, Orientation orientation) const;

private:
    bool search(std::span<const std::uint64_t> rows, std::span<const std::uint64_t> cols, int n,
                int m, bool swapped, std::vector<int>* img) const;

    int k_ = 0;
    int l_ = 0;
    // Tree vertices in BFS order; V'-side ids are offset by k_.
    std::vector<int> order_;
    std::vector<int> parent_;  // parallel to order_, -1 for the root
};

/// Matchers for a whole family, in family order.
class FamilyMatcher {
public:
    explicit FamilyMatcher(const TreeFamily& family);
    /// Index of the first member that does not embed, or -1.
    int first_missing(std::span<const std::uint64_t> rows, int n, int m) const;
    std::size_t size() const { return matchers_.size(); }

private:
    std::vector<TreeMatcher> matchers_;
};

}  // namespace bitree
