#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitree/errors.hpp"

namespace bitree {

enum class Side { U, V };

/**
 * Bipartite graph on labeled sides U (n vertices) and V (m vertices).
 * Adjacency is one bit mask per U-vertex: bit j of row i is the edge u_i v_j.
 * Immutable after construction; cheap to copy and safe to share.
 */
class BipartiteGraph {
public:
    static constexpr int kMaxSide = 63;  // rows are 64-bit masks

    BipartiteGraph(int n, int m, std::span<const std::pair<int, int>> edges);
    static BipartiteGraph from_rows(int n, int m, std::vector<std::uint64_t> rows);
    static BipartiteGraph complete(int n, int m);

    int n() const { return n_; }
    int m() const { return m_; }
    int edge_count() const { return edge_count_; }

    std::uint64_t row(int u) const { return rows_[static_cast<std::size_t>(u)]; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    std::uint64_t full_row_mask() const { return m_ == 64 ? ~0ULL : (1ULL << m_) - 1; }

    bool has_edge(int u, int v) const { return (rows_[static_cast<std::size_t>(u)] >> v) & 1ULL; }
    std::uint64_t column(int v) const;  // mask over U

    int degree_u(int u) const;
    int degree_v(int v) const;
    std::vector<int> u_degrees() const;
    std::vector<int> v_degrees() const;

    BipartiteGraph transposed() const;
    BipartiteGraph with_edge(int u, int v) const;
    /// Induced subgraph after deleting one vertex from each side.
    BipartiteGraph without_pair(int u, int v) const;
    /// Vertex-disjoint union; U and V indices of `other` are shifted.
    BipartiteGraph disjoint_union(const BipartiteGraph& other) const;

    bool operator==(const BipartiteGraph& other) const = default;

private:
    BipartiteGraph(int n, int m) : n_(n), m_(m) {}
    void recount();

    int n_ = 0;
    int m_ = 0;
    int edge_count_ = 0;
    std::vector<std::uint64_t> rows_;
};

/// Nondecreasing degree list of one side. Sum over U equals sum over V.
struct DegreeSequence {
    Side side;
    std::vector<int> degrees;
};

DegreeSequence degree_sequence(const BipartiteGraph& g, Side side);

/**
 * Canonical form identifying the isomorphism class under independent
 * relabelings of U and V; with `allow_side_swap` (only meaningful for n = m)
 * the two side orientations are merged as well.
 */
struct CanonicalKey {
    std::string bytes;

    auto operator<=>(const CanonicalKey&) const = default;
    std::string hex() const;
};

CanonicalKey canonical_key(const BipartiteGraph& g, bool allow_side_swap = false);

/// "n m" header line, then n rows of m characters in {0,1}.
BipartiteGraph parse_bmat(const std::string& text);
std::string serialize_bmat(const BipartiteGraph& g);

/// Graphviz output with U and V on separate ranks.
std::string to_dot(const BipartiteGraph& g, const std::string& name = "G");

bool is_connected(const BipartiteGraph& g);
/// Sorted vertex sets of each connected component (isolated vertices included).
struct Component {
    std::vector<int> us;
    std::vector<int> vs;
};
std::vector<Component> components(const BipartiteGraph& g);

}  // namespace bitree
