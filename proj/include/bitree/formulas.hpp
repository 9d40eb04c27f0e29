#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bitree/bigraph.hpp"
#include "bitree/treegen.hpp"

namespace bitree {

enum class ExStatus { Proven, Conjectured, Unknown };

/// A closed-form extremal value. `value` is -1 when status is Unknown (no
/// claim); otherwise 0 <= value <= n*m.
struct ExValue {
    long long value = -1;
    ExStatus status = ExStatus::Unknown;
    std::string case_label;
};

/// Closed-form ex(n,m; T_{k,l}) where known. Accepts any orientation and
/// normalizes to n >= m, k >= l, recording a transposition in the label.
ExValue ex_formula(int n, int m, int k, int l);

/// Closed-form ex(n,m; P_{path_len}) for even path lengths >= 4; odd lengths
/// return Unknown.
ExValue ex_path(int n, int m, int path_len);

/// Conjectured value when one of the three guard regions applies.
std::optional<ExValue> conjecture_value(int n, int m, int k, int l);

struct CatalogEntry {
    BipartiteGraph graph;
    std::string family;
    bool symbolic = false;  // graph is one representative of an infinite family
};

/// The characterized extremal graphs for (n,m,k,l): one concrete member per
/// finite family, one representative per symbolic (degree-condition) family.
struct ExtremalCatalog {
    bool supported = false;
    bool complete = false;  // the characterization covers ALL extremal graphs
    long long value = -1;
    std::vector<CatalogEntry> entries;
};

ExtremalCatalog construct_extremal(int n, int m, int k, int l);

/// Circulant u_i ~ v_{(i+j) mod size} for j = 0..degree-1.
BipartiteGraph make_regular_bipartite(int size, int degree);

// Named small graphs pinned by uniqueness results. Each is computed by
// exhaustive enumeration at its parameters, not transcribed.
const BipartiteGraph& graph_g0();        // the (3,3) graph with 6 edges and degree-3 apexes
const BipartiteTree& tree_g1();          // (3,3) double star
const BipartiteTree& tree_g2();          // the third (3,3) tree
const BipartiteTree& tree_g3();          // P_6
const BipartiteGraph& graph_g1_prime();  // unique (4,4) extremal for T_{3,3}
const BipartiteGraph& graph_g2_prime();  // the non-2-uniform (5,4) extremal for T_{3,3}
const BipartiteGraph& graph_g3_prime();  // the connected (5,5) extremal for the double star

}  // namespace bitree
