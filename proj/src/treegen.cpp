#include "bitree/treegen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace bitree {

BipartiteTree::BipartiteTree(BipartiteGraph g) : g_(std::move(g)) {
    if (g_.edge_count() != g_.n() + g_.m() - 1) {
        throw contract_error("tree must have k+l-1 edges, got " + std::to_string(g_.edge_count()));
    }
    if (!is_connected(g_)) throw contract_error("tree must be connected");
}

namespace {

// Intermediate families are kept complete up to side-respecting isomorphism;
// merging the two orientations of a balanced tree only happens at the public
// boundary. Merging earlier would drop children that arise from the mirror
// orientation when growing past a balanced level.
using Keyed = std::pair<CanonicalKey, BipartiteGraph>;
using RawFamily = std::vector<Keyed>;

const RawFamily& build_family(int k, int l, std::map<std::pair<int, int>, RawFamily>& memo) {
    auto it = memo.find({k, l});
    if (it != memo.end()) return it->second;

    RawFamily out;
    if (k == 1 && l == 1) {
        BipartiteGraph edge = BipartiteGraph::from_rows(1, 1, {1ULL});
        out.push_back({canonical_key(edge), std::move(edge)});
    } else {
        std::set<CanonicalKey> seen;
        auto consider = [&](BipartiteGraph g) {
            CanonicalKey key = canonical_key(g);
            if (seen.insert(key).second) out.push_back({std::move(key), std::move(g)});
        };
        if (k > 1) {
            for (const auto& [key, t] : build_family(k - 1, l, memo)) {
                for (int v = 0; v < l; ++v) {
                    std::vector<std::uint64_t> rows = t.rows();
                    rows.push_back(1ULL << v);
                    consider(BipartiteGraph::from_rows(k, l, std::move(rows)));
                }
            }
        }
        if (l > 1) {
            for (const auto& [key, t] : build_family(k, l - 1, memo)) {
                for (int u = 0; u < k; ++u) {
                    std::vector<std::uint64_t> rows = t.rows();
                    rows[static_cast<std::size_t>(u)] |= 1ULL << (l - 1);
                    consider(BipartiteGraph::from_rows(k, l, std::move(rows)));
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const Keyed& a, const Keyed& b) { return a.first < b.first; });
    }
    return memo[{k, l}] = std::move(out);
}

}  // namespace

TreeFamily enumerate_trees(int k, int l, int cap) {
    if (k < 1 || l < 1) throw contract_error("tree parts must be at least 1");
    if (k + l > cap) {
        throw size_error("tree family (" + std::to_string(k) + "," + std::to_string(l) +
                         ") exceeds the enumeration cap " + std::to_string(cap));
    }
    std::map<std::pair<int, int>, RawFamily> memo;
    const RawFamily& raw = build_family(k, l, memo);

    TreeFamily fam;
    fam.k = k;
    fam.l = l;
    const bool swap_ok = (k == l);
    std::vector<Keyed> final_members;
    std::set<CanonicalKey> seen;
    for (const auto& [key, g] : raw) {
        CanonicalKey fkey = swap_ok ? canonical_key(g, true) : key;
        if (seen.insert(fkey).second) final_members.push_back({std::move(fkey), g});
    }
    std::sort(final_members.begin(), final_members.end(),
              [](const Keyed& a, const Keyed& b) { return a.first < b.first; });
    fam.members.reserve(final_members.size());
    fam.keys.reserve(final_members.size());
    for (auto& [key, g] : final_members) {
        fam.keys.push_back(std::move(key));
        fam.members.emplace_back(std::move(g));
    }
    return fam;
}

int count_trees_l2(int k) {
    if (k < 1) throw contract_error("count_trees_l2 needs k >= 1");
    return (k + 1) / 2;
}

int pendant_count(const BipartiteTree& t, Side side) {
    const auto degs = (side == Side::U) ? t.graph().u_degrees() : t.graph().v_degrees();
    return static_cast<int>(std::count(degs.begin(), degs.end(), 1));
}

BipartiteTree make_path(int p) {
    if (p < 2) throw contract_error("path needs at least 2 vertices");
    int k = (p + 1) / 2;
    int l = p / 2;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < p; ++i) {
        int u = (i % 2 == 0) ? i / 2 : (i + 1) / 2;
        int v = (i % 2 == 0) ? i / 2 : (i - 1) / 2;
        edges.push_back({u, v});
    }
    return BipartiteTree(BipartiteGraph(k, l, edges));
}

BipartiteTree make_star(int leaves) {
    if (leaves < 1) throw contract_error("star needs at least 1 leaf");
    return BipartiteTree(BipartiteGraph::from_rows(1, leaves, {(1ULL << leaves) - 1}));
}

BipartiteTree make_double_star(int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw contract_error("double star needs k1, k2 >= 1");
    // u0 hits all of V; v0 hits all of U.
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(k1), 1ULL);
    rows[0] = (1ULL << k2) - 1;
    return BipartiteTree(BipartiteGraph::from_rows(k1, k2, std::move(rows)));
}

}  // namespace bitree
