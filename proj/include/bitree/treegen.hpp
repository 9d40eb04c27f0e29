#pragma once

#include <vector>

#include "bitree/bigraph.hpp"

namespace bitree {

/**
 * Bipartite tree with parts sized exactly (k, l): connected and with
 * k + l - 1 edges. Validated at construction.
 */
class BipartiteTree {
public:
    explicit BipartiteTree(BipartiteGraph g);

    const BipartiteGraph& graph() const { return g_; }
    int k() const { return g_.n(); }
    int l() const { return g_.m(); }

private:
    BipartiteGraph g_;
};

/// All (k,l)-bipartite trees up to isomorphism, in canonical key order.
/// For k = l the two side orientations of a tree count as one member.
struct TreeFamily {
    int k = 0;
    int l = 0;
    std::vector<BipartiteTree> members;
    std::vector<CanonicalKey> keys;  // parallel to members
};

inline constexpr int kDefaultTreeCap = 12;

TreeFamily enumerate_trees(int k, int l, int cap = kDefaultTreeCap);

/// |T_{k,2}| in closed form: ceil(k/2).
int count_trees_l2(int k);

int pendant_count(const BipartiteTree& t, Side side);

/// Path on p vertices; vertex 0 is on the U side, sides alternate.
BipartiteTree make_path(int p);
/// Star with the center on the U side and `leaves` V-leaves.
BipartiteTree make_star(int leaves);
/// Double star S_{k1,k2} as a (k1,k2)-tree: the U-side center has degree k2,
/// the V-side center degree k1, centers adjacent.
BipartiteTree make_double_star(int k1, int k2);

}  // namespace bitree
