// Test-only reference implementations, deliberately independent of the
// library's search and matching code paths.
#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "bitree/bigraph.hpp"

namespace oracles {

// Containment by enumerating every injective side-respecting vertex map.
inline bool contains_oriented_naive(const bitree::BipartiteGraph& host,
                                    const bitree::BipartiteGraph& tree, bool swapped) {
    const int k = tree.n(), l = tree.m();
    const int hu = swapped ? host.m() : host.n();
    const int hv = swapped ? host.n() : host.m();
    if (k > hu || l > hv) return false;
    std::vector<int> pu(static_cast<std::size_t>(hu));
    std::iota(pu.begin(), pu.end(), 0);
    do {
        std::vector<int> pv(static_cast<std::size_t>(hv));
        std::iota(pv.begin(), pv.end(), 0);
        do {
            bool ok = true;
            for (int u = 0; u < k && ok; ++u) {
                for (int v = 0; v < l && ok; ++v) {
                    if (!tree.has_edge(u, v)) continue;
                    const int a = pu[static_cast<std::size_t>(u)];
                    const int b = pv[static_cast<std::size_t>(v)];
                    if (swapped ? !host.has_edge(b, a) : !host.has_edge(a, b)) ok = false;
                }
            }
            if (ok) return true;
        } while (std::next_permutation(pv.begin(), pv.end()));
    } while (std::next_permutation(pu.begin(), pu.end()));
    return false;
}

inline bool contains_naive(const bitree::BipartiteGraph& host,
                           const bitree::BipartiteGraph& tree) {
    return contains_oriented_naive(host, tree, false) ||
           contains_oriented_naive(host, tree, true);
}

// Labeled trees on p vertices from sequences of length p-2 (smallest-leaf
// decoding), bucketed by bipartition part sizes and canonicalized. Each
// labeled tree lands in the buckets for both orientations of its parts.
inline std::map<std::pair<int, int>, std::set<bitree::CanonicalKey>> prufer_all_families(int p) {
    std::map<std::pair<int, int>, std::set<bitree::CanonicalKey>> out;
    std::vector<int> seq(static_cast<std::size_t>(std::max(0, p - 2)), 0);
    auto decode_and_add = [&]() {
        std::vector<int> degree(static_cast<std::size_t>(p), 1);
        for (int x : seq) degree[static_cast<std::size_t>(x)]++;
        std::vector<std::pair<int, int>> edges;
        std::vector<int> deg = degree;
        std::vector<bool> used(static_cast<std::size_t>(p), false);
        for (int x : seq) {
            int leaf = -1;
            for (int v = 0; v < p; ++v) {
                if (!used[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] == 1) {
                    leaf = v;
                    break;
                }
            }
            edges.push_back({leaf, x});
            used[static_cast<std::size_t>(leaf)] = true;
            deg[static_cast<std::size_t>(x)]--;
        }
        std::vector<int> last;
        for (int v = 0; v < p; ++v) {
            if (!used[static_cast<std::size_t>(v)]) last.push_back(v);
        }
        edges.push_back({last[0], last[1]});

        // 2-color by BFS from vertex 0.
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
        for (auto [a, b] : edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<int> color(static_cast<std::size_t>(p), -1);
        std::vector<int> queue{0};
        color[0] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (int nb : adj[static_cast<std::size_t>(queue[h])]) {
                if (color[static_cast<std::size_t>(nb)] < 0) {
                    color[static_cast<std::size_t>(nb)] =
                        1 - color[static_cast<std::size_t>(queue[h])];
                    queue.push_back(nb);
                }
            }
        }
        const int a = static_cast<int>(std::count(color.begin(), color.end(), 0));
        for (int u_color = 0; u_color < 2; ++u_color) {
            const int k = (u_color == 0) ? a : p - a;
            const int l = p - k;
            if (l < 1) continue;
            std::vector<int> uidx(static_cast<std::size_t>(p), -1),
                vidx(static_cast<std::size_t>(p), -1);
            int ui = 0, vi = 0;
            for (int v = 0; v < p; ++v) {
                if (color[static_cast<std::size_t>(v)] == u_color) {
                    uidx[static_cast<std::size_t>(v)] = ui++;
                } else {
                    vidx[static_cast<std::size_t>(v)] = vi++;
                }
            }
            std::vector<std::pair<int, int>> bip_edges;
            for (auto [x, y] : edges) {
                if (color[static_cast<std::size_t>(x)] != u_color) std::swap(x, y);
                bip_edges.push_back(
                    {uidx[static_cast<std::size_t>(x)], vidx[static_cast<std::size_t>(y)]});
            }
            bitree::BipartiteGraph g(k, l, bip_edges);
            out[{k, l}].insert(bitree::canonical_key(g, k == l));
            if (k == l) break;  // both orientations merge under the swap key
        }
    };

    if (p == 2) {
        decode_and_add();
        return out;
    }
    // odometer over all p^(p-2) sequences
    while (true) {
        decode_and_add();
        int i = 0;
        while (i < p - 2 && seq[static_cast<std::size_t>(i)] == p - 1) {
            seq[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == p - 2) break;
        seq[static_cast<std::size_t>(i)]++;
    }
    return out;
}

inline std::set<bitree::CanonicalKey> prufer_family_keys(int k, int l) {
    return prufer_all_families(k + l)[{k, l}];
}

// Orbit minima of labeled graphs (cell bitmask, cell = u*m+v) under
// S_n x S_m, optionally extended by the side swap for n = m.
inline std::uint64_t orbit_min(std::uint64_t mask, int n, int m, bool allow_swap) {
    std::uint64_t best = ~0ULL;
    std::vector<int> pu(static_cast<std::size_t>(n));
    std::iota(pu.begin(), pu.end(), 0);
    auto consider = [&](int nn, int mm, std::function<bool(int, int)> edge) {
        std::vector<int> qu(static_cast<std::size_t>(nn));
        std::iota(qu.begin(), qu.end(), 0);
        do {
            std::vector<int> qv(static_cast<std::size_t>(mm));
            std::iota(qv.begin(), qv.end(), 0);
            do {
                std::uint64_t out = 0;
                for (int u = 0; u < nn; ++u) {
                    for (int v = 0; v < mm; ++v) {
                        if (edge(qu[static_cast<std::size_t>(u)], qv[static_cast<std::size_t>(v)])) {
                            out |= 1ULL << (u * mm + v);
                        }
                    }
                }
                best = std::min(best, out);
            } while (std::next_permutation(qv.begin(), qv.end()));
        } while (std::next_permutation(qu.begin(), qu.end()));
    };
    consider(n, m, [&](int u, int v) { return (mask >> (u * m + v)) & 1ULL; });
    if (allow_swap && n == m) {
        consider(m, n, [&](int v, int u) { return (mask >> (u * m + v)) & 1ULL; });
    }
    return best;
}

// Distinct orbits per edge count over the whole labeled space (n*m <= 20).
inline std::map<int, std::set<std::uint64_t>> orbits_by_edges(int n, int m, bool allow_swap) {
    std::map<int, std::set<std::uint64_t>> orbits;
    const std::uint64_t total = 1ULL << (n * m);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        orbits[std::popcount(mask)].insert(orbit_min(mask, n, m, allow_swap));
    }
    return orbits;
}

inline bitree::BipartiteGraph graph_from_mask(std::uint64_t mask, int n, int m) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < m; ++v) {
            if ((mask >> (u * m + v)) & 1ULL) rows[static_cast<std::size_t>(u)] |= 1ULL << v;
        }
    }
    return bitree::BipartiteGraph::from_rows(n, m, std::move(rows));
}

// Alternating cycle validity, independent of the solver.
inline bool valid_hamilton_cycle(const bitree::BipartiteGraph& g, const std::vector<int>& seq) {
    const int n = g.n();
    if (g.m() != n || seq.size() != static_cast<std::size_t>(2 * n)) return false;
    std::set<int> us, vs;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i % 2 == 0) {
            us.insert(seq[i]);
        } else {
            vs.insert(seq[i]);
        }
    }
    if (static_cast<int>(us.size()) != n || static_cast<int>(vs.size()) != n) return false;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int a = seq[i];
        const int b = seq[(i + 1) % seq.size()];
        const bool a_is_u = i % 2 == 0;
        if (a_is_u ? !g.has_edge(a, b) : !g.has_edge(b, a)) return false;
    }
    return true;
}

inline bitree::BipartiteGraph random_graph(int n, int m, std::mt19937& rng, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < m; ++v) {
            if (coin(rng)) rows[static_cast<std::size_t>(u)] |= 1ULL << v;
        }
    }
    return bitree::BipartiteGraph::from_rows(n, m, std::move(rows));
}

inline bitree::BipartiteGraph permuted(const bitree::BipartiteGraph& g, std::mt19937& rng) {
    std::vector<int> pu(static_cast<std::size_t>(g.n()));
    std::vector<int> pv(static_cast<std::size_t>(g.m()));
    std::iota(pu.begin(), pu.end(), 0);
    std::iota(pv.begin(), pv.end(), 0);
    std::shuffle(pu.begin(), pu.end(), rng);
    std::shuffle(pv.begin(), pv.end(), rng);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n(); ++u) {
        for (int v = 0; v < g.m(); ++v) {
            if (g.has_edge(u, v)) {
                edges.push_back({pu[static_cast<std::size_t>(u)], pv[static_cast<std::size_t>(v)]});
            }
        }
    }
    return bitree::BipartiteGraph(g.n(), g.m(), edges);
}

}  // namespace oracles
