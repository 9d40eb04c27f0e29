#include "bitree/bigraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>

namespace bitree {

BipartiteGraph::BipartiteGraph(int n, int m, std::span<const std::pair<int, int>> edges)
    : n_(n), m_(m) {
    if (n < 1 || m < 1) {
        throw contract_error("bipartite graph needs nonempty sides, got n=" + std::to_string(n) +
                             " m=" + std::to_string(m));
    }
    if (m > kMaxSide || n > (1 << 20)) {
        throw contract_error("side size out of supported range");
    }
    rows_.assign(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= m) {
            throw contract_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") out of range for (" + std::to_string(n) + "," +
                                 std::to_string(m) + ")");
        }
        rows_[static_cast<std::size_t>(u)] |= 1ULL << v;
    }
    recount();
}

BipartiteGraph BipartiteGraph::from_rows(int n, int m, std::vector<std::uint64_t> rows) {
    if (n < 1 || m < 1 || m > kMaxSide) throw contract_error("invalid sides for from_rows");
    if (rows.size() != static_cast<std::size_t>(n)) throw contract_error("row count mismatch");
    BipartiteGraph g(n, m);
    const std::uint64_t full = (m == 64) ? ~0ULL : (1ULL << m) - 1;
    for (auto r : rows) {
        if (r & ~full) throw contract_error("row mask has bits beyond m");
    }
    g.rows_ = std::move(rows);
    g.recount();
    return g;
}

BipartiteGraph BipartiteGraph::complete(int n, int m) {
    BipartiteGraph g(n, m);
    if (n < 1 || m < 1 || m > kMaxSide) throw contract_error("invalid sides for complete");
    g.rows_.assign(static_cast<std::size_t>(n), (1ULL << m) - 1);
    g.recount();
    return g;
}

void BipartiteGraph::recount() {
    int total = 0;
    for (auto r : rows_) total += std::popcount(r);
    edge_count_ = total;
}

std::uint64_t BipartiteGraph::column(int v) const {
    if (n_ > 64) throw contract_error("column masks need at most 64 U-vertices");
    std::uint64_t col = 0;
    for (int u = 0; u < n_; ++u) {
        col |= ((rows_[static_cast<std::size_t>(u)] >> v) & 1ULL) << u;
    }
    return col;
}

int BipartiteGraph::degree_u(int u) const { return std::popcount(rows_[static_cast<std::size_t>(u)]); }

int BipartiteGraph::degree_v(int v) const {
    int d = 0;
    for (auto r : rows_) d += static_cast<int>((r >> v) & 1ULL);
    return d;
}

std::vector<int> BipartiteGraph::u_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int u = 0; u < n_; ++u) d[static_cast<std::size_t>(u)] = degree_u(u);
    return d;
}

std::vector<int> BipartiteGraph::v_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(m_), 0);
    for (auto r : rows_) {
        while (r) {
            d[static_cast<std::size_t>(std::countr_zero(r))]++;
            r &= r - 1;
        }
    }
    return d;
}

BipartiteGraph BipartiteGraph::transposed() const {
    if (n_ > kMaxSide) throw contract_error("transpose needs at most 63 U-vertices");
    BipartiteGraph g(m_, n_);
    g.rows_.assign(static_cast<std::size_t>(m_), 0);
    for (int u = 0; u < n_; ++u) {
        std::uint64_t r = rows_[static_cast<std::size_t>(u)];
        while (r) {
            int v = std::countr_zero(r);
            g.rows_[static_cast<std::size_t>(v)] |= 1ULL << u;
            r &= r - 1;
        }
    }
    g.edge_count_ = edge_count_;
    return g;
}

BipartiteGraph BipartiteGraph::with_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= m_) throw contract_error("with_edge out of range");
    BipartiteGraph g = *this;
    g.rows_[static_cast<std::size_t>(u)] |= 1ULL << v;
    g.recount();
    return g;
}

BipartiteGraph BipartiteGraph::without_pair(int u, int v) const {
    if (n_ < 2 || m_ < 2) throw contract_error("without_pair would empty a side");
    BipartiteGraph g(n_ - 1, m_ - 1);
    g.rows_.reserve(static_cast<std::size_t>(n_ - 1));
    const std::uint64_t low = (1ULL << v) - 1;
    for (int i = 0; i < n_; ++i) {
        if (i == u) continue;
        std::uint64_t r = rows_[static_cast<std::size_t>(i)];
        g.rows_.push_back((r & low) | ((r >> (v + 1)) << v));
    }
    g.recount();
    return g;
}

BipartiteGraph BipartiteGraph::disjoint_union(const BipartiteGraph& other) const {
    BipartiteGraph g(n_ + other.n_, m_ + other.m_);
    if (m_ + other.m_ > kMaxSide) throw contract_error("disjoint_union exceeds side limit");
    g.rows_ = rows_;
    for (auto r : other.rows_) g.rows_.push_back(r << m_);
    g.recount();
    return g;
}

DegreeSequence degree_sequence(const BipartiteGraph& g, Side side) {
    DegreeSequence seq;
    seq.side = side;
    seq.degrees = (side == Side::U) ? g.u_degrees() : g.v_degrees();
    std::sort(seq.degrees.begin(), seq.degrees.end());
    return seq;
}

namespace {

// Column permutations are restricted to blocks of equal column degree; an
// isomorphism maps columns to columns of the same degree, so minimizing over
// these permutations (with rows fully sorted per arrangement) is constant on
// isomorphism classes and separates distinct ones.
struct ColumnBlocks {
    std::vector<std::vector<int>> blocks;  // original column indices, grouped
};

ColumnBlocks column_blocks(const std::vector<std::uint64_t>& rows, int n, int m) {
    std::vector<int> deg(static_cast<std::size_t>(m), 0);
    for (int u = 0; u < n; ++u) {
        std::uint64_t r = rows[static_cast<std::size_t>(u)];
        while (r) {
            deg[static_cast<std::size_t>(std::countr_zero(r))]++;
            r &= r - 1;
        }
    }
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[static_cast<std::size_t>(a)] < deg[static_cast<std::size_t>(b)]; });
    ColumnBlocks cb;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() &&
               deg[static_cast<std::size_t>(order[j])] == deg[static_cast<std::size_t>(order[i])]) {
            ++j;
        }
        cb.blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                               order.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
    }
    return cb;
}

// Minimal sorted-row form over all block-respecting column permutations.
std::vector<std::uint64_t> min_form(const std::vector<std::uint64_t>& rows, int n, int m) {
    ColumnBlocks cb = column_blocks(rows, n, m);
    for (auto& b : cb.blocks) std::sort(b.begin(), b.end());

    std::vector<std::uint64_t> best;
    std::vector<int> pos(static_cast<std::size_t>(m));
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(n));

    // Odometer over per-block permutations.
    auto apply = [&]() {
        int p = 0;
        for (const auto& b : cb.blocks) {
            for (int c : b) pos[static_cast<std::size_t>(c)] = p++;
        }
        for (int u = 0; u < n; ++u) {
            std::uint64_t r = rows[static_cast<std::size_t>(u)];
            std::uint64_t out = 0;
            while (r) {
                out |= 1ULL << pos[static_cast<std::size_t>(std::countr_zero(r))];
                r &= r - 1;
            }
            cur[static_cast<std::size_t>(u)] = out;
        }
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    };

    std::size_t nblocks = cb.blocks.size();
    auto advance = [&]() -> bool {
        for (std::size_t i = 0; i < nblocks; ++i) {
            if (std::next_permutation(cb.blocks[i].begin(), cb.blocks[i].end())) return true;
            // wrapped around; carry to next block
        }
        return false;
    };

    do {
        apply();
    } while (advance());
    return best;
}

void append_u32(std::string& out, std::uint32_t x) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<char>((x >> s) & 0xff));
}

void append_u64(std::string& out, std::uint64_t x) {
    for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<char>((x >> s) & 0xff));
}

std::string encode_key(int n, int m, bool swap_policy, const std::vector<std::uint64_t>& form) {
    std::string bytes;
    bytes.reserve(9 + form.size() * 8);
    append_u32(bytes, static_cast<std::uint32_t>(n));
    append_u32(bytes, static_cast<std::uint32_t>(m));
    bytes.push_back(swap_policy ? 1 : 0);
    for (auto r : form) append_u64(bytes, r);
    return bytes;
}

}  // namespace

CanonicalKey canonical_key(const BipartiteGraph& g, bool allow_side_swap) {
    // Work with the smaller side as columns so the permutation space stays
    // bounded by min(n,m)!; the choice is a function of (n,m), hence stable.
    const bool flip = g.m() > g.n();
    BipartiteGraph base = flip ? g.transposed() : g;
    std::vector<std::uint64_t> form = min_form(base.rows(), base.n(), base.m());
    if (allow_side_swap && g.n() == g.m()) {
        std::vector<std::uint64_t> alt = min_form(g.transposed().rows(), g.m(), g.n());
        if (alt < form) form = alt;
    }
    return CanonicalKey{encode_key(g.n(), g.m(), allow_side_swap && g.n() == g.m(), form)};
}

std::string CanonicalKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

BipartiteGraph parse_bmat(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty input, expected \"n m\" header", 1);
    std::istringstream header(line);
    long long n = 0, m = 0;
    if (!(header >> n >> m)) throw parse_error("malformed header, expected \"n m\"", 1);
    std::string rest;
    if (header >> rest) throw parse_error("trailing content after header", 1);
    if (n < 1 || m < 1 || m > BipartiteGraph::kMaxSide || n > (1 << 20)) {
        throw parse_error("header sizes out of range", 1);
    }
    std::vector<std::uint64_t> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw parse_error("expected " + std::to_string(n) + " rows, got " + std::to_string(i),
                              i + 2);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != static_cast<std::size_t>(m)) {
            throw parse_error("row has length " + std::to_string(line.size()) + ", expected " +
                                  std::to_string(m),
                              i + 2);
        }
        std::uint64_t r = 0;
        for (int j = 0; j < m; ++j) {
            char c = line[static_cast<std::size_t>(j)];
            if (c == '1') {
                r |= 1ULL << j;
            } else if (c != '0') {
                throw parse_error(std::string("illegal character '") + c + "' in row", i + 2);
            }
        }
        rows.push_back(r);
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) throw parse_error("unexpected extra content", static_cast<int>(n) + 2);
    }
    return BipartiteGraph::from_rows(static_cast<int>(n), static_cast<int>(m), std::move(rows));
}

std::string serialize_bmat(const BipartiteGraph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
    for (int u = 0; u < g.n(); ++u) {
        for (int v = 0; v < g.m(); ++v) out.push_back(g.has_edge(u, v) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string to_dot(const BipartiteGraph& g, const std::string& name) {
    std::string out = "graph " + name + " {\n";
    out += "  rankdir=LR;\n";
    out += "  { rank=same;";
    for (int u = 0; u < g.n(); ++u) out += " u" + std::to_string(u) + ";";
    out += " }\n  { rank=same;";
    for (int v = 0; v < g.m(); ++v) out += " v" + std::to_string(v) + ";";
    out += " }\n";
    for (int u = 0; u < g.n(); ++u) {
        for (int v = 0; v < g.m(); ++v) {
            if (g.has_edge(u, v)) {
                out += "  u" + std::to_string(u) + " -- v" + std::to_string(v) + ";\n";
            }
        }
    }
    out += "}\n";
    return out;
}

std::vector<Component> components(const BipartiteGraph& g) {
    std::vector<int> comp_u(static_cast<std::size_t>(g.n()), -1);
    std::vector<int> comp_v(static_cast<std::size_t>(g.m()), -1);
    std::vector<Component> out;
    auto bfs = [&](int su, int sv) {
        Component c;
        std::vector<std::pair<bool, int>> stack;  // (is_u, index)
        if (su >= 0) {
            comp_u[static_cast<std::size_t>(su)] = static_cast<int>(out.size());
            stack.push_back({true, su});
        } else {
            comp_v[static_cast<std::size_t>(sv)] = static_cast<int>(out.size());
            stack.push_back({false, sv});
        }
        while (!stack.empty()) {
            auto [is_u, idx] = stack.back();
            stack.pop_back();
            if (is_u) {
                c.us.push_back(idx);
                std::uint64_t r = g.row(idx);
                while (r) {
                    int v = std::countr_zero(r);
                    r &= r - 1;
                    if (comp_v[static_cast<std::size_t>(v)] < 0) {
                        comp_v[static_cast<std::size_t>(v)] = static_cast<int>(out.size());
                        stack.push_back({false, v});
                    }
                }
            } else {
                c.vs.push_back(idx);
                for (int u = 0; u < g.n(); ++u) {
                    if (g.has_edge(u, idx) && comp_u[static_cast<std::size_t>(u)] < 0) {
                        comp_u[static_cast<std::size_t>(u)] = static_cast<int>(out.size());
                        stack.push_back({true, u});
                    }
                }
            }
        }
        std::sort(c.us.begin(), c.us.end());
        std::sort(c.vs.begin(), c.vs.end());
        out.push_back(std::move(c));
    };
    for (int u = 0; u < g.n(); ++u) {
        if (comp_u[static_cast<std::size_t>(u)] < 0) bfs(u, -1);
    }
    for (int v = 0; v < g.m(); ++v) {
        if (comp_v[static_cast<std::size_t>(v)] < 0) bfs(-1, v);
    }
    return out;
}

bool is_connected(const BipartiteGraph& g) { return components(g).size() == 1; }

}  // namespace bitree
