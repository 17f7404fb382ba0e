#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linerec/decompose.hpp"
#include "linerec/embedding.hpp"
#include "linerec/graph.hpp"
#include "linerec/rational.hpp"

namespace linerec {

/// Per-edge alignment of a realization against the reference embedding:
/// +1 when g and f agree on the oriented difference across the edge,
/// -1 when they are opposite. Indexed like Graph::edges().
struct SignAssignment {
    std::vector<int> signs;
};

/// An injective placement realizing all revealed edge lengths.
struct AlternativeEmbedding {
    std::vector<Rational> positions;
};

/// One realization class: the canonical sign pattern together with the
/// induced positions (anchor held at its reference position).
struct Realization {
    SignAssignment signs;
    std::vector<Rational> positions;
};

struct RealizationList {
    std::vector<Realization> classes;
    bool exhausted = true;
};

enum class Verdict { kFalse, kTrue, kUnknown };

namespace detail {

/// Depth-first branch-and-prune over realizations of a connected graph.
/// Positions are propagated along a DFS tree, one +- branch per tree edge;
/// every edge back to an already placed vertex is checked immediately, as is
/// injectivity. Exactly one representative per global-flip pair {g, c-g} is
/// visited (the first tree edge is pinned to +1), and the identity comes
/// first. `visit` gets the full position vector and returns false to stop.
/// Returns true iff the whole space was covered within `budget` search nodes.
template <typename Visit>
inline bool for_each_realization(const Graph& g, const std::vector<Rational>& f,
                                 std::uint64_t budget, Visit&& visit) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    if (!is_connected(g)) throw std::invalid_argument("realization search needs a connected graph");

    // DFS preorder so that cycles close as early as possible.
    std::vector<int> order, parent(n, -1);
    std::vector<char> seen(n, 0);
    {
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int ei : g.incident(v)) {
                int w = g.edge(ei).other(v);
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    stack.push_back(w);
                }
            }
        }
    }
    // edges from each vertex to vertices placed before it (parent excluded)
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;
    std::vector<std::vector<int>> checks(n);
    for (const Edge& e : g.edges()) {
        int later = rank[e.u] > rank[e.v] ? e.u : e.v;
        int earlier = e.other(later);
        if (parent[later] != earlier) checks[later].push_back(earlier);
    }

    std::vector<Rational> pos(n);
    std::set<Rational> used;
    pos[order[0]] = f[order[0]];
    used.insert(pos[order[0]]);

    std::uint64_t nodes = 0;
    bool stopped = false, truncated = false;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (!visit(std::as_const(pos))) stopped = true;
            return;
        }
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        int v = order[i];
        Rational diff = f[v] - f[parent[v]];
        for (int s = 0; s < 2; ++s) {
            if (i == 1 && s == 1) break;  // pin the first tree edge: one rep per flip pair
            Rational cand = pos[parent[v]] + (s == 0 ? diff : Rational(-diff));
            bool ok = !used.count(cand);
            for (std::size_t c = 0; ok && c < checks[v].size(); ++c) {
                int w = checks[v][c];
                ok = rat_abs(cand - pos[w]) == rat_abs(f[v] - f[w]);
            }
            if (!ok) continue;
            pos[v] = cand;
            used.insert(cand);
            rec(i + 1);
            used.erase(cand);
            if (stopped || truncated) return;
        }
    };
    rec(1);
    return !truncated;
}

inline SignAssignment signs_of(const Graph& g, const std::vector<Rational>& f,
                               const std::vector<Rational>& pos) {
    SignAssignment s;
    s.signs.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        s.signs.push_back(pos[e.u] - pos[e.v] == f[e.u] - f[e.v] ? +1 : -1);
    return s;
}

}  // namespace detail

/// All realization classes of a connected embedded graph, canonically
/// ordered, the trivial (all +1) class first. exhausted = false when the
/// node budget was hit before covering the space.
inline RealizationList enumerate_realizations(const EmbeddedGraph& eg,
                                              std::uint64_t budget = std::uint64_t(1) << 20) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    RealizationList out;
    out.exhausted = detail::for_each_realization(
        eg.graph, eg.positions, budget, [&](const std::vector<Rational>& pos) {
            out.classes.push_back({detail::signs_of(eg.graph, eg.positions, pos), pos});
            return true;
        });
    return out;
}

namespace detail {

struct ViolationSearch {
    std::optional<std::vector<Rational>> realization;
    bool exhausted = true;
};

/// First realization (of the connected component containing u and v) whose
/// u-v distance differs from the reference. Vertices outside the component
/// keep their reference positions.
inline ViolationSearch find_violating_realization(const EmbeddedGraph& eg, int u, int v,
                                                  std::uint64_t budget) {
    std::vector<int> comp_id = component_ids(eg.graph);
    std::vector<int> verts;
    for (int x = 0; x < eg.graph.vertex_count(); ++x)
        if (comp_id[x] == comp_id[u]) verts.push_back(x);
    std::vector<int> local;
    Graph sub = induced_subgraph(eg.graph, verts, &local);
    std::vector<Rational> f_sub;
    for (int x : verts) f_sub.push_back(eg.positions[x]);
    Rational ref = rat_abs(eg.positions[u] - eg.positions[v]);

    ViolationSearch result;
    result.exhausted = detail::for_each_realization(
        sub, f_sub, budget, [&](const std::vector<Rational>& pos) {
            if (rat_abs(pos[local[u]] - pos[local[v]]) == ref) return true;
            std::vector<Rational> full = eg.positions;
            for (std::size_t i = 0; i < verts.size(); ++i) full[verts[i]] = pos[i];
            result.realization = std::move(full);
            return false;
        });
    return result;
}

}  // namespace detail

/// Exact oracle. kUnknown only under budget exhaustion; pairs in different
/// components are non-reconstructible without search.
inline Verdict is_pair_reconstructible(const EmbeddedGraph& eg, int u, int v,
                                       std::uint64_t budget = std::uint64_t(1) << 20) {
    const int n = eg.graph.vertex_count();
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("need two distinct vertices");
    std::vector<int> comp_id = component_ids(eg.graph);
    if (comp_id[u] != comp_id[v]) return Verdict::kFalse;
    detail::ViolationSearch s = detail::find_violating_realization(eg, u, v, budget);
    if (s.realization) return Verdict::kFalse;
    return s.exhausted ? Verdict::kTrue : Verdict::kUnknown;
}

// ---------------------------------------------------------------------------
// Witness partitions
// ---------------------------------------------------------------------------

/// Connected partition with cross-block offsets. Offsets are stored once per
/// unordered pair with key (i, j), i < j, meaning f(a_i) - f(a_j) for a cross
/// edge a_i in S_i, a_j in S_j; the reverse offset is the negation and the
/// diagonal is zero by convention.
struct WitnessPartition {
    std::vector<std::vector<int>> blocks;
    std::map<std::pair<int, int>, Rational> offsets;
};

struct WitnessCheck {
    bool ok = false;
    std::string reason;  // machine-readable first violation, empty when ok
};

namespace detail {
inline std::optional<Rational> witness_offset(const WitnessPartition& w, int i, int j) {
    if (i == j) return Rational(0);
    auto it = w.offsets.find({std::min(i, j), std::max(i, j)});
    if (it == w.offsets.end()) return std::nullopt;
    return i < j ? it->second : Rational(-it->second);
}
}  // namespace detail

/// Checks all witness conditions exactly: block connectivity, the cross-edge
/// bound 2|W| <= |E|, the per-cross-edge offset equations, and the zero-sum
/// condition on a fundamental cycle basis. The cycle condition is stated for
/// every cycle; a basis suffices because block-offset sums are additive under
/// the symmetric-difference composition of cycles.
inline WitnessCheck validate_witness_detail(const EmbeddedGraph& eg, const WitnessPartition& w) {
    const Graph& g = eg.graph;
    const int n = g.vertex_count();
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < w.blocks.size(); ++b) {
        if (w.blocks[b].empty()) throw std::invalid_argument("empty witness block");
        for (int x : w.blocks[b]) {
            if (x < 0 || x >= n || block_of[x] >= 0)
                throw std::invalid_argument("blocks must partition the vertex set");
            block_of[x] = static_cast<int>(b);
        }
    }
    for (int x = 0; x < n; ++x)
        if (block_of[x] < 0) throw std::invalid_argument("blocks must cover the vertex set");
    for (const auto& [key, val] : w.offsets)
        if (key.first >= key.second) return {false, "bad-offset-key"};

    for (std::size_t b = 0; b < w.blocks.size(); ++b)
        if (!is_connected(induced_subgraph(g, w.blocks[b])))
            return {false, "block-disconnected:" + std::to_string(b)};

    int cross = 0;
    for (const Edge& e : g.edges())
        if (block_of[e.u] != block_of[e.v]) ++cross;
    if (2 * cross > g.edge_count()) return {false, "cut-too-large"};

    for (const Edge& e : g.edges()) {
        int bu = block_of[e.u], bv = block_of[e.v];
        if (bu == bv) continue;
        std::optional<Rational> off = detail::witness_offset(w, bu, bv);
        if (!off) return {false, "offset-missing:" + std::to_string(e.u) + "-" + std::to_string(e.v)};
        if (eg.positions[e.u] - eg.positions[e.v] != *off)
            return {false, "offset-mismatch:" + std::to_string(e.u) + "-" + std::to_string(e.v)};
    }

    std::vector<std::vector<int>> basis = cycle_basis(g);
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const std::vector<int>& cyc = basis[c];
        Rational sum = 0;
        for (std::size_t t = 0; t < cyc.size(); ++t) {
            int a = block_of[cyc[t]], b = block_of[cyc[(t + 1) % cyc.size()]];
            std::optional<Rational> off = detail::witness_offset(w, a, b);
            if (!off) return {false, "offset-missing-on-cycle:" + std::to_string(c)};
            sum += *off;
        }
        if (sum != 0) return {false, "cycle-sum:" + std::to_string(c)};
    }
    return {true, ""};
}

inline bool validate_witness(const EmbeddedGraph& eg, const WitnessPartition& w) {
    return validate_witness_detail(eg, w).ok;
}

/// Witness partition for a non-reconstructible pair: a violating realization
/// g is found, g or its reflection is chosen so that at most half of the
/// edges are anti-aligned, and the blocks are the components left after
/// removing the anti-aligned edges. Blocks are relabeled so u lands in S_1
/// and v in S_2; offsets are read off cross edges.
inline WitnessPartition extract_witness(const EmbeddedGraph& eg, int u, int v,
                                        std::uint64_t budget = std::uint64_t(1) << 20) {
    const Graph& g = eg.graph;
    std::vector<int> comp_id = component_ids(g);
    if (u == v || comp_id[u] != comp_id[v])
        throw std::invalid_argument("extract_witness needs a non-reconstructible same-component pair");
    detail::ViolationSearch s = detail::find_violating_realization(eg, u, v, budget);
    if (!s.realization) throw std::invalid_argument("pair has no violating realization within budget");
    const std::vector<Rational>& gpos = *s.realization;

    SignAssignment signs = detail::signs_of(g, eg.positions, gpos);
    int anti = 0;
    for (int sg : signs.signs)
        if (sg < 0) ++anti;
    // Reflecting g (within u's component; other components are untouched and
    // fully aligned) flips every sign in that component. Pick the side with
    // the smaller anti-aligned set.
    bool flip = 2 * anti > g.edge_count();

    UnionFind uf(g.vertex_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edge(ei);
        bool in_comp = comp_id[e.u] == comp_id[u];
        int sign = (in_comp && flip) ? -signs.signs[ei] : signs.signs[ei];
        if (sign > 0) uf.unite(e.u, e.v);
    }
    std::map<int, int> root_to_block;
    WitnessPartition w;
    auto block_id = [&](int x) {
        int r = uf.find(x);
        auto it = root_to_block.find(r);
        if (it != root_to_block.end()) return it->second;
        int id = static_cast<int>(w.blocks.size());
        root_to_block[r] = id;
        w.blocks.emplace_back();
        return id;
    };
    // u first, v second, remaining blocks in order of smallest vertex
    block_id(u);
    block_id(v);
    if (root_to_block.size() < 2)
        throw std::logic_error("violating realization left u and v in one block");
    std::vector<int> block_of(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) block_of[x] = block_id(x);
    for (int x = 0; x < g.vertex_count(); ++x) w.blocks[block_of[x]].push_back(x);

    for (const Edge& e : g.edges()) {
        int bu = block_of[e.u], bv = block_of[e.v];
        if (bu == bv) continue;
        int a = bu < bv ? e.u : e.v, b = e.other(a);
        std::pair<int, int> key{std::min(bu, bv), std::max(bu, bv)};
        Rational off = eg.positions[a] - eg.positions[b];
        auto [it, fresh] = w.offsets.emplace(key, off);
        if (!fresh && it->second != off)
            throw std::logic_error("inconsistent cross-edge offsets in extracted witness");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Witness probability (Monte Carlo against the closed-form bound)
// ---------------------------------------------------------------------------

struct WitnessProbability {
    double empirical = 0.0;
    double bound = 1.0;
    int exponent = 0;  // V' - C2 - (k-1)
    long long trials = 0;
};

/// Samples uniformly random injections of V(g) into the pool and counts how
/// often the fixed connected partition is a witness (offsets derived
/// existentially from cross edges). The returned bound is
/// (|pool|/2)^-(V'-C2-(k-1)).
inline WitnessProbability estimate_witness_probability(
    const Graph& g, const std::vector<std::vector<int>>& blocks,
    const std::vector<Rational>& pool, long long trials, std::uint64_t seed = 1) {
    const int n = g.vertex_count();
    if (2 * static_cast<std::size_t>(n) > pool.size())
        throw std::invalid_argument("pool too small: need |V| <= |pool|/2");
    if (std::set<Rational>(pool.begin(), pool.end()).size() != pool.size())
        throw std::invalid_argument("pool positions must be pairwise distinct");

    PartitionStats st = partition_stats(g, blocks);
    const int k = static_cast<int>(blocks.size());
    WitnessProbability out;
    out.exponent = st.v_prime - st.c2 - (k - 1);
    out.bound = std::pow(static_cast<double>(pool.size()) / 2.0, -out.exponent);
    out.trials = trials;

    std::vector<int> block_of(n, -1);
    for (int b = 0; b < k; ++b)
        for (int x : blocks[b]) block_of[x] = b;
    std::vector<Edge> cross;
    for (const Edge& e : g.edges())
        if (block_of[e.u] != block_of[e.v]) cross.push_back(e);
    bool cut_ok = 2 * static_cast<int>(cross.size()) <= g.edge_count();
    std::vector<std::vector<int>> basis = cycle_basis(g);

    std::mt19937_64 rng(seed);
    std::vector<int> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Rational> f(n);
    std::map<std::pair<int, int>, Rational> off;

    long long hits = 0;
    for (long long t = 0; t < trials; ++t) {
        // partial Fisher-Yates: the first n entries are a uniform injection
        for (int i = 0; i < n; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
            std::swap(idx[i], idx[pick(rng)]);
            f[i] = pool[idx[i]];
        }
        if (!cut_ok) continue;
        off.clear();
        bool ok = true;
        for (const Edge& e : cross) {
            int a = block_of[e.u] < block_of[e.v] ? e.u : e.v;
            int b = e.other(a);
            std::pair<int, int> key{std::min(block_of[e.u], block_of[e.v]),
                                    std::max(block_of[e.u], block_of[e.v])};
            Rational val = f[a] - f[b];
            auto [it, fresh] = off.emplace(key, val);
            if (!fresh && it->second != val) {
                ok = false;
                break;
            }
        }
        for (std::size_t c = 0; ok && c < basis.size(); ++c) {
            Rational sum = 0;
            const std::vector<int>& cyc = basis[c];
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int a = block_of[cyc[i]], b = block_of[cyc[(i + 1) % cyc.size()]];
                if (a == b) continue;
                auto it = off.find({std::min(a, b), std::max(a, b)});
                sum += a < b ? it->second : Rational(-it->second);
            }
            ok = sum == 0;
        }
        if (ok) ++hits;
    }
    out.empirical = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
    return out;
}

// ---------------------------------------------------------------------------
// Maximal reconstructible subsets
// ---------------------------------------------------------------------------

struct ReconReport {
    std::vector<std::pair<int, int>> reconstructible_pairs;
    std::vector<std::vector<int>> maximal_subsets;
    bool exhausted = true;
};

namespace detail {

/// At most 3 subsets of vals (including the empty one) summing to zero,
/// counted by meet-in-the-middle; the count is capped at 3 since callers only
/// distinguish "exactly the trivial solutions" from "more".
inline int zero_subset_count_capped(const std::vector<Integer>& vals) {
    const int n = static_cast<int>(vals.size());
    const int h = n / 2;
    auto sums = [&](int lo, int hi) {
        std::vector<Integer> out{Integer(0)};
        for (int i = lo; i < hi; ++i) {
            std::size_t sz = out.size();
            out.reserve(2 * sz);
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] + vals[i]);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<Integer> a = sums(0, h), b = sums(h, n);
    long long count = 0;
    std::size_t j = b.size();
    for (std::size_t i = 0; i < a.size() && count < 3;) {
        Integer target = -a[i];
        while (j > 0 && b[j - 1] > target) --j;
        std::size_t j2 = j;
        while (j2 > 0 && b[j2 - 1] == target) --j2;
        long long bmult = static_cast<long long>(j - j2);
        std::size_t i2 = i;
        while (i2 < a.size() && a[i2] == a[i]) ++i2;
        count += static_cast<long long>(i2 - i) * bmult;
        i = i2;
    }
    return static_cast<int>(std::min<long long>(count, 3));
}

/// Rigidity certificate for a biconnected block under positions f: if, for
/// every cycle of some fundamental basis, the only zero-sum subsets of the
/// oriented edge differences are the empty and full ones, and the basis
/// cycles tie all edges of the block into one class, then every realization
/// of the block is the identity or the global reflection.
///
/// Why: a realization corresponds to a flip set F (edges with sign -1), and
/// cycle consistency forces sum over F-cap-C of the oriented differences to
/// vanish on each basis cycle C (the full-cycle sum is always zero). The
/// subset-sum condition pins F-cap-C to empty or all of C, so F is a union of
/// the classes joined by the cycles; a single covering class leaves only the
/// empty and full flip sets.
inline bool block_rigidity_certificate(const Graph& b, const std::vector<Rational>& f,
                                       int max_cycle_len = 40) {
    const int n = b.vertex_count();
    const int m = b.edge_count();
    if (m <= 1) return true;
    if (m - n + 1 <= 0) return true;  // a tree block is a single edge anyway

    // fundamental basis from a BFS tree; try a few roots, keep the shortest
    auto basis_from = [&](int root) {
        std::vector<int> par(n, -2), pare(n, -1), depth(n, 0), order;
        par[root] = -1;
        std::vector<int> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            order.push_back(v);
            for (int ei : b.incident(v)) {
                int w = b.edge(ei).other(v);
                if (par[w] == -2) {
                    par[w] = v;
                    pare[w] = ei;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        std::vector<char> in_tree(m, 0);
        for (int v : order)
            if (pare[v] >= 0) in_tree[pare[v]] = 1;
        std::vector<std::vector<int>> cycles;
        for (int ei = 0; ei < m; ++ei) {
            if (in_tree[ei]) continue;
            int x = b.edge(ei).u, y = b.edge(ei).v;
            std::vector<int> up_x{x}, up_y{y};
            while (depth[x] > depth[y]) up_x.push_back(x = par[x]);
            while (depth[y] > depth[x]) up_y.push_back(y = par[y]);
            while (x != y) {
                up_x.push_back(x = par[x]);
                up_y.push_back(y = par[y]);
            }
            std::vector<int> cyc = up_x;
            for (auto it = up_y.rbegin() + 1; it != up_y.rend(); ++it) cyc.push_back(*it);
            cycles.push_back(std::move(cyc));
        }
        return cycles;
    };
    std::vector<std::vector<int>> best;
    std::size_t best_max = 0;
    int hub = 0;
    for (int v = 1; v < n; ++v)
        if (b.degree(v) > b.degree(hub)) hub = v;
    for (int root : {0, hub, n / 2}) {
        std::vector<std::vector<int>> cand = basis_from(root);
        std::size_t mx = 0;
        for (const auto& c : cand) mx = std::max(mx, c.size());
        if (best.empty() || mx < best_max) {
            best = std::move(cand);
            best_max = mx;
        }
    }
    if (static_cast<int>(best_max) > max_cycle_len) return false;

    UnionFind classes(m);
    std::vector<char> covered(m, 0);
    for (const std::vector<int>& cyc : best) {
        const std::size_t r = cyc.size();
        std::vector<Integer> diffs;
        Integer scale = 1;
        for (std::size_t t = 0; t < r; ++t) {
            Rational d = f[cyc[(t + 1) % r]] - f[cyc[t]];
            scale = boost::multiprecision::lcm(scale, rat_den(d));
        }
        int first = -1;
        for (std::size_t t = 0; t < r; ++t) {
            Rational d = (f[cyc[(t + 1) % r]] - f[cyc[t]]) * scale;
            diffs.push_back(rat_num(d));
            int ei = b.edge_index(cyc[t], cyc[(t + 1) % r]);
            covered[ei] = 1;
            if (first < 0) first = ei;
            else classes.unite(first, ei);
        }
        if (zero_subset_count_capped(diffs) != 2) return false;
    }
    for (int ei = 1; ei < m; ++ei)
        if (!covered[ei] || classes.find(ei) != classes.find(0)) return false;
    return covered[0];
}

/// Searches for an injective completion of fixed 2-core positions to the
/// pendant forest (each pendant vertex hangs off exactly one earlier vertex,
/// so only injectivity can prune). Returns the verdict; `exhausted` reports
/// whether a negative answer is conclusive.
inline bool has_injective_extension(const Graph& g, const std::vector<Rational>& f,
                                    const std::vector<char>& core_mask,
                                    const std::vector<Rational>& core_pos,
                                    std::uint64_t budget, bool* exhausted) {
    const int n = g.vertex_count();
    std::vector<int> order, parent(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (core_mask[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int ei : g.incident(v)) {
            int w = g.edge(ei).other(v);
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = v;
                order.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::vector<Rational> pos(n);
    std::set<Rational> used;
    for (int v = 0; v < n; ++v)
        if (core_mask[v]) {
            pos[v] = core_pos[v];
            used.insert(pos[v]);
        }
    std::uint64_t nodes = 0;
    bool truncated = false, found = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == order.size()) {
            found = true;
            return;
        }
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        int v = order[i];
        Rational diff = f[v] - f[parent[v]];
        for (int s = 0; s < 2; ++s) {
            Rational cand = pos[parent[v]] + (s == 0 ? diff : Rational(-diff));
            if (used.count(cand)) continue;
            pos[v] = cand;
            used.insert(cand);
            rec(i + 1);
            used.erase(cand);
            if (found || truncated) return;
        }
    };
    rec(0);
    *exhausted = !truncated;
    return found;
}

/// Bron-Kerbosch with pivoting on a small word-packed adjacency matrix.
inline void bron_kerbosch(const std::vector<std::vector<std::uint64_t>>& adj, int n,
                          std::vector<std::uint64_t>& r, std::vector<std::uint64_t> p,
                          std::vector<std::uint64_t> x,
                          std::vector<std::vector<int>>& out, std::size_t cap) {
    auto empty = [](const std::vector<std::uint64_t>& s) {
        for (std::uint64_t w : s)
            if (w) return false;
        return true;
    };
    if (out.size() >= cap) return;
    if (empty(p) && empty(x)) {
        std::vector<int> clique;
        for (int v = 0; v < n; ++v)
            if (r[v >> 6] >> (v & 63) & 1) clique.push_back(v);
        out.push_back(std::move(clique));
        return;
    }
    // pivot: vertex of P union X with the most neighbours in P
    int pivot = -1, best = -1;
    for (int v = 0; v < n; ++v) {
        if (!((p[v >> 6] | x[v >> 6]) >> (v & 63) & 1)) continue;
        int cnt = 0;
        for (std::size_t w = 0; w < p.size(); ++w)
            cnt += __builtin_popcountll(p[w] & adj[v][w]);
        if (cnt > best) {
            best = cnt;
            pivot = v;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!(p[v >> 6] >> (v & 63) & 1)) continue;
        if (pivot >= 0 && (adj[pivot][v >> 6] >> (v & 63) & 1)) continue;
        std::vector<std::uint64_t> np(p.size()), nx(p.size());
        for (std::size_t w = 0; w < p.size(); ++w) {
            np[w] = p[w] & adj[v][w];
            nx[w] = x[w] & adj[v][w];
        }
        r[v >> 6] |= std::uint64_t(1) << (v & 63);
        bron_kerbosch(adj, n, r, std::move(np), std::move(nx), out, cap);
        r[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
        p[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
        x[v >> 6] |= std::uint64_t(1) << (v & 63);
    }
}

/// Components of sub minus one vertex, with a per-component flag saying
/// whether reflecting that component about the removed vertex keeps the
/// global position multiset injective.
struct ReflectInfo {
    std::vector<int> comp;   // comp[a] = -1
    std::vector<char> inj;   // per component id
};

inline ReflectInfo reflect_info(const Graph& sub, const std::vector<Rational>& f, int a,
                                const std::map<Rational, int>& value_to_vertex) {
    const int n = sub.vertex_count();
    ReflectInfo info;
    info.comp.assign(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (s == a || info.comp[s] >= 0) continue;
        info.comp[s] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int ei : sub.incident(v)) {
                int w = sub.edge(ei).other(v);
                if (w != a && info.comp[w] < 0) {
                    info.comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    info.inj.assign(next, 1);
    for (int v = 0; v < n; ++v) {
        if (v == a) continue;
        Rational mirrored = 2 * f[a] - f[v];
        auto it = value_to_vertex.find(mirrored);
        if (it != value_to_vertex.end() && info.comp[it->second] != info.comp[v])
            info.inj[info.comp[v]] = 0;
    }
    return info;
}

}  // namespace detail

/// Pairwise reconstructibility relation and its maximal cliques, computed per
/// connected component via the block decomposition. Non-adjacent pairs inside
/// one biconnected block are settled by the block's realizations: a cycle-wise
/// subset-sum certificate proves most blocks admit only the trivial
/// realizations (so all their pairs are reconstructible); otherwise the
/// component falls back to exhaustive realization enumeration. Pairs separated
/// by a cut vertex are broken by reflecting one side about a separator,
/// falling back to the exhaustive oracle when the reflection collides or
/// coincidentally preserves the distance. Undecided pairs are conservatively
/// treated as non-reconstructible and flagged via exhausted = false; a
/// truncated enumeration likewise breaks every pair it failed to settle, so
/// reported subsets are always sound lower bounds.
inline ReconReport maximal_reconstructible_subsets(const EmbeddedGraph& eg,
                                                   std::uint64_t budget = std::uint64_t(1) << 20) {
    ReconReport report;
    const Graph& g = eg.graph;
    std::vector<std::vector<int>> comps = connected_components(g);
    constexpr int kOracleLimit = 24;   // fall back to the exhaustive oracle below this size
    constexpr int kPairLimit = 4000;   // above this, undecided pairs are just flagged

    for (const std::vector<int>& verts : comps) {
        const int cn = static_cast<int>(verts.size());
        if (cn == 1) {
            report.maximal_subsets.push_back({verts[0]});
            continue;
        }
        std::vector<int> dummy;
        Graph sub = induced_subgraph(g, verts, &dummy);
        std::vector<Rational> f(cn);
        for (int i = 0; i < cn; ++i) f[i] = eg.positions[verts[i]];
        EmbeddedGraph seg(sub, f);

        std::vector<std::vector<char>> broken(cn, std::vector<char>(cn, 0));

        BlockDecomposition bd = biconnected_components(sub);
        const int nb = static_cast<int>(bd.block_vertices.size());
        std::vector<std::vector<int>> vblocks(cn);
        for (int b = 0; b < nb; ++b)
            for (int v : bd.block_vertices[b]) vblocks[v].push_back(b);

        bool all_certified = true;
        for (int b = 0; b < nb && all_certified; ++b) {
            if (bd.block_edges[b].size() <= 1) continue;
            std::vector<int> local;
            Graph bg = induced_subgraph(sub, bd.block_vertices[b], &local);
            std::vector<Rational> bf;
            for (int v : bd.block_vertices[b]) bf.push_back(f[v]);
            all_certified = detail::block_rigidity_certificate(bg, bf);
        }

        if (all_certified) {
            // same-block pairs are reconstructible; cross-block pairs are
            // broken by a reflection about a separating cut vertex
            auto common_block = [&](int a, int b) {
                for (int x : vblocks[a])
                    for (int y : vblocks[b])
                        if (x == y) return true;
                return false;
            };
            // block-cut tree: nodes 0..nb-1 are blocks, then one per cut vertex
            std::vector<int> cut_id(cn, -1), cut_vertex;
            for (int v = 0; v < cn; ++v)
                if (bd.is_cut[v]) {
                    cut_id[v] = static_cast<int>(cut_vertex.size());
                    cut_vertex.push_back(v);
                }
            const int ncuts = static_cast<int>(cut_vertex.size());
            std::vector<std::vector<int>> bc_adj(nb + ncuts);
            for (int b = 0; b < nb; ++b)
                for (int v : bd.block_vertices[b])
                    if (bd.is_cut[v]) {
                        bc_adj[b].push_back(nb + cut_id[v]);
                        bc_adj[nb + cut_id[v]].push_back(b);
                    }
            auto node_of = [&](int v) {
                return bd.is_cut[v] ? nb + cut_id[v] : vblocks[v][0];
            };
            std::map<Rational, int> value_to_vertex;
            for (int v = 0; v < cn; ++v) value_to_vertex[f[v]] = v;
            std::map<int, detail::ReflectInfo> reflect_cache;
            std::vector<int> bc_parent(nb + ncuts);

            const bool huge = static_cast<long long>(cn) * cn > 2LL * kPairLimit * kPairLimit;
            for (int p = 0; p < cn && !huge; ++p) {
                // one BFS on the block-cut tree per p serves all partners
                std::fill(bc_parent.begin(), bc_parent.end(), -2);
                int src = node_of(p);
                bc_parent[src] = -1;
                std::vector<int> queue{src};
                for (std::size_t head = 0; head < queue.size(); ++head)
                    for (int w : bc_adj[queue[head]])
                        if (bc_parent[w] == -2) {
                            bc_parent[w] = queue[head];
                            queue.push_back(w);
                        }
                for (int q = p + 1; q < cn; ++q) {
                    if (sub.has_edge(p, q) || common_block(p, q)) continue;
                    // cut vertices strictly between p and q on the tree path
                    std::vector<int> separators;
                    for (int node = node_of(q); node >= 0; node = bc_parent[node])
                        if (node >= nb) {
                            int a = cut_vertex[node - nb];
                            if (a != p && a != q) separators.push_back(a);
                        }
                    bool decided = false;
                    for (int a : separators) {
                        if (2 * f[a] == f[p] + f[q]) continue;  // reflection keeps the distance
                        auto it = reflect_cache.find(a);
                        if (it == reflect_cache.end())
                            it = reflect_cache
                                     .emplace(a, detail::reflect_info(sub, f, a, value_to_vertex))
                                     .first;
                        const detail::ReflectInfo& info = it->second;
                        if (info.comp[p] == info.comp[q]) continue;  // not a separator for this pair
                        if (info.inj[info.comp[p]] || info.inj[info.comp[q]]) {
                            broken[p][q] = broken[q][p] = 1;
                            decided = true;
                            break;
                        }
                    }
                    if (!decided) {
                        if (cn <= kOracleLimit) {
                            Verdict verdict = is_pair_reconstructible(seg, p, q, budget);
                            if (verdict != Verdict::kTrue) {
                                broken[p][q] = broken[q][p] = 1;
                                if (verdict == Verdict::kUnknown) report.exhausted = false;
                            }
                        } else {
                            broken[p][q] = broken[q][p] = 1;
                            report.exhausted = false;
                        }
                    }
                }
            }
            if (huge) {
                // far too many pairs to verify; keep only the certain ones
                report.exhausted = false;
                for (int p = 0; p < cn; ++p)
                    for (int q = p + 1; q < cn; ++q)
                        if (!sub.has_edge(p, q) && !common_block(p, q))
                            broken[p][q] = broken[q][p] = 1;
            }
        } else {
            // fallback: exhaustive realization search over the 2-core plus
            // explicit handling of the pendant forest
            std::vector<char> core_mask = two_core_mask(sub);
            std::vector<int> core_verts;
            for (int v = 0; v < cn; ++v)
                if (core_mask[v]) core_verts.push_back(v);

            bool core_settled = false;
            if (!core_verts.empty()) {
                std::vector<int> core_local;
                Graph core = induced_subgraph(sub, core_verts, &core_local);
                std::vector<Rational> core_f;
                for (int v : core_verts) core_f.push_back(f[v]);
                std::uint64_t ext_budget = std::min<std::uint64_t>(budget, std::uint64_t(1) << 16);
                core_settled = detail::for_each_realization(
                    core, core_f, budget, [&](const std::vector<Rational>& cpos) {
                        if (cpos == core_f) return true;  // identity breaks nothing
                        std::vector<Rational> placed(cn);
                        for (std::size_t i = 0; i < core_verts.size(); ++i)
                            placed[core_verts[i]] = cpos[i];
                        bool ext_exhausted = true;
                        bool realizable = detail::has_injective_extension(
                            sub, f, core_mask, placed, ext_budget, &ext_exhausted);
                        if (!realizable && !ext_exhausted) {
                            report.exhausted = false;
                            realizable = true;  // conservative: assume the class occurs
                        }
                        if (realizable) {
                            for (std::size_t a = 0; a < core_verts.size(); ++a)
                                for (std::size_t b = a + 1; b < core_verts.size(); ++b) {
                                    if (rat_abs(cpos[a] - cpos[b]) !=
                                        rat_abs(core_f[a] - core_f[b])) {
                                        broken[core_verts[a]][core_verts[b]] = 1;
                                        broken[core_verts[b]][core_verts[a]] = 1;
                                    }
                                }
                        }
                        return true;
                    });
            } else {
                core_settled = true;
            }
            if (!core_settled) {
                // sound lower bound: break every unverified core pair
                report.exhausted = false;
                for (std::size_t a = 0; a < core_verts.size(); ++a)
                    for (std::size_t b = a + 1; b < core_verts.size(); ++b)
                        if (!sub.has_edge(core_verts[a], core_verts[b])) {
                            broken[core_verts[a]][core_verts[b]] = 1;
                            broken[core_verts[b]][core_verts[a]] = 1;
                        }
            }

            // pairs with a pendant endpoint: reflect the far side of the
            // separator neighbour; this always changes the pair distance
            const bool pendant_feasible = static_cast<long long>(cn) * cn <= 1LL * kPairLimit * 600;
            if (!pendant_feasible) report.exhausted = false;
            std::vector<int> bfs_parent(cn);
            for (int q = 0; q < cn && pendant_feasible; ++q) {
                std::fill(bfs_parent.begin(), bfs_parent.end(), -2);
                bfs_parent[q] = -1;
                std::vector<int> queue{q};
                for (std::size_t head = 0; head < queue.size(); ++head) {
                    int x = queue[head];
                    for (int ei : sub.incident(x)) {
                        int w = sub.edge(ei).other(x);
                        if (bfs_parent[w] == -2) {
                            bfs_parent[w] = x;
                            queue.push_back(w);
                        }
                    }
                }
                for (int p = 0; p < cn; ++p) {
                    if (p == q || core_mask[p] || sub.has_edge(p, q)) continue;
                    if (p < q && !core_mask[q]) continue;  // handled from the other side once
                    int a = bfs_parent[p];
                    // side of p after deleting the separator a
                    std::vector<char> side(cn, 0);
                    side[p] = 1;
                    std::vector<int> stack{p};
                    while (!stack.empty()) {
                        int x = stack.back();
                        stack.pop_back();
                        for (int ei : sub.incident(x)) {
                            int w = sub.edge(ei).other(x);
                            if (w != a && !side[w]) {
                                side[w] = 1;
                                stack.push_back(w);
                            }
                        }
                    }
                    bool injective = !side[q];
                    if (injective) {
                        std::set<Rational> others;
                        for (int x = 0; x < cn; ++x)
                            if (!side[x]) others.insert(f[x]);
                        for (int x = 0; x < cn && injective; ++x)
                            if (side[x]) injective = !others.count(2 * f[a] - f[x]);
                    }
                    if (injective) {
                        broken[p][q] = broken[q][p] = 1;
                    } else if (cn <= kOracleLimit) {
                        Verdict verdict = is_pair_reconstructible(seg, p, q, budget);
                        if (verdict != Verdict::kTrue) {
                            broken[p][q] = broken[q][p] = 1;
                            if (verdict == Verdict::kUnknown) report.exhausted = false;
                        }
                    } else {
                        broken[p][q] = broken[q][p] = 1;
                        report.exhausted = false;
                    }
                }
            }
            if (!pendant_feasible) {
                for (int p = 0; p < cn; ++p)
                    for (int q = p + 1; q < cn; ++q)
                        if ((!core_mask[p] || !core_mask[q]) && !sub.has_edge(p, q))
                            broken[p][q] = broken[q][p] = 1;
            }
        }

        // relation graph: edges of sub plus unbroken evaluated pairs
        const int words = (cn + 63) / 64;
        std::vector<std::vector<std::uint64_t>> adj(cn, std::vector<std::uint64_t>(words, 0));
        for (int a = 0; a < cn; ++a)
            for (int b = a + 1; b < cn; ++b) {
                bool related = sub.has_edge(a, b) || !broken[a][b];
                if (related) {
                    adj[a][b >> 6] |= std::uint64_t(1) << (b & 63);
                    adj[b][a >> 6] |= std::uint64_t(1) << (a & 63);
                    report.reconstructible_pairs.emplace_back(std::min(verts[a], verts[b]),
                                                              std::max(verts[a], verts[b]));
                }
            }
        std::vector<std::uint64_t> r(words, 0), p0(words, 0), x0(words, 0);
        for (int v = 0; v < cn; ++v) p0[v >> 6] |= std::uint64_t(1) << (v & 63);
        std::vector<std::vector<int>> cliques;
        detail::bron_kerbosch(adj, cn, r, p0, x0, cliques, 100000);
        if (cliques.size() >= 100000) report.exhausted = false;
        for (std::vector<int>& c : cliques) {
            for (int& v : c) v = verts[v];
            std::sort(c.begin(), c.end());
            report.maximal_subsets.push_back(std::move(c));
        }
    }

    std::sort(report.reconstructible_pairs.begin(), report.reconstructible_pairs.end());
    std::sort(report.maximal_subsets.begin(), report.maximal_subsets.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    return report;
}

}  // namespace linerec
