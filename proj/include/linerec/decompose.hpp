#pragma once

#include <algorithm>
#include <cmath>
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

#include "linerec/graph.hpp"
#include "linerec/rational.hpp"

namespace linerec {

/// True for vertices surviving iterated deletion of degree <= 1 vertices.
inline std::vector<char> two_core_mask(const Graph& g) {
    std::vector<int> deg(g.vertex_count());
    std::vector<char> alive(g.vertex_count(), 1);
    std::vector<int> queue;
    for (int v = 0; v < g.vertex_count(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        if (!alive[v]) continue;
        alive[v] = 0;
        for (int ei : g.incident(v)) {
            int w = g.edge(ei).other(v);
            if (alive[w] && --deg[w] <= 1) queue.push_back(w);
        }
    }
    return alive;
}

/// The 2-core as its own graph; vertex_map (new -> old) optional.
/// Deletion order does not matter; the result is the unique maximal
/// subgraph of minimum degree >= 2 (possibly empty).
inline Graph two_core(const Graph& g, std::vector<int>* vertex_map = nullptr) {
    std::vector<char> alive = two_core_mask(g);
    std::vector<int> verts;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (alive[v]) verts.push_back(v);
    Graph core = induced_subgraph(g, verts);
    if (vertex_map) *vertex_map = verts;
    return core;
}

/// 2-core, maximal bare paths, and the contracted kernel multigraph.
/// Pure-cycle components of the 2-core have no degree-3 vertex and are
/// excluded from the kernel; they are reported separately.
struct KernelDecomposition {
    Graph two_core;                              // reindexed 0..c-1
    std::vector<int> core_vertex_map;            // core index -> original vertex
    std::vector<std::vector<int>> bare_paths;    // vertex sequences in core indices
    MultiGraph kernel;                           // min degree >= 3
    std::vector<int> kernel_vertex_map;          // kernel vertex -> core index
    std::vector<int> edge_path_lengths;          // per kernel edge, edges in the bare path
    std::vector<std::vector<int>> cycle_components;  // pure cycles, core indices
};

inline KernelDecomposition kernelize(const Graph& g) {
    KernelDecomposition kd;
    kd.two_core = two_core(g, &kd.core_vertex_map);
    const Graph& c = kd.two_core;

    std::vector<int> kernel_id(c.vertex_count(), -1);
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (c.degree(v) >= 3) {
            kernel_id[v] = static_cast<int>(kd.kernel_vertex_map.size());
            kd.kernel_vertex_map.push_back(v);
        }
    }

    // Walk degree-2 chains out of every kernel vertex; each core edge is
    // consumed exactly once, so every maximal bare path is found once.
    std::vector<char> used(c.edge_count(), 0);
    std::vector<std::pair<int, int>> kernel_edges;
    for (int kv = 0; kv < static_cast<int>(kd.kernel_vertex_map.size()); ++kv) {
        int start = kd.kernel_vertex_map[kv];
        for (int ei0 : c.incident(start)) {
            if (used[ei0]) continue;
            std::vector<int> path{start};
            int prev = start;
            int ei = ei0;
            while (true) {
                used[ei] = 1;
                int next = c.edge(ei).other(prev);
                path.push_back(next);
                if (kernel_id[next] >= 0) break;
                // interior vertex: degree exactly 2, continue along the other edge
                const auto& inc = c.incident(next);
                ei = (inc[0] == ei) ? inc[1] : inc[0];
                prev = next;
            }
            kd.bare_paths.push_back(path);
            kernel_edges.emplace_back(kv, kernel_id[path.back()]);
            kd.edge_path_lengths.push_back(static_cast<int>(path.size()) - 1);
        }
    }
    kd.kernel = MultiGraph(static_cast<int>(kd.kernel_vertex_map.size()), std::move(kernel_edges));

    // Remaining core edges lie on components that are pure cycles.
    std::vector<char> seen(c.vertex_count(), 0);
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (seen[v] || kernel_id[v] >= 0) continue;
        bool untouched = true;
        for (int ei : c.incident(v)) untouched = untouched && !used[ei];
        if (!untouched) continue;  // interior of an already collected path
        std::vector<int> cyc{v};
        seen[v] = 1;
        int prev = v, ei = c.incident(v)[0];
        while (true) {
            used[ei] = 1;
            int next = c.edge(ei).other(prev);
            if (next == v) break;
            cyc.push_back(next);
            seen[next] = 1;
            const auto& inc = c.incident(next);
            ei = (inc[0] == ei) ? inc[1] : inc[0];
            prev = next;
        }
        kd.cycle_components.push_back(std::move(cyc));
    }
    return kd;
}

/// Maximal bare paths of an arbitrary graph (not of its 2-core): chains whose
/// interior vertices have degree exactly 2, delimited by vertices of other
/// degree. A component that is a pure cycle counts as one closed bare path of
/// length equal to its size. Returns edge-lengths of all maximal bare paths.
inline std::vector<int> bare_path_lengths(const Graph& g) {
    std::vector<int> lengths;
    std::vector<char> used(g.edge_count(), 0);
    for (int start = 0; start < g.vertex_count(); ++start) {
        if (g.degree(start) == 2) continue;
        for (int ei0 : g.incident(start)) {
            if (used[ei0]) continue;
            int len = 0, prev = start, ei = ei0;
            while (true) {
                used[ei] = 1;
                ++len;
                int next = g.edge(ei).other(prev);
                if (g.degree(next) != 2) break;
                const auto& inc = g.incident(next);
                ei = (inc[0] == ei) ? inc[1] : inc[0];
                prev = next;
            }
            lengths.push_back(len);
        }
    }
    // pure cycles
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) != 2) continue;
        bool fresh = !used[g.incident(v)[0]] && !used[g.incident(v)[1]];
        if (!fresh) continue;
        int len = 0, prev = v, ei = g.incident(v)[0];
        while (true) {
            used[ei] = 1;
            ++len;
            int next = g.edge(ei).other(prev);
            if (next == v) break;
            const auto& inc = g.incident(next);
            ei = (inc[0] == ei) ? inc[1] : inc[0];
            prev = next;
        }
        lengths.push_back(len);
    }
    return lengths;
}

/// Phi(S) = e(S,S^c) / d(S), with d(S) the degree sum taken in the whole
/// graph. Minimum over nonempty S with |S| <= |V|/2.
struct ExpansionReport {
    Rational phi;
    std::vector<int> witness_set;
    bool exact = false;
};

namespace detail {
inline Rational phi_of(const Graph& g, const std::vector<char>& in_s) {
    long long cut = 0, dsum = 0;
    for (const Edge& e : g.edges())
        if (in_s[e.u] != in_s[e.v]) ++cut;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (in_s[v]) dsum += g.degree(v);
    if (dsum == 0) return Rational(0);
    return Rational(cut, dsum);
}
}  // namespace detail

inline ExpansionReport expansion_exact(const Graph& g) {
    int n = g.vertex_count();
    if (n > 24) throw std::invalid_argument("exact expansion limited to 24 vertices");
    ExpansionReport rep;
    rep.exact = true;
    std::vector<std::uint32_t> adj(n, 0);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }
    bool have = false;
    long long best_cut = 0, best_d = 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (2 * size > n) continue;
        long long cut = 0, dsum = 0;
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            cut += __builtin_popcount(adj[v] & ~mask);
            dsum += deg[v];
        }
        // Phi = cut/dsum; d(S) = 0 reported as Phi = 0.
        bool better;
        if (dsum == 0)
            better = !have || best_cut > 0;
        else
            better = !have || cut * best_d < best_cut * dsum;
        if (better) {
            have = true;
            best_cut = dsum == 0 ? 0 : cut;
            best_d = dsum == 0 ? 1 : dsum;
            best_mask = mask;
        }
    }
    if (have) {
        rep.phi = Rational(best_cut, best_d);
        for (int v = 0; v < n; ++v)
            if (best_mask >> v & 1) rep.witness_set.push_back(v);
    }
    return rep;
}

/// Local-search upper bound on the minimum Phi; exact = false.
inline ExpansionReport expansion_sampled(const Graph& g, std::uint64_t seed = 1,
                                         int restarts = 32) {
    ExpansionReport rep;
    rep.exact = false;
    int n = g.vertex_count();
    if (n == 0) return rep;
    std::mt19937_64 rng(seed);
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        std::vector<char> in_s(n, 0);
        int start = static_cast<int>(rng() % n);
        in_s[start] = 1;
        int size = 1;
        Rational cur = detail::phi_of(g, in_s);
        std::vector<char> best_local = in_s;
        Rational best_phi = cur;
        while (2 * (size + 1) <= n) {
            // greedily add the vertex that lowers Phi the most
            int pick = -1;
            Rational pick_phi;
            for (int v = 0; v < n; ++v) {
                if (in_s[v]) continue;
                in_s[v] = 1;
                Rational p = detail::phi_of(g, in_s);
                in_s[v] = 0;
                if (pick < 0 || p < pick_phi) {
                    pick = v;
                    pick_phi = p;
                }
            }
            if (pick < 0) break;
            in_s[pick] = 1;
            ++size;
            if (pick_phi < best_phi) {
                best_phi = pick_phi;
                best_local = in_s;
            }
        }
        if (!have || best_phi < rep.phi) {
            have = true;
            rep.phi = best_phi;
            rep.witness_set.clear();
            for (int v = 0; v < n; ++v)
                if (best_local[v]) rep.witness_set.push_back(v);
        }
    }
    return rep;
}

inline ExpansionReport expansion(const Graph& g, bool exact_mode, std::uint64_t seed = 1) {
    return exact_mode ? expansion_exact(g) : expansion_sampled(g, seed);
}

/// True when Phi(S) >= alpha for every candidate S (vacuously for n <= 1).
inline bool is_expander(const Graph& g, const Rational& alpha, bool exact_mode = true,
                        std::uint64_t seed = 1) {
    ExpansionReport rep = expansion(g, exact_mode, seed);
    if (rep.witness_set.empty()) return true;
    return rep.phi >= alpha;
}

// ---------------------------------------------------------------------------
// Weighted pruning process
// ---------------------------------------------------------------------------

struct PruneStep {
    int rule = 0;                     // 1 or 2
    std::vector<int> removed;         // vertices removed at this step
    long long weight_before = 0;      // total edge weight, sum over E(G)
    long long weight_after = 0;
};

struct PruneResult {
    std::vector<int> kept_vertices;   // original indices
    Graph result;                     // induced on kept_vertices
    std::vector<PruneStep> log;
    bool heuristic = false;           // rule-2 search was sampled, not exhaustive
    bool precondition = false;        // m <= c N / 100
    bool size_ok = false;             // |V'| >= N/2
    bool min_deg_ok = false;          // delta(G') >= 2
    bool deg3_ok = false;             // >= N/4 vertices of degree >= 3
    bool expander_ok = false;         // G' is a c/10-expander
    bool expander_exact = false;      // whether the expander check was exact
};

namespace detail {
// Smallest-first exhaustive search for S with e_Gi(S,S^c) < c d_G(S)/10,
// |S| <= |alive|/2. Alive vertex count must be <= 24.
inline std::optional<std::vector<int>> find_sparse_cut_exact(
    const Graph& g, const std::vector<char>& alive, const std::vector<char>& edge_alive,
    const Rational& c10) {
    std::vector<int> verts;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (alive[v]) verts.push_back(v);
    int n = static_cast<int>(verts.size());
    if (n > 24) throw std::invalid_argument("exact cut search limited to 24 alive vertices");
    std::vector<int> pos(g.vertex_count(), -1);
    for (int i = 0; i < n; ++i) pos[verts[i]] = i;
    for (std::uint32_t mask = 1; n > 0 && mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (2 * size > n) continue;
        long long cut = 0;
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            if (!edge_alive[ei]) continue;
            const Edge& e = g.edge(ei);
            bool a = mask >> pos[e.u] & 1, b = mask >> pos[e.v] & 1;
            if (a != b) ++cut;
        }
        long long dsum = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) dsum += g.degree(verts[i]);  // degree in G
        if (Rational(cut) < c10 * dsum) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) s.push_back(verts[i]);
            return s;
        }
    }
    return std::nullopt;
}

// Best-effort violating-set search for larger graphs: greedy growth from
// random seeds, returning the first violating set encountered.
inline std::optional<std::vector<int>> find_sparse_cut_sampled(
    const Graph& g, const std::vector<char>& alive, const std::vector<char>& edge_alive,
    const Rational& c10, std::uint64_t seed) {
    std::vector<int> verts;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (alive[v]) verts.push_back(v);
    int n = static_cast<int>(verts.size());
    if (n == 0) return std::nullopt;
    std::mt19937_64 rng(seed);
    auto violates = [&](const std::set<int>& s) {
        long long cut = 0, dsum = 0;
        for (int v : s) dsum += g.degree(v);
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            if (!edge_alive[ei]) continue;
            const Edge& e = g.edge(ei);
            if (s.count(e.u) != s.count(e.v)) ++cut;
        }
        return Rational(cut) < c10 * dsum;
    };
    for (int r = 0; r < 24; ++r) {
        std::set<int> s{verts[rng() % n]};
        while (2 * (static_cast<int>(s.size())) <= n) {
            if (violates(s)) return std::vector<int>(s.begin(), s.end());
            // expand across an alive boundary edge, preferring to swallow the cut
            std::vector<int> frontier;
            for (int ei = 0; ei < g.edge_count(); ++ei) {
                if (!edge_alive[ei]) continue;
                const Edge& e = g.edge(ei);
                if (s.count(e.u) && !s.count(e.v) && alive[e.v]) frontier.push_back(e.v);
                if (s.count(e.v) && !s.count(e.u) && alive[e.u]) frontier.push_back(e.u);
            }
            if (frontier.empty()) break;
            s.insert(frontier[rng() % frontier.size()]);
        }
    }
    return std::nullopt;
}
}  // namespace detail

/// Two-rule weighted deletion process. Weights start at 2 on removed_edges,
/// 0 elsewhere; the invariant "weight of a deleted edge equals its number of
/// endpoints still present" is maintained throughout, so the total weight
/// stays non-negative and the per-step ledger inequalities can be asserted
/// from the log.
inline PruneResult prune(const Graph& g, const std::vector<Edge>& removed_edges,
                         const Rational& c, int exact_limit = 24, std::uint64_t seed = 1) {
    if (min_degree(g) < 3) throw std::invalid_argument("prune requires min degree >= 3");
    if (!(c > 0 && c <= 1)) throw std::invalid_argument("c must be in (0,1]");
    const int n = g.vertex_count();
    const Rational c10 = c / 10;

    std::vector<char> alive(n, 1);
    std::vector<char> edge_alive(g.edge_count(), 1);
    std::vector<long long> w(g.edge_count(), 0);
    for (const Edge& e : removed_edges) {
        int ei = g.edge_index(e.u, e.v);
        if (ei < 0) throw std::invalid_argument("removed edge not in graph");
        if (edge_alive[ei]) {
            edge_alive[ei] = 0;
            w[ei] = 2;
        }
    }

    PruneResult res;
    res.precondition = Rational(100 * static_cast<long long>(removed_edges.size())) <=
                       c * Rational(n);

    auto total_weight = [&] {
        long long t = 0;
        for (long long x : w) t += x;
        return t;
    };
    std::vector<int> deg(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int ei : g.incident(v))
            if (edge_alive[ei]) ++deg[v];
    }

    auto kill_vertex = [&](int u) {
        // Deleted incident edges lose one present endpoint; the (at most one)
        // alive incident edge becomes deleted with its far endpoint present.
        for (int ei : g.incident(u)) {
            int other = g.edge(ei).other(u);
            if (edge_alive[ei]) {
                edge_alive[ei] = 0;
                w[ei] = alive[other] ? 1 : 0;
                if (alive[other]) --deg[other];
            } else {
                if (w[ei] > 0) --w[ei];
            }
        }
        alive[u] = 0;
    };

    int alive_count = n;
    while (true) {
        long long before = total_weight();
        // rule 1: smallest-index vertex of alive degree <= 1
        int low = -1;
        for (int v = 0; v < n && low < 0; ++v)
            if (alive[v] && deg[v] <= 1) low = v;
        if (low >= 0) {
            kill_vertex(low);
            --alive_count;
            res.log.push_back({1, {low}, before, total_weight()});
            continue;
        }
        // rule 2: a set violating the c/10-expansion of the current graph
        std::optional<std::vector<int>> s;
        if (alive_count <= exact_limit) {
            s = detail::find_sparse_cut_exact(g, alive, edge_alive, c10);
        } else {
            res.heuristic = true;
            s = detail::find_sparse_cut_sampled(g, alive, edge_alive, c10, seed);
        }
        if (!s) break;
        // Remove the whole set. Edges inside S end with weight 0; edges
        // leaving S follow the endpoint-count rule.
        std::vector<char> in_s(n, 0);
        for (int v : *s) in_s[v] = 1;
        for (int v : *s) {
            kill_vertex(v);
            alive[v] = 0;
            --alive_count;
        }
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.edge(ei);
            if (in_s[e.u] && in_s[e.v]) w[ei] = 0;
        }
        res.log.push_back({2, *s, before, total_weight()});
    }

    for (int v = 0; v < n; ++v)
        if (alive[v]) res.kept_vertices.push_back(v);
    // result keeps only edges that are still alive
    {
        std::vector<int> local(n, -1);
        for (std::size_t i = 0; i < res.kept_vertices.size(); ++i)
            local[res.kept_vertices[i]] = static_cast<int>(i);
        std::vector<Edge> kept_edges;
        for (int ei = 0; ei < g.edge_count(); ++ei)
            if (edge_alive[ei])
                kept_edges.emplace_back(local[g.edge(ei).u], local[g.edge(ei).v]);
        res.result = Graph(static_cast<int>(res.kept_vertices.size()), std::move(kept_edges));
    }

    const Graph& r = res.result;
    res.size_ok = 2 * r.vertex_count() >= n;
    res.min_deg_ok = r.vertex_count() == 0 || min_degree(r) >= 2;
    int deg3 = 0;
    for (int v = 0; v < r.vertex_count(); ++v)
        if (r.degree(v) >= 3) ++deg3;
    res.deg3_ok = 4 * deg3 >= n;
    res.expander_exact = r.vertex_count() <= exact_limit;
    res.expander_ok = is_expander(r, c10, res.expander_exact, seed);
    return res;
}

// ---------------------------------------------------------------------------
// Good-graph checker
// ---------------------------------------------------------------------------

/// Conservative rational bracket [lo, hi] around ln(x). Conditions using a
/// logarithmic threshold hold only if they hold against the adverse end of
/// the bracket.
inline std::pair<Rational, Rational> ln_bounds(double x) {
    if (!(x > 0)) throw std::invalid_argument("ln of non-positive value");
    double l = std::log(x);
    double pad = std::abs(l) * 1e-9 + 1e-12;
    return {Rational(l - pad), Rational(l + pad)};
}

struct GoodGraphReport {
    bool deg3_count_ok = false;    // 1: >= eps^3 n / 1e5 vertices of degree >= 3
    bool expander_ok = false;      // 2: gamma*eps expander
    bool girth_ok = false;         // 3: no cycle of length <= log(n)/(2 eps)
    bool bare_path_ok = false;     // 4: no bare path of length >= 1/(gamma eps)
    bool degree_ok = false;        // 5: max deg <= 100 loglog n, min deg >= 2
    bool edge_cut_ok = false;      // 6: e(S,S^c) >= 2 for nonempty proper S
    bool edge_cut_vacuous_reading = false;  // 6 read literally with S = V: no S^c edge exists
    bool neighborhood_ok = false;  // 7: |N(S)| >= 3 for small S with a degree-3 vertex
    bool exhaustive = true;        // subset conditions checked exhaustively
    std::vector<int> violating_set;  // first witness of a failed subset condition
    bool overall = false;
};

namespace detail {
// Edge connectivity >= 2 <=> connected and bridgeless (iterative Tarjan).
inline bool two_edge_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return false;  // no 2-edge cut to speak of; a lone vertex fails
    if (!is_connected(g)) return false;
    std::vector<int> disc(g.vertex_count(), -1), low(g.vertex_count(), 0);
    std::vector<int> stack_v{0}, stack_pe{-1}, stack_it{0};
    int timer = 0;
    disc[0] = low[0] = timer++;
    while (!stack_v.empty()) {
        int v = stack_v.back();
        if (stack_it.back() < static_cast<int>(g.incident(v).size())) {
            int ei = g.incident(v)[stack_it.back()++];
            if (ei == stack_pe.back()) continue;
            int w = g.edge(ei).other(v);
            if (disc[w] < 0) {
                disc[w] = low[w] = timer++;
                stack_v.push_back(w);
                stack_pe.push_back(ei);
                stack_it.push_back(0);
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        } else {
            stack_v.pop_back();
            int pe = stack_pe.back();
            stack_pe.pop_back();
            stack_it.pop_back();
            if (!stack_v.empty()) {
                int p = stack_v.back();
                low[p] = std::min(low[p], low[v]);
                if (low[v] > disc[p]) return false;  // pe is a bridge
                (void)pe;
            }
        }
    }
    return true;
}
}  // namespace detail

inline GoodGraphReport good_graph_check(const Graph& h, long long n, const Rational& eps,
                                        const Rational& gamma, int exact_limit = 24) {
    if (!(eps > 0) || !(gamma > 0)) throw std::invalid_argument("eps, gamma must be positive");
    GoodGraphReport rep;
    const int hv = h.vertex_count();

    int deg3 = 0;
    for (int v = 0; v < hv; ++v)
        if (h.degree(v) >= 3) ++deg3;
    rep.deg3_count_ok = Rational(deg3) >= eps * eps * eps * n / 100000;

    bool subsets_exact = hv <= exact_limit;
    rep.exhaustive = subsets_exact;
    {
        ExpansionReport er = expansion(h, subsets_exact);
        rep.expander_ok = er.witness_set.empty() || er.phi >= gamma * eps;
        if (!rep.expander_ok && rep.violating_set.empty()) rep.violating_set = er.witness_set;
    }
    {
        int gi = girth(h);
        auto [lo, hi] = ln_bounds(static_cast<double>(n));
        // holds only if girth > (upper bound of ln n)/(2 eps)
        rep.girth_ok = gi < 0 || Rational(gi) * 2 * eps > hi;
    }
    {
        std::vector<int> lens = bare_path_lengths(h);
        int longest = lens.empty() ? 0 : *std::max_element(lens.begin(), lens.end());
        rep.bare_path_ok = Rational(longest) * gamma * eps < 1;
    }
    {
        double lnn = std::log(static_cast<double>(n));
        bool loglog_ok = false;
        if (lnn > 0) {
            auto [lo, hi] = ln_bounds(lnn);
            loglog_ok = Rational(max_degree(h)) <= 100 * lo;
        }
        rep.degree_ok = loglog_ok && hv > 0 && min_degree(h) >= 2;
    }
    rep.edge_cut_ok = detail::two_edge_connected(h);
    rep.edge_cut_vacuous_reading = false;  // with S = V(H), e(S,S^c) = 0 < 2 always
    {
        rep.neighborhood_ok = true;
        if (subsets_exact && hv > 0) {
            std::vector<std::uint32_t> adj(hv, 0);
            for (const Edge& e : h.edges()) {
                adj[e.u] |= 1u << e.v;
                adj[e.v] |= 1u << e.u;
            }
            std::uint32_t deg3mask = 0;
            for (int v = 0; v < hv; ++v)
                if (h.degree(v) >= 3) deg3mask |= 1u << v;
            for (std::uint32_t mask = 1; mask < (1u << hv); ++mask) {
                if (2 * __builtin_popcount(mask) > hv) continue;
                if (!(mask & deg3mask)) continue;
                std::uint32_t nbhd = 0;
                for (int v = 0; v < hv; ++v)
                    if (mask >> v & 1) nbhd |= adj[v];
                nbhd &= ~mask;
                if (__builtin_popcount(nbhd) < 3) {
                    rep.neighborhood_ok = false;
                    if (rep.violating_set.empty())
                        for (int v = 0; v < hv; ++v)
                            if (mask >> v & 1) rep.violating_set.push_back(v);
                    break;
                }
            }
        } else if (hv > 0) {
            // sampled refutation: balls around degree-3 vertices
            for (int v = 0; v < hv && rep.neighborhood_ok; ++v) {
                if (h.degree(v) < 3) continue;
                std::set<int> s{v};
                for (int round = 0; round < 4 && rep.neighborhood_ok; ++round) {
                    std::set<int> nbhd;
                    for (int x : s)
                        for (int ei : h.incident(x)) {
                            int w = h.edge(ei).other(x);
                            if (!s.count(w)) nbhd.insert(w);
                        }
                    if (2 * static_cast<int>(s.size()) <= hv && nbhd.size() < 3) {
                        rep.neighborhood_ok = false;
                        rep.violating_set.assign(s.begin(), s.end());
                    }
                    s.insert(nbhd.begin(), nbhd.end());
                }
            }
        }
    }
    rep.overall = rep.deg3_count_ok && rep.expander_ok && rep.girth_ok && rep.bare_path_ok &&
                  rep.degree_ok && rep.edge_cut_ok && rep.neighborhood_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Partition statistics and connected-partition counting
// ---------------------------------------------------------------------------

struct PartitionStats {
    int v_prime = 0;       // vertices incident to a cross-block edge
    int c1 = 0;            // k - 1
    int c2 = 0;            // non-trivial components of the cross-edge graph
    int super_blocks = 0;  // components of the auxiliary graph on S_1..S_{k-1}
};

/// The largest block is treated as S_k (ties resolved to the latest block).
inline PartitionStats partition_stats(const Graph& g,
                                      const std::vector<std::vector<int>>& blocks) {
    const int n = g.vertex_count();
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw std::invalid_argument("empty block");
        for (int v : blocks[b]) {
            if (v < 0 || v >= n || block_of[v] >= 0)
                throw std::invalid_argument("blocks must partition the vertex set");
            block_of[v] = static_cast<int>(b);
        }
    }
    for (int v = 0; v < n; ++v)
        if (block_of[v] < 0) throw std::invalid_argument("blocks must cover the vertex set");
    for (const auto& blk : blocks) {
        Graph sub = induced_subgraph(g, blk);
        if (!is_connected(sub)) throw std::invalid_argument("non-connected block");
    }

    PartitionStats st;
    int k = static_cast<int>(blocks.size());
    st.c1 = k - 1;
    int sk = 0;
    for (int b = 1; b < k; ++b)
        if (blocks[b].size() >= blocks[sk].size()) sk = b;

    std::vector<Edge> cross;
    for (const Edge& e : g.edges())
        if (block_of[e.u] != block_of[e.v]) cross.push_back(e);

    UnionFind uf(n);
    std::vector<char> touched(n, 0);
    for (const Edge& e : cross) {
        touched[e.u] = touched[e.v] = 1;
        uf.unite(e.u, e.v);
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        ++st.v_prime;
        roots.insert(uf.find(v));
    }
    st.c2 = static_cast<int>(roots.size());  // every touched component has >= 2 vertices

    if (k >= 2) {
        UnionFind aux(k);
        for (const Edge& e : cross) {
            int a = block_of[e.u], b = block_of[e.v];
            if (a != sk && b != sk) aux.unite(a, b);
        }
        std::set<int> aux_roots;
        for (int b = 0; b < k; ++b)
            if (b != sk) aux_roots.insert(aux.find(b));
        st.super_blocks = static_cast<int>(aux_roots.size());
    }
    return st;
}

namespace detail {
inline bool connected_subset(const Graph& g, const std::vector<int>& verts) {
    return is_connected(induced_subgraph(g, verts));
}

// Enumerates unordered families of disjoint connected blocks with the given
// size profile; equal-size blocks are canonicalized by increasing minimum
// element.
inline void count_partitions_rec(const Graph& g, const std::vector<int>& sizes, std::size_t idx,
                                 std::vector<char>& taken, std::vector<std::vector<int>>& blocks,
                                 int prev_min_same_size, long long& count) {
    const int n = g.vertex_count();
    if (idx == sizes.size()) {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!taken[v]) rest.push_back(v);
        if (rest.empty()) return;  // S_k must be nonempty
        std::size_t max_s = 0;
        for (int s : sizes) max_s = std::max<std::size_t>(max_s, s);
        if (rest.size() < max_s) return;  // S_k has the largest size
        if (!connected_subset(g, rest)) return;
        std::vector<std::vector<int>> all = blocks;
        all.push_back(rest);
        PartitionStats st = partition_stats(g, all);
        if (st.super_blocks == 1) ++count;
        return;
    }
    int s = sizes[idx];
    int min_start = (idx > 0 && sizes[idx - 1] == s) ? prev_min_same_size + 1 : 0;
    // choose the block's minimum element, then the remaining s-1 vertices
    std::vector<int> chosen;
    std::function<void(int, int)> pick = [&](int start, int remaining) {
        if (remaining == 0) {
            if (!connected_subset(g, chosen)) return;
            for (int v : chosen) taken[v] = 1;
            blocks.push_back(chosen);
            count_partitions_rec(g, sizes, idx + 1, taken, blocks, chosen.front(), count);
            blocks.pop_back();
            for (int v : chosen) taken[v] = 0;
            return;
        }
        for (int v = start; v <= n - remaining; ++v) {
            if (taken[v]) continue;
            chosen.push_back(v);
            pick(v + 1, remaining - 1);
            chosen.pop_back();
        }
    };
    for (int first = min_start; first <= n - s; ++first) {
        if (taken[first]) continue;
        chosen.assign(1, first);
        pick(first + 1, s - 1);
        chosen.clear();
    }
}
}  // namespace detail

/// Number of connected partitions S_1..S_k of V(g) with |S_i| = sizes[i] for
/// i < k, S_k the (nonempty, largest) remainder, and exactly one super-block.
/// Blocks of equal size are not distinguished.
inline long long count_partitions_f(const Graph& g, std::vector<int> sizes) {
    if (g.vertex_count() > 12) throw std::invalid_argument("exhaustive enumeration limited to 12");
    for (int s : sizes)
        if (s <= 0) throw std::invalid_argument("block sizes must be positive");
    long long sum = 0;
    for (int s : sizes) sum += s;
    if (sum >= g.vertex_count()) return 0;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    std::vector<char> taken(g.vertex_count(), 0);
    std::vector<std::vector<int>> blocks;
    long long count = 0;
    detail::count_partitions_rec(g, sizes, 0, taken, blocks, -1, count);
    return count;
}

}  // namespace linerec
