#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linerec/embedding.hpp"
#include "linerec/graph.hpp"
#include "linerec/rational.hpp"
#include "linerec/reconstruct.hpp"

namespace linerec {

inline constexpr int kRed = 0;
inline constexpr int kBlue = 1;

/// Edge 2-colouring with the induced monochromatic component partitions.
/// Components cover every vertex; a vertex touching no edge of a colour is
/// a singleton component of that colour.
struct NacColoring {
    std::vector<int> color;  // per edge index: kRed or kBlue
    std::vector<std::vector<int>> red_components;
    std::vector<std::vector<int>> blue_components;
};

namespace detail {
inline std::vector<std::vector<int>> color_components(const Graph& g,
                                                      const std::vector<int>& color, int c) {
    UnionFind uf(g.vertex_count());
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (color[ei] == c) uf.unite(g.edge(ei).u, g.edge(ei).v);
    std::map<int, int> root_to_id;
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        auto [it, fresh] = root_to_id.emplace(r, static_cast<int>(comps.size()));
        if (fresh) comps.emplace_back();
        comps[it->second].push_back(v);
    }
    return comps;
}

inline std::vector<int> component_index(const std::vector<std::vector<int>>& comps, int n) {
    std::vector<int> idx(n, -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) idx[v] = static_cast<int>(c);
    return idx;
}
}  // namespace detail

inline NacColoring make_nac_coloring(const Graph& g, std::vector<int> color) {
    NacColoring nc;
    nc.color = std::move(color);
    nc.red_components = detail::color_components(g, nc.color, kRed);
    nc.blue_components = detail::color_components(g, nc.color, kBlue);
    return nc;
}

/// A colouring is NAC iff both colours are used and no cycle of G has
/// exactly one edge of a colour. An edge e of colour c lies on such a cycle
/// iff its endpoints are joined by a path of the opposite colour, so it
/// suffices to check, per edge, connectivity in the opposite-colour
/// subgraph. (This equivalence is unit-tested against brute-force cycle
/// enumeration.)
inline bool is_nac_coloring(const Graph& g, const std::vector<int>& color) {
    if (static_cast<int>(color.size()) != g.edge_count())
        throw std::invalid_argument("coloring must cover every edge");
    bool red = false, blue = false;
    for (int c : color) {
        if (c == kRed) red = true;
        else if (c == kBlue) blue = true;
        else throw std::invalid_argument("colors must be red or blue");
    }
    if (!red || !blue) return false;
    UnionFind red_uf(g.vertex_count()), blue_uf(g.vertex_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edge(ei);
        (color[ei] == kRed ? red_uf : blue_uf).unite(e.u, e.v);
    }
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edge(ei);
        UnionFind& opposite = color[ei] == kRed ? blue_uf : red_uf;
        if (opposite.find(e.u) == opposite.find(e.v)) return false;
    }
    return true;
}

inline bool is_nac_coloring(const Graph& g, const NacColoring& nc) {
    return is_nac_coloring(g, nc.color);
}

/// |R_i intersect B_j| <= 1 for all i, j: equivalent to injectivity of the
/// map v -> (red component, blue component).
inline bool intersection_condition(const Graph& g, const NacColoring& nc) {
    std::vector<int> r = detail::component_index(nc.red_components, g.vertex_count());
    std::vector<int> b = detail::component_index(nc.blue_components, g.vertex_count());
    std::set<std::pair<int, int>> seen;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen.insert({r[v], b[v]}).second) return false;
    return true;
}

struct RigidityVerdict {
    Verdict globally_rigid = Verdict::kUnknown;
    std::optional<NacColoring> certificate;  // present iff not rigid
};

/// Exhaustive search (up to colour swap; edge 0 is pinned red) for a NAC
/// colouring satisfying the intersection condition. A partial colouring is
/// abandoned as soon as some coloured edge's endpoints are connected in the
/// opposite colour, since that persists under every extension. Edges are
/// branched in index order, red first, so the returned certificate is
/// canonical. Budget counts search nodes; exhaustion yields kUnknown.
inline RigidityVerdict find_rigidity_certificate(const Graph& g,
                                                 std::uint64_t budget = std::uint64_t(1) << 24) {
    if (g.vertex_count() < 2 || !is_connected(g))
        throw std::invalid_argument("rigidity test needs a connected graph on >= 2 vertices");
    const int m = g.edge_count();
    RigidityVerdict verdict;
    std::vector<int> color(m, -1);
    std::uint64_t nodes = 0;
    bool truncated = false, found = false;

    auto consistent = [&](int upto) {
        UnionFind red_uf(g.vertex_count()), blue_uf(g.vertex_count());
        for (int ei = 0; ei <= upto; ++ei)
            (color[ei] == kRed ? red_uf : blue_uf).unite(g.edge(ei).u, g.edge(ei).v);
        for (int ei = 0; ei <= upto; ++ei) {
            const Edge& e = g.edge(ei);
            UnionFind& opposite = color[ei] == kRed ? blue_uf : red_uf;
            if (opposite.find(e.u) == opposite.find(e.v)) return false;
        }
        return true;
    };

    std::function<void(int)> rec = [&](int ei) {
        if (found || truncated) return;
        if (ei == m) {
            if (!is_nac_coloring(g, color)) return;  // both-colours check
            NacColoring nc = make_nac_coloring(g, color);
            if (intersection_condition(g, nc)) {
                verdict.certificate = std::move(nc);
                found = true;
            }
            return;
        }
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        for (int c : {kRed, kBlue}) {
            if (ei == 0 && c == kBlue) break;  // colour-swap symmetry
            color[ei] = c;
            if (consistent(ei)) rec(ei + 1);
            if (found || truncated) break;
        }
        color[ei] = -1;
    };
    rec(0);

    if (found) {
        verdict.globally_rigid = Verdict::kFalse;
    } else if (truncated) {
        verdict.globally_rigid = Verdict::kUnknown;
    } else {
        verdict.globally_rigid = Verdict::kTrue;
    }
    return verdict;
}

/// Constructive converse: from a valid certificate, build f(v) = x_{R(v)} +
/// y_{B(v)} and g*(v) = x_{R(v)} - y_{B(v)} with distinct integer component
/// values, retrying from a growing range until both maps are injective.
/// The outputs always share all edge lengths and differ in some pair
/// distance.
inline std::pair<EmbeddedGraph, AlternativeEmbedding> construct_flex_embedding(
    const Graph& g, const NacColoring& cert, std::uint64_t seed = 20240601) {
    if (!is_nac_coloring(g, cert.color) || !intersection_condition(g, cert))
        throw std::invalid_argument("not a valid rigidity certificate");
    const int n = g.vertex_count();
    std::vector<int> r = detail::component_index(cert.red_components, n);
    std::vector<int> b = detail::component_index(cert.blue_components, n);
    const int k = static_cast<int>(cert.red_components.size());
    const int l = static_cast<int>(cert.blue_components.size());

    std::mt19937_64 rng(seed);
    for (int attempt = 1;; ++attempt) {
        long long range = 8LL * (k + l) * attempt * attempt;
        std::uniform_int_distribution<long long> draw(0, range);
        std::set<long long> xs, ys;
        while (static_cast<int>(xs.size()) < k) xs.insert(draw(rng));
        while (static_cast<int>(ys.size()) < l) ys.insert(draw(rng));
        std::vector<long long> x(xs.begin(), xs.end()), y(ys.begin(), ys.end());
        std::shuffle(x.begin(), x.end(), rng);
        std::shuffle(y.begin(), y.end(), rng);

        std::vector<Rational> f(n), gstar(n);
        std::set<Rational> fset, gset;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            f[v] = Rational(x[r[v]] + y[b[v]]);
            gstar[v] = Rational(x[r[v]] - y[b[v]]);
            ok = fset.insert(f[v]).second && gset.insert(gstar[v]).second;
        }
        if (!ok) continue;
        return {EmbeddedGraph(g, std::move(f)), AlternativeEmbedding{std::move(gstar)}};
    }
}

}  // namespace linerec
