#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "linerec/embedding.hpp"
#include "linerec/graph.hpp"
#include "linerec/rational.hpp"
#include "linerec/reconstruct.hpp"

namespace linerec {

/// The k-dimensional hypercube under the base-3 embedding
/// f(a_0..a_{k-1}) = sum a_i 3^i. Vertex index = the bit vector itself.
struct HypercubeInstance {
    int k = 0;
    EmbeddedGraph eg;
};

inline long long hypercube_position(int k, std::uint32_t a) {
    long long v = 0, pow3 = 1;
    for (int i = 0; i < k; ++i, pow3 *= 3)
        if (a >> i & 1) v += pow3;
    return v;
}

inline HypercubeInstance build_hypercube(int k) {
    if (k < 1 || k > 20) throw std::invalid_argument("k must lie in [1, 20]");
    const std::uint32_t n = 1u << k;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(k) << (k - 1));
    std::vector<Rational> pos(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        pos[a] = Rational(hypercube_position(k, a));
        for (int j = 0; j < k; ++j) {
            std::uint32_t b = a ^ (1u << j);
            if (a < b) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return {k, EmbeddedGraph(Graph(static_cast<int>(n), std::move(edges)), std::move(pos))};
}

/// f_j: the sign of coordinate j is flipped, i.e. f_j(a) = f(a) - 2 a_j 3^j.
/// Realizes the same edge lengths: an edge in direction i changes both maps
/// by exactly 3^i in absolute value.
inline AlternativeEmbedding flip_embedding(const HypercubeInstance& inst, int j) {
    if (j < 0 || j >= inst.k) throw std::invalid_argument("bit index out of range");
    const std::uint32_t n = 1u << inst.k;
    long long pow3 = 1;
    for (int i = 0; i < j; ++i) pow3 *= 3;
    AlternativeEmbedding out;
    out.positions.resize(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        long long f = hypercube_position(inst.k, a);
        out.positions[a] = Rational(f - 2 * ((a >> j & 1) ? pow3 : 0));
    }
    return out;
}

enum class CounterexampleMode { kDirect, kOracle };

struct CounterexampleReport {
    bool ok = false;
    int k = 0;
    long long pairs_checked = 0;
    bool triangle_free = false;
    std::string failure;  // offending pair, empty when ok
};

/// Direct mode: exact-integer verification that every non-edge (a, b) is
/// broken by the flip f_j at the lowest differing bit j, i.e.
/// f_j(a) - f_j(b) differs from both f(a) - f(b) and its negation; together
/// with triangle-freeness this bounds reconstructible subsets by size 2.
/// Oracle mode (k <= 4): the exhaustive reconstruction oracle must agree
/// pair for pair (edges reconstructible, non-edges not).
inline CounterexampleReport verify_counterexample(const HypercubeInstance& inst,
                                                  CounterexampleMode mode) {
    CounterexampleReport rep;
    rep.k = inst.k;
    const std::uint32_t n = 1u << inst.k;

    // bipartite by parity of the bit vector, hence triangle-free
    rep.triangle_free = true;
    for (const Edge& e : inst.eg.graph.edges())
        if ((__builtin_popcount(static_cast<std::uint32_t>(e.u)) & 1) ==
            (__builtin_popcount(static_cast<std::uint32_t>(e.v)) & 1))
            rep.triangle_free = false;

    if (mode == CounterexampleMode::kOracle) {
        if (inst.k > 4) throw std::invalid_argument("oracle mode limited to k <= 4");
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) {
                ++rep.pairs_checked;
                bool edge = __builtin_popcount(a ^ b) == 1;
                Verdict v = is_pair_reconstructible(inst.eg, static_cast<int>(a),
                                                    static_cast<int>(b));
                if (v != (edge ? Verdict::kTrue : Verdict::kFalse)) {
                    rep.failure = std::to_string(a) + "-" + std::to_string(b);
                    return rep;
                }
            }
        rep.ok = rep.triangle_free;
        return rep;
    }

    for (std::uint32_t a = 0; a < n; ++a) {
        long long fa = hypercube_position(inst.k, a);
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (__builtin_popcount(a ^ b) == 1) continue;  // edge
            ++rep.pairs_checked;
            long long fb = hypercube_position(inst.k, b);
            int j = __builtin_ctz(a ^ b);  // lowest differing bit
            long long pow3 = 1;
            for (int i = 0; i < j; ++i) pow3 *= 3;
            long long fja = fa - 2 * ((a >> j & 1) ? pow3 : 0);
            long long fjb = fb - 2 * ((b >> j & 1) ? pow3 : 0);
            long long df = fa - fb, dfj = fja - fjb;
            if (dfj == df || dfj == -df) {
                rep.failure = std::to_string(a) + "-" + std::to_string(b);
                return rep;
            }
        }
    }
    rep.ok = rep.triangle_free;
    return rep;
}

}  // namespace linerec
