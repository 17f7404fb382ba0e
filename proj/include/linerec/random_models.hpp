#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linerec/decompose.hpp"
#include "linerec/embedding.hpp"
#include "linerec/graph.hpp"
#include "linerec/rational.hpp"

namespace linerec {

/// Deterministic derivation of per-cell seeds from a master seed
/// (splitmix64 finalizer), so sweeps are replayable stream by stream.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Conjugate of lambda > 1: the unique mu in (0,1) with mu e^-mu =
/// lambda e^-lambda, by bisection (x e^-x is increasing on (0,1)).
inline double conjugate(double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("conjugate requires lambda > 1");
    const double target = lambda * std::exp(-lambda);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (mid * std::exp(-mid) < target ? lo : hi) = mid;
    }
    double mu = 0.5 * (lo + hi);
    if (std::abs(mu * std::exp(-mu) - target) > 1e-12)
        throw std::runtime_error("conjugate solver failed to converge");
    return mu;
}

struct DlpParams {
    double lambda = 0.0;
    double mu = 0.0;
    long long n = 0;
};

inline DlpParams make_dlp_params(double lambda, long long n) {
    if (n <= 0) throw std::invalid_argument("n must be positive");
    return {lambda, conjugate(lambda), n};
}

/// G(n, p), each pair independent, via geometric gap skipping over the
/// linearized pair index (O(edges) time for small p).
inline Graph sample_gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
    std::vector<Edge> edges;
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (p >= 1.0) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        return Graph(n, std::move(edges));
    }
    if (p > 0.0 && total > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double logq = std::log1p(-p);
        long long idx = -1;
        // walk the row decomposition alongside the increasing index
        long long row = 0, row_start = 0, row_len = n - 1;
        while (true) {
            double u = 1.0 - unit(rng);  // in (0, 1]
            idx += 1 + static_cast<long long>(std::floor(std::log(u) / logq));
            if (idx >= total) break;
            while (idx >= row_start + row_len) {
                row_start += row_len;
                --row_len;
                ++row;
            }
            int i = static_cast<int>(row);
            int j = static_cast<int>(i + 1 + (idx - row_start));
            edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

struct DlpSample {
    Graph graph;                 // the subdivided realization (simple)
    KernelDecomposition kd;      // recomputed from graph
    MultiGraph kernel;           // the configuration-model multigraph
    std::vector<long long> degrees;  // accepted D_u vector (all n of them)
    double lambda_value = 0.0;   // the Gaussian sample actually used
    bool degenerate = false;     // no degree->=3 vertex was sampled
    int resampled_lengths = 0;   // subdivision lengths redrawn for simplicity
};

/// The two-step contiguous model of the 2-core: Poisson(Lambda) degrees with
/// even-parity rejection over the degree->=3 mass, a uniform configuration
/// pairing on those vertices, and iid Geometric(1-mu) subdivision lengths
/// with support {1, 2, ...}. Loops need length >= 3 and at most one edge of
/// a parallel group may keep length 1; offending lengths are locally redrawn
/// so the realization is a simple graph.
inline DlpSample sample_dlp(const DlpParams& params, std::uint64_t seed) {
    if (!(params.lambda > 1.0) || !(params.mu > 0.0 && params.mu < 1.0) || params.n <= 0)
        throw std::invalid_argument("invalid dlp parameters");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(params.lambda - params.mu,
                                           std::sqrt(1.0 / static_cast<double>(params.n)));
    DlpSample out;
    do {
        out.lambda_value = gauss(rng);
    } while (out.lambda_value <= 0.0);

    std::poisson_distribution<long long> pois(out.lambda_value);
    while (true) {
        out.degrees.clear();
        long long mass = 0;
        for (long long u = 0; u < params.n; ++u) {
            long long d = pois(rng);
            out.degrees.push_back(d);
            if (d >= 3) mass += d;
        }
        if (mass % 2 == 0) break;
    }

    std::vector<int> kernel_vertices;  // indices into degrees
    std::vector<int> half_edges;       // kernel vertex id, repeated by degree
    for (long long u = 0; u < params.n; ++u) {
        if (out.degrees[u] >= 3) {
            int id = static_cast<int>(kernel_vertices.size());
            kernel_vertices.push_back(static_cast<int>(u));
            for (long long h = 0; h < out.degrees[u]; ++h) half_edges.push_back(id);
        }
    }
    const int nk = static_cast<int>(kernel_vertices.size());
    if (nk == 0) {
        out.degenerate = true;
        out.graph = Graph(0, {});
        out.kernel = MultiGraph(0, {});
        out.kd = kernelize(out.graph);
        return out;
    }
    std::shuffle(half_edges.begin(), half_edges.end(), rng);
    std::vector<std::pair<int, int>> kernel_edges;
    for (std::size_t h = 0; h + 1 < half_edges.size(); h += 2)
        kernel_edges.emplace_back(half_edges[h], half_edges[h + 1]);
    out.kernel = MultiGraph(nk, kernel_edges);

    std::geometric_distribution<long long> geom(1.0 - params.mu);  // support {0,1,...}
    std::set<std::pair<int, int>> used_direct;  // pairs already joined by a length-1 path
    std::vector<Edge> edges;
    int next_vertex = nk;
    for (const auto& [a0, b0] : out.kernel.edges()) {
        int a = a0, b = b0;
        long long len;
        while (true) {
            len = 1 + geom(rng);
            if (a == b && len < 3) {
                ++out.resampled_lengths;
                continue;
            }
            if (a != b && len == 1 && used_direct.count({a, b})) {
                ++out.resampled_lengths;
                continue;
            }
            break;
        }
        if (len == 1) {
            used_direct.insert({a, b});
            edges.emplace_back(a, b);
        } else {
            int prev = a;
            for (long long s = 1; s < len; ++s) {
                int mid = next_vertex++;
                edges.emplace_back(prev, mid);
                prev = mid;
            }
            edges.emplace_back(prev, b);
        }
    }
    out.graph = Graph(next_vertex, std::move(edges));
    out.kd = kernelize(out.graph);
    return out;
}

enum class EmbeddingStyle { kGeneric, kIntegerRange, kArithmeticProgression };

inline EmbeddingStyle embedding_style_from_string(const std::string& s) {
    if (s == "generic") return EmbeddingStyle::kGeneric;
    if (s == "integer-range") return EmbeddingStyle::kIntegerRange;
    if (s == "arithmetic-progression") return EmbeddingStyle::kArithmeticProgression;
    throw std::invalid_argument("unknown embedding style '" + s + "'");
}

/// Random positions for the vertices of g. generic: huge random integers,
/// redrawn until all pairwise distances are distinct; integer-range: distinct
/// uniform integers in [lo, hi] (coincidental equal distances are the point);
/// arithmetic-progression: a + b * sigma(v) for a random permutation sigma.
inline EmbeddedGraph random_embedding(const Graph& g, EmbeddingStyle style, std::uint64_t seed,
                                      long long lo = 0, long long hi = -1) {
    const int n = g.vertex_count();
    std::mt19937_64 rng(seed);
    std::vector<Rational> pos(n);
    switch (style) {
        case EmbeddingStyle::kGeneric: {
            std::uniform_int_distribution<long long> draw(-(1LL << 62), 1LL << 62);
            while (true) {
                std::set<Rational> diffs;
                bool ok = true;
                std::set<long long> vals;
                while (static_cast<int>(vals.size()) < n) vals.insert(draw(rng));
                int i = 0;
                for (long long v : vals) pos[i++] = Rational(v);
                for (int a = 0; a < n && ok; ++a)
                    for (int b = a + 1; b < n && ok; ++b)
                        ok = diffs.insert(rat_abs(pos[a] - pos[b])).second;
                if (ok) break;
            }
            break;
        }
        case EmbeddingStyle::kIntegerRange: {
            if (hi < lo) hi = lo + 4LL * std::max(n, 1);
            if (hi - lo + 1 < n)
                throw std::invalid_argument("window too small for distinct integers");
            std::set<long long> vals;
            std::uniform_int_distribution<long long> draw(lo, hi);
            while (static_cast<int>(vals.size()) < n) vals.insert(draw(rng));
            std::vector<long long> shuffled(vals.begin(), vals.end());
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            for (int v = 0; v < n; ++v) pos[v] = Rational(shuffled[v]);
            break;
        }
        case EmbeddingStyle::kArithmeticProgression: {
            std::uniform_int_distribution<long long> draw_a(0, 10LL * std::max(n, 1));
            std::uniform_int_distribution<long long> draw_b(1, 10);
            long long a = draw_a(rng), b = draw_b(rng);
            std::vector<int> sigma(n);
            std::iota(sigma.begin(), sigma.end(), 0);
            std::shuffle(sigma.begin(), sigma.end(), rng);
            for (int v = 0; v < n; ++v) pos[v] = Rational(a + b * sigma[v]);
            break;
        }
    }
    return EmbeddedGraph(g, std::move(pos));
}

}  // namespace linerec
