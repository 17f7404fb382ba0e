#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "linerec/decompose.hpp"
#include "linerec/embedding.hpp"
#include "linerec/graph.hpp"
#include "linerec/random_models.hpp"
#include "linerec/reconstruct.hpp"

namespace linerec {

// ---------------------------------------------------------------------------
// Flat key=value configuration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string model = "gnp";            // gnp | dlp
    std::vector<int> n_grid{100};
    std::vector<double> eps_grid{0.5};
    int seeds = 20;
    std::string style = "generic";        // embedding style
    std::uint64_t budget = std::uint64_t(1) << 20;
    std::uint64_t seed = 1;               // master seed
    std::string output;                   // CSV path; empty = stdout
    double lambda = 1.3;                  // dlp parameter for lemma checks
    long long trials = 10000;             // Monte Carlo trials per fixture
    double gamma = 0.5;                   // exposed absolute constant
};

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

namespace detail {
template <typename T, typename Parse>
inline std::vector<T> parse_list(const std::string& s, Parse parse) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse(item));
    return out;
}
}  // namespace detail

inline ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("model")) cfg.model = *v;
    if (auto* v = get("n_grid"))
        cfg.n_grid = detail::parse_list<int>(*v, [](const std::string& s) { return std::stoi(s); });
    if (auto* v = get("eps_grid"))
        cfg.eps_grid =
            detail::parse_list<double>(*v, [](const std::string& s) { return std::stod(s); });
    if (auto* v = get("seeds")) cfg.seeds = std::stoi(*v);
    if (auto* v = get("style")) cfg.style = *v;
    if (auto* v = get("budget")) cfg.budget = std::stoull(*v);
    if (auto* v = get("seed")) cfg.seed = std::stoull(*v);
    if (auto* v = get("output")) cfg.output = *v;
    if (auto* v = get("lambda")) cfg.lambda = std::stod(*v);
    if (auto* v = get("trials")) cfg.trials = std::stoll(*v);
    if (auto* v = get("gamma")) cfg.gamma = std::stod(*v);
    if (cfg.n_grid.empty() || cfg.eps_grid.empty() || cfg.seeds < 1 || cfg.budget < 1)
        throw std::invalid_argument("invalid experiment config");
    return cfg;
}

inline std::string config_to_key_values(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "model = " << cfg.model << "\n";
    out << "n_grid = ";
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i)
        out << (i ? "," : "") << cfg.n_grid[i];
    out << "\neps_grid = ";
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i)
        out << (i ? "," : "") << cfg.eps_grid[i];
    out << "\nseeds = " << cfg.seeds << "\nstyle = " << cfg.style
        << "\nbudget = " << cfg.budget << "\nseed = " << cfg.seed
        << "\noutput = " << cfg.output << "\nlambda = " << cfg.lambda
        << "\ntrials = " << cfg.trials << "\ngamma = " << cfg.gamma << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Giant-reconstruction sweep
// ---------------------------------------------------------------------------

inline constexpr const char* kGiantSchema = "linerec-giant-v1";

struct GiantRow {
    std::string model;
    int n = 0;
    double eps = 0.0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    int core_size = 0;
    int kernel_size = 0;
    int kernel_edges = 0;
    int max_deg = 0;
    int subset_size = 0;
    bool exact = true;  // false = lower-bound mode (budget hit)
    long long runtime_ms = 0;  // informational; excluded from replay identity
    std::string error;
};

inline std::string giant_csv_header() {
    return std::string("# schema=") + kGiantSchema +
           "\nmodel,n,eps,seed_index,seed,core_size,kernel_size,kernel_edges,max_deg,"
           "subset_size,exact,runtime_ms,error";
}

inline std::string to_csv(const GiantRow& r) {
    std::ostringstream out;
    out << r.model << ',' << r.n << ',' << r.eps << ',' << r.seed_index << ',' << r.seed << ','
        << r.core_size << ',' << r.kernel_size << ',' << r.kernel_edges << ',' << r.max_deg << ','
        << r.subset_size << ',' << (r.exact ? 1 : 0) << ',' << r.runtime_ms << ',' << r.error;
    return out.str();
}

namespace detail {

template <typename Task>
inline void run_pool(int threads, int task_count, Task task) {
    threads = std::max(1, std::min(threads, task_count));
    if (threads == 1) {
        for (int i = 0; i < task_count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < task_count; i = next.fetch_add(1)) task(i);
        });
    for (std::thread& t : pool) t.join();
}

}  // namespace detail

/// One row per (n, eps, seed): sample the graph and embedding, take 2-core
/// and kernel statistics, and measure the largest reconstructible subset.
/// Per-row failures are recorded in the error column; the sweep continues.
/// Cells run on `threads` workers; the row order is fixed by (cell, seed)
/// regardless of the thread count.
inline std::vector<GiantRow> run_giant_experiment(const ExperimentConfig& cfg, int threads = 1) {
    struct Cell {
        int n;
        double eps;
        std::uint64_t cell;
        int s;
    };
    std::vector<Cell> cells;
    std::uint64_t cell = 0;
    for (int n : cfg.n_grid) {
        for (double eps : cfg.eps_grid) {
            for (int s = 0; s < cfg.seeds; ++s) cells.push_back({n, eps, cell, s});
            ++cell;
        }
    }
    std::vector<GiantRow> rows(cells.size());
    detail::run_pool(threads, static_cast<int>(cells.size()), [&](int i) {
        const Cell& c = cells[i];
        GiantRow row;
        row.model = cfg.model;
        row.n = c.n;
        row.eps = c.eps;
        row.seed_index = c.s;
        row.seed = split_seed(cfg.seed, c.cell * 1000003ULL + c.s);
        auto start = std::chrono::steady_clock::now();
        try {
            Graph g;
            if (cfg.model == "gnp") {
                g = sample_gnp(c.n, (1.0 + c.eps) / c.n, row.seed);
            } else if (cfg.model == "dlp") {
                g = sample_dlp(make_dlp_params(1.0 + c.eps, c.n), row.seed).graph;
            } else {
                throw std::invalid_argument("unknown model " + cfg.model);
            }
            EmbeddedGraph eg = random_embedding(
                g.vertex_count() ? g : Graph(1, {}),
                embedding_style_from_string(cfg.style), split_seed(row.seed, 1));
            KernelDecomposition kd = kernelize(eg.graph);
            row.core_size = kd.two_core.vertex_count();
            row.kernel_size = kd.kernel.vertex_count();
            row.kernel_edges = kd.kernel.edge_count();
            row.max_deg = max_degree(eg.graph);
            ReconReport rep = maximal_reconstructible_subsets(eg, cfg.budget);
            row.exact = rep.exhausted;
            for (const auto& sub : rep.maximal_subsets)
                row.subset_size = std::max(row.subset_size, static_cast<int>(sub.size()));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        rows[i] = std::move(row);
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Lemma checks
// ---------------------------------------------------------------------------

struct WitnessFixture {
    std::string name;
    Graph g;
    std::vector<std::vector<int>> blocks;
    int pool_size = 20;
};

/// Fixed (graph, partition) fixtures spanning exponents V'-C2-(k-1) in
/// {0, 1, 2}, used by both the lemma harness and the acceptance suite.
inline std::vector<WitnessFixture> witness_fixtures() {
    std::vector<WitnessFixture> fx;
    auto cyc = [](int n) {
        std::vector<Edge> e;
        for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
        return Graph(n, std::move(e));
    };
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    fx.push_back({"edge-singletons", Graph(2, {{0, 1}}), {{0}, {1}}, 20});
    fx.push_back({"p3-pair", Graph(3, {{0, 1}, {1, 2}}), {{0, 1}, {2}}, 20});
    fx.push_back({"p3-singletons", Graph(3, {{0, 1}, {1, 2}}), {{0}, {1}, {2}}, 20});
    fx.push_back({"c4-dominoes", cyc(4), {{0, 1}, {2, 3}}, 20});
    fx.push_back({"k4-dominoes", k4, {{0, 1}, {2, 3}}, 20});
    fx.push_back({"c6-dominoes", cyc(6), {{0, 1}, {2, 3}, {4, 5}}, 20});
    fx.push_back({"c4-singletons", cyc(4), {{0}, {1}, {2}, {3}}, 20});
    fx.push_back({"k4-star", k4, {{0}, {1, 2, 3}}, 20});
    fx.push_back({"c5-mixed", cyc(5), {{0, 1}, {2, 3}, {4}}, 20});
    fx.push_back(
        {"diamond", Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), {{0, 1}, {2}, {3}}, 20});
    fx.push_back({"star3-singletons", Graph(4, {{0, 1}, {0, 2}, {0, 3}}),
                  {{0}, {1}, {2}, {3}}, 20});
    return fx;
}

inline constexpr const char* kLemmaSchema = "linerec-lemmas-v1";

struct LemmaRow {
    std::string check;    // kernel-vertices | kernel-edges | kernel-maxdeg |
                          // path-tail | witness-bound
    std::string fixture;  // fixture name or empty
    long long n = 0;
    double eps = 0.0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    double value = 0.0;
    double threshold_lo = 0.0;
    double threshold_hi = 0.0;
    bool pass = false;
    bool asymptotic_warning = false;
};

inline std::string lemma_csv_header() {
    return std::string("# schema=") + kLemmaSchema +
           "\ncheck,fixture,n,eps,seed_index,seed,value,threshold_lo,threshold_hi,pass,"
           "asymptotic_warning";
}

inline std::string to_csv(const LemmaRow& r) {
    std::ostringstream out;
    out << r.check << ',' << r.fixture << ',' << r.n << ',' << r.eps << ',' << r.seed_index << ','
        << r.seed << ',' << r.value << ',' << r.threshold_lo << ',' << r.threshold_hi << ','
        << (r.pass ? 1 : 0) << ',' << (r.asymptotic_warning ? 1 : 0);
    return out.str();
}

/// Per-seed checks of the kernel-size interval, the bare-path length tail,
/// and the witness-probability bound on the fixed fixtures.
inline std::vector<LemmaRow> run_lemma_checks(const ExperimentConfig& cfg, int threads = 1) {
    const double eps = cfg.lambda - 1.0;
    const long long n = cfg.n_grid.front();
    const bool warn = n < 100;
    DlpParams params = make_dlp_params(cfg.lambda, n);
    std::vector<WitnessFixture> fixtures = witness_fixtures();
    std::vector<LemmaRow> all(4 * cfg.seeds + fixtures.size());

    detail::run_pool(threads, cfg.seeds, [&](int s) {
        std::vector<LemmaRow> rows;
        std::uint64_t seed = split_seed(cfg.seed, s);
        DlpSample sample = sample_dlp(params, seed);
        double e3n = eps * eps * eps * n;

        LemmaRow rv{"kernel-vertices", "", n, eps, s, seed,
                    double(sample.kernel.vertex_count()), e3n / 1000.0, 16.0 * e3n, false, warn};
        rv.pass = rv.value >= rv.threshold_lo && rv.value <= rv.threshold_hi;
        rows.push_back(rv);

        LemmaRow re{"kernel-edges", "", n, eps, s, seed, double(sample.kernel.edge_count()),
                    e3n / 1000.0, 32.0 * e3n, false, warn};
        re.pass = re.value >= re.threshold_lo && re.value <= re.threshold_hi;
        rows.push_back(re);

        int kmax = 0;
        for (int v = 0; v < sample.kernel.vertex_count(); ++v)
            kmax = std::max(kmax, sample.kernel.degree(v));
        LemmaRow rd{"kernel-maxdeg", "", n, eps, s, seed, double(kmax), 0.0,
                    10.0 * std::log(double(n)), false, warn};
        rd.pass = rd.value <= rd.threshold_hi;
        rows.push_back(rd);

        // fraction of kernel edges subdivided to length >= 100/(gamma eps)
        double cutoff = 100.0 / (cfg.gamma * eps);
        long long longs = 0;
        for (int len : sample.kd.edge_path_lengths)
            if (len >= cutoff) ++longs;
        long long m = sample.kd.edge_path_lengths.size();
        double q = cfg.gamma / 1e8;
        double sigma = m > 0 ? std::sqrt(q * (1 - q) / double(m)) : 0.0;
        LemmaRow rt{"path-tail", "", n, eps, s, seed,
                    m > 0 ? double(longs) / double(m) : 0.0, 0.0, q + 5 * sigma, false, warn};
        rt.pass = rt.value <= rt.threshold_hi;
        rows.push_back(rt);

        std::copy(rows.begin(), rows.end(), all.begin() + 4 * s);
    });

    detail::run_pool(threads, static_cast<int>(fixtures.size()), [&](int i) {
        const WitnessFixture& fx = fixtures[i];
        std::vector<Rational> pool;
        for (int x = 0; x < fx.pool_size; ++x) pool.emplace_back(x);
        std::uint64_t seed = split_seed(cfg.seed, 0xABCD + 4 * cfg.seeds + i);
        WitnessProbability wp =
            estimate_witness_probability(fx.g, fx.blocks, pool, cfg.trials, seed);
        double sigma = std::sqrt(wp.bound * std::max(0.0, 1.0 - wp.bound) /
                                 double(std::max<long long>(cfg.trials, 1)));
        LemmaRow row{"witness-bound", fx.name, fx.g.vertex_count(), 0.0, 0, seed, wp.empirical, 0.0,
                     wp.bound + 3 * sigma, false, false};
        row.pass = row.value <= row.threshold_hi;
        all[4 * cfg.seeds + i] = std::move(row);
    });
    return all;
}

}  // namespace linerec
