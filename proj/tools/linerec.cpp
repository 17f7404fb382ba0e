// Command-line front end: rigidity checks, reconstruction reports, witness
// extraction, decompositions, rigid-subgraph extraction, samplers, the
// hypercube counterexample, and the experiment harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linerec/counterexample.hpp"
#include "linerec/decompose.hpp"
#include "linerec/embedding.hpp"
#include "linerec/experiment.hpp"
#include "linerec/extract.hpp"
#include "linerec/random_models.hpp"
#include "linerec/reconstruct.hpp"
#include "linerec/rigidity.hpp"

namespace {

using json = nlohmann::json;
using namespace linerec;

EmbeddedGraph load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_instance(in);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::kTrue: return "true";
        case Verdict::kFalse: return "false";
        default: return "unknown";
    }
}

json witness_json(const WitnessPartition& w) {
    json j;
    j["blocks"] = w.blocks;  // already sorted vertex lists
    json offs = json::array();
    for (const auto& [key, val] : w.offsets) {
        offs.push_back(std::to_string(key.first) + " " + std::to_string(key.second) + " " +
                       rat_to_string(val));
    }
    j["offsets"] = offs;
    return j;
}

json certificate_json(const NacColoring& nc) {
    json j;
    json colors = json::array();
    for (int c : nc.color) colors.push_back(c == kRed ? "red" : "blue");
    j["colors"] = colors;
    j["red_components"] = nc.red_components;
    j["blue_components"] = nc.blue_components;
    return j;
}

json trace_json(const ExtractionTrace& t) {
    json lines = json::array();
    for (const ExtractionStep& s : t.steps)
        lines.push_back({{"size", s.size}, {"edges", s.edges}, {"branch", s.branch}});
    return lines;
}

ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return config_from_map(parse_key_values(in));
}

void write_rows_csv(const std::string& header, const std::vector<std::string>& lines,
                    const std::string& out_path) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << header << "\n";
    for (const std::string& l : lines) *out << l << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 1-d point set reconstruction toolkit"};
    app.require_subcommand(1);

    int threads = 1;
    if (const char* env = std::getenv("LINEREC_THREADS")) threads = std::max(1, std::atoi(env));

    std::string input, output, config_path;
    std::uint64_t budget = std::uint64_t(1) << 20;
    std::uint64_t seed = 1;

    // rigid check
    auto* rigid = app.add_subcommand("rigid", "global rigidity");
    auto* rigid_check = rigid->add_subcommand("check", "NAC-criterion rigidity test");
    rigid_check->add_option("--input", input, "instance file")->required();
    rigid_check->add_option("--output", output, "output path (default stdout)");
    rigid_check->add_option("--budget", budget, "search node budget");
    rigid_check->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        RigidityVerdict rv = find_rigidity_certificate(eg.graph, budget);
        json j;
        j["globally_rigid"] = verdict_str(rv.globally_rigid);
        if (rv.certificate) j["certificate"] = certificate_json(*rv.certificate);
        emit(j, output);
    });

    // recon pairs|subsets|witness
    auto* recon = app.add_subcommand("recon", "reconstructibility");
    auto* recon_pairs = recon->add_subcommand("pairs", "reconstructible pairs");
    recon_pairs->add_option("--input", input)->required();
    recon_pairs->add_option("--output", output);
    recon_pairs->add_option("--budget", budget);
    recon_pairs->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        ReconReport rep = maximal_reconstructible_subsets(eg, budget);
        json j;
        j["exhausted"] = rep.exhausted;
        json pairs = json::array();
        for (const auto& [u, v] : rep.reconstructible_pairs) pairs.push_back({u, v});
        j["reconstructible_pairs"] = pairs;
        emit(j, output);
    });
    auto* recon_subsets = recon->add_subcommand("subsets", "maximal reconstructible subsets");
    recon_subsets->add_option("--input", input)->required();
    recon_subsets->add_option("--output", output);
    recon_subsets->add_option("--budget", budget);
    recon_subsets->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        ReconReport rep = maximal_reconstructible_subsets(eg, budget);
        json j;
        j["exhausted"] = rep.exhausted;
        j["maximal_subsets"] = rep.maximal_subsets;
        emit(j, output);
    });
    int wu = 0, wv = 1;
    auto* recon_witness = recon->add_subcommand("witness", "witness partition for a pair");
    recon_witness->add_option("--input", input)->required();
    recon_witness->add_option("--u", wu, "first vertex")->required();
    recon_witness->add_option("--v", wv, "second vertex")->required();
    recon_witness->add_option("--output", output);
    recon_witness->add_option("--budget", budget);
    recon_witness->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        Verdict verdict = is_pair_reconstructible(eg, wu, wv, budget);
        json j;
        j["pair"] = {wu, wv};
        j["reconstructible"] = verdict_str(verdict);
        if (verdict == Verdict::kFalse && component_ids(eg.graph)[wu] == component_ids(eg.graph)[wv]) {
            WitnessPartition w = extract_witness(eg, wu, wv, budget);
            j["witness"] = witness_json(w);
            j["witness_valid"] = validate_witness(eg, w);
        }
        emit(j, output);
    });

    // decomp core|kernel|phi|good
    auto* decomp = app.add_subcommand("decomp", "structural decompositions");
    auto* d_core = decomp->add_subcommand("core", "2-core");
    d_core->add_option("--input", input)->required();
    d_core->add_option("--output", output);
    d_core->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        std::vector<int> vmap;
        Graph core = two_core(eg.graph, &vmap);
        json j;
        j["vertices"] = vmap;
        json edges = json::array();
        for (const Edge& e : core.edges()) edges.push_back({vmap[e.u], vmap[e.v]});
        j["edges"] = edges;
        emit(j, output);
    });
    auto* d_kernel = decomp->add_subcommand("kernel", "kernel contraction");
    d_kernel->add_option("--input", input)->required();
    d_kernel->add_option("--output", output);
    d_kernel->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        KernelDecomposition kd = kernelize(eg.graph);
        json j;
        j["core_vertex_map"] = kd.core_vertex_map;
        j["kernel_vertex_map"] = kd.kernel_vertex_map;
        json kedges = json::array();
        for (const auto& [a, b] : kd.kernel.edges()) kedges.push_back({a, b});
        j["kernel_edges"] = kedges;
        j["edge_path_lengths"] = kd.edge_path_lengths;
        j["bare_paths"] = kd.bare_paths;
        j["cycle_components"] = kd.cycle_components;
        emit(j, output);
    });
    bool sampled = false;
    auto* d_phi = decomp->add_subcommand("phi", "edge expansion");
    d_phi->add_option("--input", input)->required();
    d_phi->add_option("--output", output);
    d_phi->add_flag("--sampled", sampled, "local search instead of exact enumeration");
    d_phi->add_option("--seed", seed);
    d_phi->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        ExpansionReport rep = expansion(eg.graph, !sampled, seed);
        json j;
        j["phi"] = rat_to_string(rep.phi);
        j["witness_set"] = rep.witness_set;
        j["exact"] = rep.exact;
        emit(j, output);
    });
    long long good_n = 0;
    std::string eps_str = "3/10", gamma_str = "1/2";
    auto* d_good = decomp->add_subcommand("good", "seven-condition good-graph check");
    d_good->add_option("--input", input)->required();
    d_good->add_option("--n", good_n, "ambient n for the thresholds")->required();
    d_good->add_option("--eps", eps_str, "epsilon as a rational");
    d_good->add_option("--gamma", gamma_str, "gamma as a rational");
    d_good->add_option("--output", output);
    d_good->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        GoodGraphReport rep =
            good_graph_check(eg.graph, good_n, rat_parse(eps_str), rat_parse(gamma_str));
        json j;
        j["deg3_count_ok"] = rep.deg3_count_ok;
        j["expander_ok"] = rep.expander_ok;
        j["girth_ok"] = rep.girth_ok;
        j["bare_path_ok"] = rep.bare_path_ok;
        j["degree_ok"] = rep.degree_ok;
        j["edge_cut_ok"] = rep.edge_cut_ok;
        j["edge_cut_vacuous_reading"] = rep.edge_cut_vacuous_reading;
        j["neighborhood_ok"] = rep.neighborhood_ok;
        j["exhaustive"] = rep.exhaustive;
        j["violating_set"] = rep.violating_set;
        j["overall"] = rep.overall;
        emit(j, output);
    });

    // extract weakbt|dense
    auto* extract = app.add_subcommand("extract", "globally rigid subgraphs");
    auto* e_weak = extract->add_subcommand("weakbt", "NAC-recursion extraction");
    e_weak->add_option("--input", input)->required();
    e_weak->add_option("--output", output);
    e_weak->add_option("--budget", budget);
    e_weak->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        WeakbtResult res = extract_weakbt(eg.graph, budget);
        json j;
        j["status"] = verdict_str(res.status);
        j["vertices"] = res.vertices;
        j["bound"] = res.bound;
        j["bound_ok"] = res.bound_ok;
        j["trace"] = trace_json(res.trace);
        emit(j, output);
    });
    auto* e_dense = extract->add_subcommand("dense", "density-increment extraction");
    e_dense->add_option("--input", input)->required();
    e_dense->add_option("--eps", eps_str, "epsilon in (0, 1/2), as a rational");
    e_dense->add_option("--output", output);
    e_dense->add_option("--budget", budget);
    e_dense->callback([&] {
        EmbeddedGraph eg = load_instance(input);
        DenseResult res = extract_dense(eg.graph, rat_parse(eps_str), budget);
        json j;
        j["status"] = verdict_str(res.status);
        j["vertices"] = res.vertices;
        j["i1"] = res.i1;
        j["i2"] = res.i2;
        j["harmonic_loss"] = rat_to_string(res.harmonic_loss);
        j["bound"] = res.bound;
        j["bound_positive"] = res.bound_positive;
        j["bound_ok"] = res.bound_ok;
        j["trace"] = trace_json(res.trace);
        emit(j, output);
    });

    // sim gnp|dlp
    auto* sim = app.add_subcommand("sim", "random models");
    int sim_n = 100;
    double sim_p = 0.02, sim_lambda = 1.3;
    std::string style = "generic";
    auto* s_gnp = sim->add_subcommand("gnp", "G(n,p) instance");
    s_gnp->add_option("--n", sim_n)->required();
    s_gnp->add_option("--p", sim_p)->required();
    s_gnp->add_option("--seed", seed);
    s_gnp->add_option("--style", style, "embedding style");
    s_gnp->add_option("--output", output);
    s_gnp->callback([&] {
        Graph g = sample_gnp(sim_n, sim_p, seed);
        EmbeddedGraph eg =
            random_embedding(g, embedding_style_from_string(style), split_seed(seed, 1));
        std::ostringstream head;
        head << "# model=gnp n=" << sim_n << " p=" << sim_p << " seed=" << seed
             << " style=" << style << "\n";
        std::string body = head.str() + write_instance(eg);
        if (output.empty()) std::cout << body;
        else std::ofstream(output) << body;
    });
    auto* s_dlp = sim->add_subcommand("dlp", "contiguous 2-core model instance");
    s_dlp->add_option("--lambda", sim_lambda)->required();
    s_dlp->add_option("--n", sim_n)->required();
    s_dlp->add_option("--seed", seed);
    s_dlp->add_option("--style", style);
    s_dlp->add_option("--output", output);
    s_dlp->callback([&] {
        DlpSample sample = sample_dlp(make_dlp_params(sim_lambda, sim_n), seed);
        std::ostringstream head;
        head << "# model=dlp lambda=" << sim_lambda << " n=" << sim_n << " seed=" << seed
             << " style=" << style << " degenerate=" << sample.degenerate
             << " resampled=" << sample.resampled_lengths << "\n";
        std::string body = head.str();
        if (sample.graph.vertex_count() > 0) {
            EmbeddedGraph eg = random_embedding(
                sample.graph, embedding_style_from_string(style), split_seed(seed, 1));
            body += write_instance(eg);
        } else {
            body += "0 0\n";
        }
        if (output.empty()) std::cout << body;
        else std::ofstream(output) << body;
    });

    // counterexample hypercube
    auto* cex = app.add_subcommand("counterexample", "known counterexample constructions");
    int cube_k = 3;
    std::string mode = "direct";
    auto* c_cube = cex->add_subcommand("hypercube", "base-3 hypercube instance");
    c_cube->add_option("--k", cube_k, "dimension (1..20)")->required();
    c_cube->add_option("--mode", mode, "direct|oracle");
    c_cube->add_option("--output", output, "write the instance file here");
    c_cube->callback([&] {
        HypercubeInstance inst = build_hypercube(cube_k);
        if (!output.empty()) std::ofstream(output) << write_instance(inst.eg);
        CounterexampleReport rep = verify_counterexample(
            inst, mode == "oracle" ? CounterexampleMode::kOracle : CounterexampleMode::kDirect);
        json j;
        j["k"] = rep.k;
        j["ok"] = rep.ok;
        j["pairs_checked"] = rep.pairs_checked;
        j["triangle_free"] = rep.triangle_free;
        if (!rep.failure.empty()) j["failure"] = rep.failure;
        std::cout << j.dump(2) << "\n";
    });

    // exp giant|lemmas
    auto* exp = app.add_subcommand("exp", "experiment harness");
    std::string n_grid_str, eps_grid_str;
    int seeds_override = -1;
    std::uint64_t seed_override = 0;
    bool have_seed_override = false;
    auto add_exp_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key=value config file");
        sub->add_option("--n-grid", n_grid_str, "override: comma-separated n values");
        sub->add_option("--eps-grid", eps_grid_str, "override: comma-separated eps values");
        sub->add_option("--seeds", seeds_override, "override: seeds per cell");
        sub->add_option("--seed", seed_override, "override: master seed")
            ->each([&](const std::string&) { have_seed_override = true; });
        sub->add_option("--output", output, "override: CSV output path");
    };
    auto build_cfg = [&]() {
        ExperimentConfig cfg = load_config(config_path);
        if (!n_grid_str.empty())
            cfg.n_grid = detail::parse_list<int>(
                n_grid_str, [](const std::string& s) { return std::stoi(s); });
        if (!eps_grid_str.empty())
            cfg.eps_grid = detail::parse_list<double>(
                eps_grid_str, [](const std::string& s) { return std::stod(s); });
        if (seeds_override > 0) cfg.seeds = seeds_override;
        if (have_seed_override) cfg.seed = seed_override;
        if (!output.empty()) cfg.output = output;
        return cfg;
    };
    auto* exp_giant = exp->add_subcommand("giant", "giant-reconstruction sweep");
    add_exp_common(exp_giant);
    exp_giant->callback([&] {
        ExperimentConfig cfg = build_cfg();
        std::vector<std::string> lines;
        for (const GiantRow& r : run_giant_experiment(cfg, threads)) lines.push_back(to_csv(r));
        write_rows_csv(giant_csv_header(), lines, cfg.output);
    });
    auto* exp_lemmas = exp->add_subcommand("lemmas", "lemma-bound checks");
    add_exp_common(exp_lemmas);
    exp_lemmas->callback([&] {
        ExperimentConfig cfg = build_cfg();
        std::vector<LemmaRow> rows = run_lemma_checks(cfg, threads);
        std::vector<std::string> lines;
        bool hard_fail = false;
        for (const LemmaRow& r : rows) {
            lines.push_back(to_csv(r));
            if (!r.pass && !r.asymptotic_warning) hard_fail = true;
        }
        write_rows_csv(lemma_csv_header(), lines, cfg.output);
        if (hard_fail) throw CLI::RuntimeError("lemma check failed", 2);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
