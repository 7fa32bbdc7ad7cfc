#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "biasprobe/harness.hpp"
#include "biasprobe/rng.hpp"

namespace {

using namespace biasprobe;

// Subcommand state shared with the CLI11 callbacks.
struct RunOptions {
    std::string config_file;
    std::string preset;
    std::string alg;
    std::string objective;
    std::size_t dim = 0;
    std::vector<std::size_t> pops;
    std::uint32_t runs = 0;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t snapshot_every = 0;
    bool snapshot_set = false;
    std::string engine;
    std::string out;
    unsigned threads = 0;
};

harness::ExperimentConfig merge_run_options(const RunOptions& opt) {
    harness::ExperimentConfig config;
    if (!opt.config_file.empty()) {
        std::ifstream in(opt.config_file);
        if (!in) throw harness::UsageError("cannot open config file: " + opt.config_file);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw harness::UsageError("malformed config JSON: " + opt.config_file);
        config = harness::ExperimentConfig::from_json(j);
    }
    // Flags override file values.
    if (!opt.alg.empty()) config.algorithm = harness::algorithm_from_name(opt.alg);
    if (!opt.objective.empty()) config.objective = opt.objective;
    if (opt.dim > 0) config.dim = opt.dim;
    if (!opt.pops.empty()) config.population_sizes = opt.pops;
    if (opt.runs > 0) config.runs = opt.runs;
    if (opt.budget > 0) config.budget = opt.budget;
    if (opt.seed_set) config.master_seed = opt.seed;
    if (opt.snapshot_set) config.snapshot_every = opt.snapshot_every;
    if (!opt.engine.empty()) config.engine = opt.engine;
    if (!opt.out.empty()) config.out_dir = opt.out;
    return config;
}

int do_run(const RunOptions& opt) {
    std::vector<harness::ExperimentConfig> configs;
    if (!opt.preset.empty()) {
        if (opt.preset != "paper-f0")
            throw harness::UsageError("unknown preset: " + opt.preset);
        const std::string out = opt.out.empty() ? "out" : opt.out;
        configs = harness::paper_f0_preset(opt.seed_set ? opt.seed : 1, out);
    } else {
        configs.push_back(merge_run_options(opt));
    }
    for (const auto& config : configs) {
        const harness::RunArtifacts artifacts = harness::cmd_run(config, opt.threads);
        std::cout << artifacts.manifest_file << " (" << artifacts.trace_files.size()
                  << " traces)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural-bias diagnostics for population-based optimizers"};
    app.require_subcommand(1);

    // run
    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "execute an experiment and write trace files");
    run->add_option("--config", run_opt.config_file, "experiment config JSON");
    run->add_option("--preset", run_opt.preset, "named preset (paper-f0)");
    run->add_option("--alg", run_opt.alg, "algorithm: ga, pso, sga, ra");
    run->add_option("--objective", run_opt.objective, "objective name (f0, sphere, ...)");
    run->add_option("--dim", run_opt.dim, "problem dimensionality");
    run->add_option("--pop", run_opt.pops, "population sizes")->delimiter(',');
    run->add_option("--runs", run_opt.runs, "independent runs per population size");
    run->add_option("--budget", run_opt.budget, "objective evaluations per run");
    run->add_option("--seed", run_opt.seed, "master seed")
        ->each([&](const std::string&) { run_opt.seed_set = true; });
    run->add_option("--snapshot-every", run_opt.snapshot_every, "snapshot cadence in evaluations")
        ->each([&](const std::string&) { run_opt.snapshot_set = true; });
    run->add_option("--engine", run_opt.engine, "lcg48 or recorded:<path>");
    run->add_option("--out", run_opt.out, "output directory");
    run->add_option("--threads", run_opt.threads, "worker pool size (default BIASPROBE_THREADS)");

    // report
    std::vector<std::string> report_traces;
    double report_alpha = 0.05;
    std::string report_out = "report.json", report_csv;
    auto* report = app.add_subcommand("report", "per-dimension uniformity report over traces");
    report->add_option("traces", report_traces, "trace files (JSONL)")->required();
    report->add_option("--alpha", report_alpha, "significance level");
    report->add_option("--out", report_out, "report JSON path");
    report->add_option("--csv", report_csv, "optional per-dimension p-value CSV");

    // theory
    harness::TheoryRequest theory_req;
    std::string theory_out = "theory.json", theory_csv;
    auto* theory = app.add_subcommand("theory", "variance-contraction quantities");
    theory->add_option("--N", theory_req.n, "population size");
    theory->add_option("--d", theory_req.d, "blend overshoot");
    theory->add_option("--sigma2", theory_req.sigma2, "noise variance");
    theory->add_option("--scan", theory_req.scan_rows, "rows of the drift table");
    theory->add_option("--trials", theory_req.scan_trials, "Monte-Carlo trials per row");
    theory->add_option("--scan-seed", theory_req.scan_seed, "seed for the drift scan");
    theory->add_option("--out", theory_out, "output JSON path");
    theory->add_option("--csv", theory_csv, "drift table CSV path");

    // rngtest
    harness::RngTestRequest rng_req;
    std::string rng_mode = "pooled";
    auto* rngtest = app.add_subcommand("rngtest", "lag-pair correlation tests");
    rngtest->add_option("--engine", rng_req.engine, "lcg48 or recorded:<path>");
    rngtest->add_option("--seed", rng_req.seed, "engine seed (lcg48)");
    rngtest->add_option("--count", rng_req.count, "sequence length");
    rngtest->add_option("--period", rng_req.period, "lag period");
    rngtest->add_option("--mode", rng_mode, "pooled or single:<offset>");
    rngtest->add_option("--csv", rng_req.csv_file, "lag-pair CSV path");
    rngtest->add_option("--svg", rng_req.svg_file, "scatter SVG path");

    // algk
    harness::AlgkRequest algk_req;
    std::string algk_out;
    auto* algk = app.add_subcommand("algk", "orbit analysis of the self-scrambling generator");
    algk->add_option("--seed", algk_req.seed, "starting 10-digit value");
    algk->add_option("--max-steps", algk_req.max_steps, "detection budget");
    algk->add_option("--scan-count", algk_req.scan_count, "scan this many seeds from --seed");
    algk->add_option("--out", algk_out, "output JSON path");

    // plot
    std::string plot_figure, plot_prefix = "plot";
    std::vector<std::string> plot_inputs;
    std::int64_t plot_dimension = -1;
    auto* plot = app.add_subcommand("plot", "render SVG figures from traces or reports");
    plot->add_option("--figure", plot_figure, "pcoords, evolution, scatter or pstrip")->required();
    plot->add_option("--dimension", plot_dimension, "dimension index (evolution)");
    plot->add_option("--out", plot_prefix, "output path prefix");
    plot->add_option("inputs", plot_inputs, "input files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(run_opt);
        if (report->parsed()) {
            const auto artifacts =
                harness::cmd_report(report_traces, report_alpha, report_out, report_csv);
            std::cout << artifacts.report_file << " median_p=" << artifacts.report.median_p
                      << " dims_below_alpha=" << artifacts.report.dims_below_alpha << " verdict="
                      << artifacts.report.verdict << "\n";
            return 0;
        }
        if (theory->parsed()) {
            const auto out = harness::cmd_theory(theory_req, theory_out, theory_csv);
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (rngtest->parsed()) {
            if (rng_mode == "pooled")
                rng_req.mode = rng::LagMode::pooled();
            else if (rng_mode.rfind("single:", 0) == 0)
                rng_req.mode = rng::LagMode::single_offset(std::stoull(rng_mode.substr(7)));
            else
                throw harness::UsageError("bad --mode: " + rng_mode);
            std::cout << harness::cmd_rngtest(rng_req).dump() << "\n";
            return 0;
        }
        if (algk->parsed()) {
            std::cout << harness::cmd_algk(algk_req, algk_out).dump() << "\n";
            return 0;
        }
        if (plot->parsed()) {
            std::optional<std::size_t> dim;
            if (plot_dimension >= 0) dim = static_cast<std::size_t>(plot_dimension);
            const auto outputs = harness::cmd_plot(harness::figure_from_name(plot_figure),
                                                   plot_inputs, plot_prefix, dim);
            for (const auto& f : outputs) std::cout << f << "\n";
            return 0;
        }
    } catch (const harness::UsageError& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}" << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}" << std::endl;
        return 1;
    }
    return 0;
}
