#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biasprobe/bias_stats.hpp"
#include "biasprobe/objectives.hpp"
#include "biasprobe/optimizers.hpp"
#include "biasprobe/rng_forensics.hpp"

namespace biasprobe::harness {

/// Raised for bad command-line/config input; the CLI maps it to a usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AlgorithmChoice { kGa, kPso, kSga, kRa };

AlgorithmChoice algorithm_from_name(const std::string& name);
std::string algorithm_name(AlgorithmChoice a);

/// One experiment: algorithm x population sizes x runs, a shared objective
/// and engine family, and output locations. JSON schema and defaults are
/// documented in docs/file-formats.md; command-line flags override file
/// values field by field.
struct ExperimentConfig {
    AlgorithmChoice algorithm = AlgorithmChoice::kGa;
    std::string objective = "f0";
    std::size_t dim = 30;
    std::vector<std::size_t> population_sizes = {5, 20, 100};
    std::uint32_t runs = 50;
    std::uint64_t budget = 300000;
    std::uint64_t master_seed = 1;
    std::uint64_t snapshot_every = 0;  // 0 -> ceil(budget/100)
    std::string engine = "lcg48";
    std::string out_dir = "out";
    std::optional<std::pair<double, double>> domain_override;  // uniform box

    // Algorithm parameters (the subset that differs from compiled defaults
    // can be set via the "params" object in the config file).
    optim::GaConfig ga;
    optim::PsoConfig pso;
    optim::SimplifiedGaConfig sga;
    optim::RaConfig ra;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);

    objectives::Objective make_objective() const;
    objectives::SearchDomain make_domain() const;
};

/// Reproduction preset: GA and PSO, probe objective, dim 30, budget 300000,
/// population sizes {5, 20, 100}, 50 runs each.
std::vector<ExperimentConfig> paper_f0_preset(std::uint64_t master_seed,
                                              const std::string& out_dir);

struct RunArtifacts {
    std::vector<std::string> trace_files;  // in run order
    std::string manifest_file;
};

/// Execute the experiment: one JSONL trace per (population size, run index),
/// named <alg>_N<pop>_r<run>.jsonl, plus a manifest JSON with the config and
/// its hash. Runs execute on a worker pool (BIASPROBE_THREADS caps it;
/// `threads` > 0 overrides); per-run seeding makes parallel and sequential
/// execution byte-identical. Recorded engines force sequential execution
/// because they consume a single shared stream.
RunArtifacts cmd_run(const ExperimentConfig& config, unsigned threads = 0);

struct ReportArtifacts {
    stats::BiasReport report;
    std::string report_file;
    std::string csv_file;
};

/// Extract final_best points from >= 5 trace files, test per-dimension
/// uniformity against the traced domain, and write report JSON (+ optional
/// per-dimension p-value CSV).
ReportArtifacts cmd_report(const std::vector<std::string>& trace_files, double alpha,
                           const std::string& report_file, const std::string& csv_file = {});

struct TheoryRequest {
    std::size_t n = 50;
    double d = 0.2;
    double sigma2 = 0.1;
    // Optional drift scan: `scan_rows` random configurations on [0,1]^n.
    std::uint64_t scan_rows = 0;
    std::uint64_t scan_trials = 100000;
    std::uint64_t scan_seed = 1;
};

/// Emit closed-form quantities as JSON (+ optional drift table CSV with
/// columns S2, drift_closed, drift_mc_mean, drift_mc_se).
nlohmann::json cmd_theory(const TheoryRequest& request, const std::string& json_file,
                          const std::string& csv_file = {});

struct RngTestRequest {
    std::string engine = "lcg48";
    std::uint64_t seed = 1;
    std::uint64_t count = 100000;
    std::uint64_t period = 65;
    rng::LagMode mode = rng::LagMode::pooled();
    std::string csv_file;
    std::string svg_file;
};

/// Generate a sequence, extract lag pairs, write the x,y CSV and scatter SVG,
/// and return a summary (count, pairs, pearson_r, ...).
nlohmann::json cmd_rngtest(const RngTestRequest& request);

struct AlgkRequest {
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 100000;
    std::uint64_t scan_count = 0;  // > 0 switches to scan mode over [seed, seed+count)
};

nlohmann::json cmd_algk(const AlgkRequest& request, const std::string& json_file = {});

enum class FigureKind { kParallelCoordinates, kEvolution, kScatter, kPValueStrip };

FigureKind figure_from_name(const std::string& name);

/// Dispatch to the plot builders. pcoords consumes trace files and emits
/// <prefix>_first.svg and <prefix>_last.svg (best points of the first and
/// last snapshots); evolution consumes trace files and needs `dimension`;
/// scatter consumes a lag-pair CSV; pstrip consumes report JSON files.
std::vector<std::string> cmd_plot(FigureKind kind, const std::vector<std::string>& inputs,
                                  const std::string& out_prefix,
                                  std::optional<std::size_t> dimension = std::nullopt);

/// Worker-pool size: explicit override, else BIASPROBE_THREADS, else
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

}  // namespace biasprobe::harness
