#include "biasprobe/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "biasprobe/algorithm_k.hpp"
#include "biasprobe/trace_io.hpp"
#include "biasprobe/variance_theory.hpp"
#include "biasprobe/viz.hpp"

namespace biasprobe::harness {

namespace fs = std::filesystem;

AlgorithmChoice algorithm_from_name(const std::string& name) {
    if (name == "ga") return AlgorithmChoice::kGa;
    if (name == "pso") return AlgorithmChoice::kPso;
    if (name == "sga") return AlgorithmChoice::kSga;
    if (name == "ra") return AlgorithmChoice::kRa;
    throw UsageError("unknown algorithm: " + name + " (expected ga, pso, sga or ra)");
}

std::string algorithm_name(AlgorithmChoice a) {
    switch (a) {
        case AlgorithmChoice::kGa: return "ga";
        case AlgorithmChoice::kPso: return "pso";
        case AlgorithmChoice::kSga: return "sga";
        case AlgorithmChoice::kRa: return "ra";
    }
    throw UsageError("bad algorithm choice");
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BIASPROBE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j{{"algorithm", algorithm_name(algorithm)},
                     {"objective", objective},
                     {"dim", dim},
                     {"population_sizes", population_sizes},
                     {"runs", runs},
                     {"budget", budget},
                     {"master_seed", master_seed},
                     {"snapshot_every", snapshot_every},
                     {"engine", engine},
                     {"out_dir", out_dir}};
    if (domain_override)
        j["domain"] = {{"lower", domain_override->first}, {"upper", domain_override->second}};
    nlohmann::json params = nlohmann::json::object();
    switch (algorithm) {
        case AlgorithmChoice::kGa:
            params = {{"tournament_size", ga.tournament_size},
                      {"d", ga.blend_overshoot},
                      {"mutation_rate", ga.mutation_rate},
                      {"mutation_probability", ga.mutation_probability}};
            break;
        case AlgorithmChoice::kPso:
            params = {{"c0", pso.inertia},
                      {"c1", pso.cognitive},
                      {"c2", pso.social},
                      {"v_init_max", pso.velocity_init_max},
                      {"v_clamp", pso.velocity_clamp},
                      {"alpha_mode",
                       pso.alpha_per_coordinate ? "per_coordinate" : "per_solution"},
                      {"boundary",
                       pso.boundary == optim::BoundaryPolicy::kSaturate ? "saturate" : "none"}};
            break;
        case AlgorithmChoice::kSga:
            params = {{"d", sga.blend_overshoot}, {"sigma", sga.sigma}};
            break;
        case AlgorithmChoice::kRa:
            break;
    }
    j["params"] = params;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("algorithm")) c.algorithm = algorithm_from_name(j.at("algorithm"));
    c.objective = j.value("objective", c.objective);
    c.dim = j.value("dim", c.dim);
    if (j.contains("population_sizes"))
        c.population_sizes = j.at("population_sizes").get<std::vector<std::size_t>>();
    c.runs = j.value("runs", c.runs);
    c.budget = j.value("budget", c.budget);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.snapshot_every = j.value("snapshot_every", c.snapshot_every);
    c.engine = j.value("engine", c.engine);
    c.out_dir = j.value("out_dir", c.out_dir);
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        c.domain_override = {d.at("lower").get<double>(), d.at("upper").get<double>()};
    }
    if (j.contains("params")) {
        const auto& p = j.at("params");
        switch (c.algorithm) {
            case AlgorithmChoice::kGa:
                c.ga.tournament_size = p.value("tournament_size", c.ga.tournament_size);
                c.ga.blend_overshoot = p.value("d", c.ga.blend_overshoot);
                c.ga.mutation_rate = p.value("mutation_rate", c.ga.mutation_rate);
                c.ga.mutation_probability =
                    p.value("mutation_probability", c.ga.mutation_probability);
                break;
            case AlgorithmChoice::kPso:
                c.pso.inertia = p.value("c0", c.pso.inertia);
                c.pso.cognitive = p.value("c1", c.pso.cognitive);
                c.pso.social = p.value("c2", c.pso.social);
                c.pso.velocity_init_max = p.value("v_init_max", c.pso.velocity_init_max);
                c.pso.velocity_clamp = p.value("v_clamp", c.pso.velocity_clamp);
                if (p.value("alpha_mode", "per_coordinate") == std::string("per_solution"))
                    c.pso.alpha_per_coordinate = false;
                if (p.value("boundary", "saturate") == std::string("none"))
                    c.pso.boundary = optim::BoundaryPolicy::kNone;
                break;
            case AlgorithmChoice::kSga:
                c.sga.blend_overshoot = p.value("d", c.sga.blend_overshoot);
                c.sga.sigma = p.value("sigma", c.sga.sigma);
                break;
            case AlgorithmChoice::kRa:
                break;
        }
    }
    return c;
}

objectives::SearchDomain ExperimentConfig::make_domain() const {
    if (domain_override)
        return objectives::SearchDomain::uniform_box(dim, domain_override->first,
                                                     domain_override->second);
    return objectives::default_domain(objectives::objective_kind_from_name(objective), dim);
}

objectives::Objective ExperimentConfig::make_objective() const {
    return objectives::Objective::make(objectives::objective_kind_from_name(objective),
                                       make_domain());
}

std::vector<ExperimentConfig> paper_f0_preset(std::uint64_t master_seed,
                                              const std::string& out_dir) {
    ExperimentConfig ga;
    ga.algorithm = AlgorithmChoice::kGa;
    ga.master_seed = master_seed;
    ga.out_dir = (fs::path(out_dir) / "ga").string();
    ExperimentConfig pso = ga;
    pso.algorithm = AlgorithmChoice::kPso;
    pso.out_dir = (fs::path(out_dir) / "pso").string();
    return {ga, pso};
}

namespace {

void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct RunTask {
    std::size_t popsize = 0;
    std::uint32_t run = 0;        // index within this population size
    std::uint64_t ordinal = 0;    // global index used for seeding
    std::string file;
};

}  // namespace

RunArtifacts cmd_run(const ExperimentConfig& config, unsigned threads) {
    if (config.runs < 1) throw UsageError("runs must be >= 1");
    if (config.population_sizes.empty()) throw UsageError("population_sizes must be non-empty");
    fs::create_directories(config.out_dir);

    const objectives::SearchDomain domain = config.make_domain();
    const objectives::Objective objective = config.make_objective();
    const std::string alg = algorithm_name(config.algorithm);

    std::vector<RunTask> tasks;
    tasks.reserve(config.population_sizes.size() * config.runs);
    for (std::size_t pi = 0; pi < config.population_sizes.size(); ++pi) {
        for (std::uint32_t r = 0; r < config.runs; ++r) {
            RunTask task;
            task.popsize = config.population_sizes[pi];
            task.run = r;
            task.ordinal = pi * config.runs + r;
            task.file = (fs::path(config.out_dir) /
                         (alg + "_N" + std::to_string(task.popsize) + "_r" + std::to_string(r) +
                          ".jsonl"))
                            .string();
            tasks.push_back(std::move(task));
        }
    }

    // A recorded source is one shared finite stream; runs must consume it in
    // order, so parallel execution is disabled for it.
    const bool recorded = config.engine != "lcg48";
    std::unique_ptr<rng::RngEngine> shared_engine;
    if (recorded) shared_engine = rng::make_engine(config.engine, 0);

    auto run_one = [&](std::size_t index) {
        const RunTask& task = tasks[index];
        const std::uint64_t run_seed = rng::derive_run_seed(config.master_seed, task.ordinal);
        std::unique_ptr<rng::RngEngine> own_engine;
        rng::RngEngine* engine = shared_engine.get();
        if (!engine) {
            own_engine = std::make_unique<rng::Lcg48Engine>(run_seed);
            engine = own_engine.get();
        }

        nlohmann::json header;
        switch (config.algorithm) {
            case AlgorithmChoice::kGa: {
                optim::GaConfig c = config.ga;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                header = optim::ga_header(c, objective, domain);
                break;
            }
            case AlgorithmChoice::kPso: {
                optim::PsoConfig c = config.pso;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                header = optim::pso_header(c, objective, domain);
                break;
            }
            case AlgorithmChoice::kSga: {
                optim::SimplifiedGaConfig c = config.sga;
                c.population = task.popsize;
                if (config.budget < task.popsize)
                    throw UsageError("budget must cover the initial population");
                c.steps = config.budget - task.popsize;
                c.snapshot_every = config.snapshot_every;
                header = optim::sga_header(c, objective, domain);
                break;
            }
            case AlgorithmChoice::kRa: {
                optim::RaConfig c = config.ra;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                header = optim::ra_header(c, objective, domain);
                break;
            }
        }
        header["engine"] = config.engine;
        header["master_seed"] = config.master_seed;
        header["run"] = task.run;
        header["run_index"] = task.ordinal;
        header["run_seed"] = recorded ? 0 : run_seed;

        io::TraceWriter writer(task.file, header);
        const auto sink = [&writer](const optim::Snapshot& s) { writer.write_snapshot(s); };

        optim::RunTrace trace;
        switch (config.algorithm) {
            case AlgorithmChoice::kGa: {
                optim::GaConfig c = config.ga;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                trace = optim::ga_run(c, objective, domain, *engine, sink);
                break;
            }
            case AlgorithmChoice::kPso: {
                optim::PsoConfig c = config.pso;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                trace = optim::pso_run(c, objective, domain, *engine, sink);
                break;
            }
            case AlgorithmChoice::kSga: {
                optim::SimplifiedGaConfig c = config.sga;
                c.population = task.popsize;
                c.steps = config.budget - task.popsize;
                c.snapshot_every = config.snapshot_every;
                trace = optim::sga_run(c, objective, domain, *engine, sink);
                break;
            }
            case AlgorithmChoice::kRa: {
                optim::RaConfig c = config.ra;
                c.population = task.popsize;
                c.budget = config.budget;
                c.snapshot_every = config.snapshot_every;
                trace = optim::ra_run(c, objective, domain, *engine, sink);
                break;
            }
        }
        writer.write_final_best(trace.final_best, config.budget);
    };

    const unsigned pool = recorded ? 1 : resolve_threads(threads);
    run_parallel(tasks.size(), pool, run_one);

    RunArtifacts artifacts;
    for (const auto& task : tasks) artifacts.trace_files.push_back(task.file);

    nlohmann::json manifest;
    const nlohmann::json config_json = config.to_json();
    manifest["config"] = config_json;
    manifest["config_hash"] = io::config_hash(config_json);
    nlohmann::json files = nlohmann::json::array();
    for (const auto& task : tasks) files.push_back(fs::path(task.file).filename().string());
    manifest["files"] = files;
    artifacts.manifest_file = (fs::path(config.out_dir) / "manifest.json").string();
    std::ofstream mf(artifacts.manifest_file);
    if (!mf) throw std::runtime_error("cannot write manifest: " + artifacts.manifest_file);
    mf << manifest.dump(2) << '\n';
    return artifacts;
}

ReportArtifacts cmd_report(const std::vector<std::string>& trace_files, double alpha,
                           const std::string& report_file, const std::string& csv_file) {
    if (trace_files.size() < 5) throw UsageError("report needs at least 5 trace files");

    std::vector<std::vector<double>> points;
    points.reserve(trace_files.size());
    nlohmann::json domain_j;
    std::string metadata;
    for (const auto& file : trace_files) {
        optim::RunTrace trace = io::read_trace(file);
        const auto& dj = trace.config.at("domain");
        if (domain_j.is_null()) {
            domain_j = dj;
            metadata = trace.config.value("algorithm", "?") + " " +
                       trace.config.value("objective", "?") + " budget=" +
                       std::to_string(trace.config.value("budget", std::uint64_t{0}));
        } else if (dj != domain_j) {
            throw std::runtime_error(file + ": domain differs from the other traces");
        }
        points.push_back(trace.final_best.position);
    }

    objectives::SearchDomain domain;
    domain.lower = domain_j.at("lower").get<std::vector<double>>();
    domain.upper = domain_j.at("upper").get<std::vector<double>>();
    domain.validate();

    ReportArtifacts artifacts;
    artifacts.report = stats::bias_report(points, domain, alpha,
                                          metadata + " runs=" + std::to_string(points.size()));

    nlohmann::json out{{"alpha", artifacts.report.alpha_level},
                       {"dims", artifacts.report.per_dimension.size()},
                       {"runs", points.size()},
                       {"dims_below_alpha", artifacts.report.dims_below_alpha},
                       {"median_p", artifacts.report.median_p},
                       {"verdict", artifacts.report.verdict},
                       {"metadata", artifacts.report.metadata}};
    nlohmann::json per_dim = nlohmann::json::array();
    for (std::size_t d = 0; d < artifacts.report.per_dimension.size(); ++d) {
        const auto& ks = artifacts.report.per_dimension[d];
        per_dim.push_back(
            {{"dimension", d}, {"D", ks.statistic}, {"p_value", ks.p_value}, {"n", ks.sample_size}});
    }
    out["per_dimension"] = per_dim;

    if (!report_file.empty()) {
        std::ofstream f(report_file);
        if (!f) throw std::runtime_error("cannot write report: " + report_file);
        f << out.dump(2) << '\n';
        artifacts.report_file = report_file;
    }
    if (!csv_file.empty()) {
        std::ofstream f(csv_file);
        if (!f) throw std::runtime_error("cannot write csv: " + csv_file);
        f << "dimension,p_value\n";
        for (std::size_t d = 0; d < artifacts.report.per_dimension.size(); ++d)
            f << d << ',' << io::format_double(artifacts.report.per_dimension[d].p_value) << '\n';
        artifacts.csv_file = csv_file;
    }
    return artifacts;
}

nlohmann::json cmd_theory(const TheoryRequest& request, const std::string& json_file,
                          const std::string& csv_file) {
    const theory::TheoremQuantities q =
        theory::theorem_quantities(request.n, request.d, request.sigma2);
    nlohmann::json out{{"N", q.n},
                       {"d", q.d},
                       {"sigma2", q.sigma2},
                       {"d_bound", q.d_bound},
                       {"denominator", q.k.denominator},
                       {"alpha_mean", q.alpha.mean},
                       {"alpha_second_moment", q.alpha.second_moment}};
    if (q.k.finite)
        out["K"] = q.k.value;
    else
        out["K"] = "infinite";

    if (request.scan_rows > 0) {
        if (csv_file.empty()) throw UsageError("drift scan requested without a CSV output path");
        rng::Lcg48Engine engine(request.scan_seed);
        std::ofstream f(csv_file);
        if (!f) throw std::runtime_error("cannot write csv: " + csv_file);
        f << "S2,drift_closed,drift_mc_mean,drift_mc_se\n";
        std::vector<double> x(request.n);
        const double sigma = std::sqrt(request.sigma2);
        for (std::uint64_t row = 0; row < request.scan_rows; ++row) {
            for (auto& v : x) v = engine.next_uniform();
            const double s2 = theory::sample_variance(x);
            const double closed = theory::expected_drift_unabsorbed(x, request.d, request.sigma2);
            const theory::DriftEstimate mc =
                theory::monte_carlo_drift(x, request.d, sigma, request.scan_trials, engine, false);
            f << io::format_double(s2) << ',' << io::format_double(closed) << ','
              << io::format_double(mc.mean) << ',' << io::format_double(mc.std_error) << '\n';
        }
        out["drift_table"] = csv_file;
        out["scan_rows"] = request.scan_rows;
        out["scan_trials"] = request.scan_trials;
    }

    if (!json_file.empty()) {
        std::ofstream f(json_file);
        if (!f) throw std::runtime_error("cannot write json: " + json_file);
        f << out.dump(2) << '\n';
    }
    return out;
}

nlohmann::json cmd_rngtest(const RngTestRequest& request) {
    auto engine = rng::make_engine(request.engine, request.seed);
    std::vector<double> sequence;
    sequence.reserve(request.count);
    for (std::uint64_t i = 0; i < request.count; ++i) sequence.push_back(engine->next_uniform());

    const auto pairs = rng::lag_pairs(sequence, request.period, request.mode);
    const double r = rng::pearson_correlation(pairs);

    if (!request.csv_file.empty()) rng::write_lag_pairs_csv(request.csv_file, pairs);
    if (!request.svg_file.empty()) {
        viz::PlotOptions options;
        options.title = request.engine + " lag scatter, period " + std::to_string(request.period);
        viz::scatter_svg(pairs, options).save(request.svg_file);
    }

    return nlohmann::json{
        {"engine", request.engine},
        {"seed", request.seed},
        {"count", request.count},
        {"period", request.period},
        {"mode", request.mode.kind == rng::LagMode::kPooled
                     ? std::string("pooled")
                     : "single:" + std::to_string(request.mode.offset)},
        {"pairs", pairs.size()},
        {"pearson_r", r}};
}

namespace {

const char* orbit_kind_name(algk::OrbitResult::Kind kind) {
    switch (kind) {
        case algk::OrbitResult::Kind::kFixedPoint: return "fixed_point";
        case algk::OrbitResult::Kind::kCycle: return "cycle";
        case algk::OrbitResult::Kind::kUndecided: return "undecided";
    }
    return "undecided";
}

}  // namespace

nlohmann::json cmd_algk(const AlgkRequest& request, const std::string& json_file) {
    nlohmann::json out;
    if (request.scan_count > 0) {
        const algk::ScanResult scan =
            algk::algk_scan(request.seed, request.scan_count, request.max_steps);
        out = {{"first_seed", request.seed},
               {"seeds_scanned", scan.seeds_scanned},
               {"max_steps", request.max_steps},
               {"undecided", scan.undecided}};
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& cls : scan.classes)
            classes.push_back({{"period", cls.period},
                               {"preperiod", cls.preperiod},
                               {"count", cls.count},
                               {"example_seed", cls.example_seed}});
        out["classes"] = classes;
    } else {
        const algk::OrbitResult orbit = algk::algk_orbit(request.seed, request.max_steps);
        out = {{"seed", request.seed},
               {"kind", orbit_kind_name(orbit.kind)},
               {"preperiod", orbit.preperiod},
               {"period", orbit.period},
               {"steps_used", orbit.steps_used},
               {"max_steps", request.max_steps}};
    }
    if (!json_file.empty()) {
        std::ofstream f(json_file);
        if (!f) throw std::runtime_error("cannot write json: " + json_file);
        f << out.dump(2) << '\n';
    }
    return out;
}

FigureKind figure_from_name(const std::string& name) {
    if (name == "pcoords") return FigureKind::kParallelCoordinates;
    if (name == "evolution") return FigureKind::kEvolution;
    if (name == "scatter") return FigureKind::kScatter;
    if (name == "pstrip") return FigureKind::kPValueStrip;
    throw UsageError("unknown figure kind: " + name +
                     " (expected pcoords, evolution, scatter or pstrip)");
}

namespace {

objectives::SearchDomain domain_from_header(const nlohmann::json& header) {
    objectives::SearchDomain domain;
    domain.lower = header.at("domain").at("lower").get<std::vector<double>>();
    domain.upper = header.at("domain").at("upper").get<std::vector<double>>();
    domain.validate();
    return domain;
}

std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv: " + path);
    std::vector<std::pair<double, double>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (lineno == 1 && line.rfind("x,", 0) == 0)) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected x,y row");
        pairs.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return pairs;
}

}  // namespace

std::vector<std::string> cmd_plot(FigureKind kind, const std::vector<std::string>& inputs,
                                  const std::string& out_prefix,
                                  std::optional<std::size_t> dimension) {
    if (inputs.empty()) throw UsageError("plot needs at least one input file");
    std::vector<std::string> outputs;

    switch (kind) {
        case FigureKind::kParallelCoordinates: {
            std::vector<std::vector<double>> first_points, last_points;
            std::vector<double> first_fitness, last_fitness;
            nlohmann::json header;
            for (const auto& file : inputs) {
                optim::RunTrace trace = io::read_trace(file);
                if (header.is_null()) header = trace.config;
                if (trace.snapshots.empty())
                    throw std::runtime_error(file + ": trace has no snapshots");
                const optim::Individual first = optim::best_of(trace.snapshots.front());
                first_points.push_back(first.position);
                first_fitness.push_back(first.fitness);
                last_points.push_back(trace.final_best.position);
                last_fitness.push_back(trace.final_best.fitness);
            }
            const objectives::SearchDomain domain = domain_from_header(header);
            const std::string alg = header.value("algorithm", "?");
            viz::ColorMap colormap;
            viz::PlotOptions options;
            options.title = alg + " best points, first populations";
            viz::parallel_coordinates_svg(first_points, domain, first_fitness, colormap, options)
                .save(out_prefix + "_first.svg");
            options.title = alg + " best points, final populations";
            viz::parallel_coordinates_svg(last_points, domain, last_fitness, colormap, options)
                .save(out_prefix + "_last.svg");
            outputs = {out_prefix + "_first.svg", out_prefix + "_last.svg"};
            break;
        }
        case FigureKind::kEvolution: {
            if (!dimension) throw UsageError("evolution plot requires --dimension");
            std::vector<optim::RunTrace> traces;
            traces.reserve(inputs.size());
            for (const auto& file : inputs) traces.push_back(io::read_trace(file));
            viz::PlotOptions options;
            options.title = traces.front().config.value("algorithm", "?") + " evolution, dimension " +
                            std::to_string(*dimension);
            viz::ColorMap colormap;
            viz::evolution_plot_svg(traces, *dimension, colormap, options)
                .save(out_prefix + ".svg");
            outputs = {out_prefix + ".svg"};
            break;
        }
        case FigureKind::kScatter: {
            if (inputs.size() != 1) throw UsageError("scatter plot takes exactly one CSV input");
            const auto pairs = read_pairs_csv(inputs.front());
            viz::PlotOptions options;
            options.title = "lag scatter";
            viz::scatter_svg(pairs, options).save(out_prefix + ".svg");
            outputs = {out_prefix + ".svg"};
            break;
        }
        case FigureKind::kPValueStrip: {
            std::vector<std::pair<std::string, stats::BiasReport>> reports;
            for (const auto& file : inputs) {
                std::ifstream in(file);
                if (!in) throw std::runtime_error("cannot open report: " + file);
                nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
                if (j.is_discarded()) throw std::runtime_error(file + ": malformed report JSON");
                stats::BiasReport report;
                report.alpha_level = j.value("alpha", 0.05);
                report.median_p = j.value("median_p", 1.0);
                for (const auto& pd : j.at("per_dimension"))
                    report.per_dimension.push_back(
                        {pd.value("D", 0.0), pd.at("p_value").get<double>(),
                         pd.value("n", std::size_t{0})});
                reports.emplace_back(fs::path(file).stem().string(), std::move(report));
            }
            viz::PlotOptions options;
            options.title = "per-dimension uniformity p-values";
            viz::pvalue_strip_svg(reports, true, options).save(out_prefix + ".svg");
            outputs = {out_prefix + ".svg"};
            break;
        }
    }
    return outputs;
}

}  // namespace biasprobe::harness
