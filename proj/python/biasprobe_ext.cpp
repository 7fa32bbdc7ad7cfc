#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biasprobe/algorithm_k.hpp"
#include "biasprobe/bias_stats.hpp"
#include "biasprobe/objectives.hpp"
#include "biasprobe/optimizers.hpp"
#include "biasprobe/rng.hpp"
#include "biasprobe/rng_forensics.hpp"
#include "biasprobe/variance_theory.hpp"
#include "biasprobe/viz.hpp"

namespace py = pybind11;
using namespace biasprobe;

namespace {

rng::AlgorithmKind kind_from_string(const std::string& name) {
    if (name == "ga") return rng::AlgorithmKind::kGa;
    if (name == "pso") return rng::AlgorithmKind::kPso;
    throw std::invalid_argument("algorithm must be 'ga' or 'pso'");
}

py::dict orbit_to_dict(const algk::OrbitResult& orbit) {
    py::dict d;
    switch (orbit.kind) {
        case algk::OrbitResult::Kind::kFixedPoint: d["kind"] = "fixed_point"; break;
        case algk::OrbitResult::Kind::kCycle: d["kind"] = "cycle"; break;
        case algk::OrbitResult::Kind::kUndecided: d["kind"] = "undecided"; break;
    }
    d["preperiod"] = orbit.preperiod;
    d["period"] = orbit.period;
    d["steps_used"] = orbit.steps_used;
    return d;
}

py::dict report_to_dict(const stats::BiasReport& report) {
    py::dict d;
    d["alpha"] = report.alpha_level;
    d["dims_below_alpha"] = report.dims_below_alpha;
    d["median_p"] = report.median_p;
    d["verdict"] = report.verdict;
    py::list per_dim;
    for (const auto& ks : report.per_dimension) {
        py::dict e;
        e["D"] = ks.statistic;
        e["p_value"] = ks.p_value;
        e["n"] = ks.sample_size;
        per_dim.append(e);
    }
    d["per_dimension"] = per_dim;
    return d;
}

py::dict trace_to_dict(const optim::RunTrace& trace) {
    py::dict d;
    d["config"] = trace.config.dump();
    d["final_best_position"] = trace.final_best.position;
    d["final_best_fitness"] = trace.final_best.fitness;
    py::list snaps;
    for (const auto& snap : trace.snapshots) {
        py::dict s;
        s["evaluations_used"] = snap.evaluations_used;
        py::list positions, fitnesses;
        for (const auto& ind : snap.individuals) {
            positions.append(ind.position);
            fitnesses.append(ind.fitness);
        }
        s["positions"] = positions;
        s["fitnesses"] = fitnesses;
        snaps.append(s);
    }
    d["snapshots"] = snaps;
    return d;
}

objectives::SearchDomain box(std::size_t dim, double lo, double hi) {
    return objectives::SearchDomain::uniform_box(dim, lo, hi);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "structural-bias diagnostics for population-based optimizers";

    py::register_exception<rng::EngineExhausted>(m, "EngineExhausted", PyExc_RuntimeError);

    py::class_<rng::RngEngine>(m, "RngEngine")
        .def("next_uniform", &rng::RngEngine::next_uniform)
        .def("next_gaussian", &rng::RngEngine::next_gaussian, py::arg("mean"), py::arg("sd"))
        .def("total_draws", &rng::RngEngine::total_draws)
        .def("reset_draw_count", &rng::RngEngine::reset_draw_count)
        .def("description", &rng::RngEngine::description);

    py::class_<rng::Lcg48Engine, rng::RngEngine>(m, "Lcg48Engine")
        .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("multiplier") = rng::kLcg48DefaultMultiplier,
             py::arg("increment") = rng::kLcg48DefaultIncrement);

    py::class_<rng::RecordedEngine, rng::RngEngine>(m, "RecordedEngine")
        .def(py::init<std::vector<double>, std::string>(), py::arg("values"),
             py::arg("source") = "recorded")
        .def("remaining", &rng::RecordedEngine::remaining);

    m.def("gaussian_draw", &rng::gaussian_draw, py::arg("engine"), py::arg("mean"), py::arg("sd"));
    m.def("derive_run_seed", &rng::derive_run_seed, py::arg("master_seed"), py::arg("ordinal"));

    m.def(
        "init_draw_count",
        [](const std::string& alg, std::uint64_t dim, std::uint64_t n_pop) {
            return rng::init_draw_count(kind_from_string(alg), dim, n_pop);
        },
        py::arg("algorithm"), py::arg("dim"), py::arg("n_pop"));
    m.def(
        "effective_period",
        [](const std::string& alg, std::uint64_t dim, std::uint64_t n_pop) {
            return rng::effective_period(kind_from_string(alg), dim, n_pop);
        },
        py::arg("algorithm"), py::arg("dim"), py::arg("n_pop") = 1);
    m.def("marsaglia_bound", &rng::marsaglia_bound, py::arg("n"), py::arg("m"));
    m.def(
        "lag_pairs",
        [](const std::vector<double>& seq, std::uint64_t period, const std::string& mode,
           std::uint64_t offset) {
            const auto lag_mode = mode == "pooled" ? rng::LagMode::pooled()
                                                   : rng::LagMode::single_offset(offset);
            return rng::lag_pairs(seq, period, lag_mode);
        },
        py::arg("sequence"), py::arg("period"), py::arg("mode") = "pooled", py::arg("offset") = 0);
    m.def(
        "pearson_correlation",
        [](const std::vector<std::pair<double, double>>& pairs) {
            return rng::pearson_correlation(pairs);
        },
        py::arg("pairs"));

    m.def("algk_step", &algk::algk_step, py::arg("x"));
    m.def(
        "algk_orbit",
        [](std::uint64_t x0, std::uint64_t max_steps) {
            return orbit_to_dict(algk::algk_orbit(x0, max_steps));
        },
        py::arg("x0"), py::arg("max_steps") = 100000);

    m.def(
        "evaluate_classic",
        [](const std::string& kind, const std::vector<double>& point) {
            return objectives::evaluate_classic(objectives::objective_kind_from_name(kind), point);
        },
        py::arg("kind"), py::arg("point"));
    m.def(
        "f0_evaluate",
        [](const std::vector<double>& point, rng::RngEngine& engine) {
            return objectives::f0_evaluate(point, engine);
        },
        py::arg("point"), py::arg("engine"));
    m.def(
        "argmin_uniformity_trial",
        [](std::size_t n_points, std::uint64_t trials, rng::RngEngine& engine) {
            return objectives::argmin_uniformity_trial(n_points, trials, engine).counts;
        },
        py::arg("n_points"), py::arg("trials"), py::arg("engine"));

    m.def(
        "sample_variance",
        [](const std::vector<double>& x) { return theory::sample_variance(x); }, py::arg("x"));
    m.def(
        "alpha_moments",
        [](double d) {
            const auto mo = theory::alpha_moments(d);
            return py::make_tuple(mo.mean, mo.second_moment);
        },
        py::arg("d"));
    m.def("d_bound", &theory::d_bound, py::arg("n"));
    m.def(
        "threshold_k",
        [](std::size_t n, double d, double sigma2) -> py::object {
            const auto k = theory::threshold_k(n, d, sigma2);
            if (!k.finite) return py::float_(std::numeric_limits<double>::infinity());
            return py::float_(k.value);
        },
        py::arg("n"), py::arg("d"), py::arg("sigma2"));
    m.def(
        "expected_drift_unabsorbed",
        [](const std::vector<double>& x, double d, double sigma2) {
            return theory::expected_drift_unabsorbed(x, d, sigma2);
        },
        py::arg("x"), py::arg("d"), py::arg("sigma2"));
    m.def(
        "monte_carlo_drift",
        [](const std::vector<double>& x, double d, double sigma, std::uint64_t trials,
           rng::RngEngine& engine, bool absorbed) {
            const auto est = theory::monte_carlo_drift(x, d, sigma, trials, engine, absorbed);
            return py::make_tuple(est.mean, est.std_error, est.trials);
        },
        py::arg("x"), py::arg("d"), py::arg("sigma"), py::arg("trials"), py::arg("engine"),
        py::arg("absorbed"));
    m.def(
        "simplified_ga_step",
        [](const std::vector<double>& x, double d, double sigma, rng::RngEngine& engine) {
            return optim::simplified_ga_step(x, d, sigma, engine);
        },
        py::arg("x"), py::arg("d"), py::arg("sigma"), py::arg("engine"));

    m.def(
        "ks_uniform",
        [](const std::vector<double>& sample, double lo, double hi) {
            const auto ks = stats::ks_uniform(sample, lo, hi);
            return py::make_tuple(ks.statistic, ks.p_value);
        },
        py::arg("sample"), py::arg("lo") = 0.0, py::arg("hi") = 1.0);
    m.def("kolmogorov_q", &stats::kolmogorov_q, py::arg("lambda_"));
    m.def(
        "bias_report",
        [](const std::vector<std::vector<double>>& points, std::size_t dim, double lo, double hi,
           double alpha) { return report_to_dict(stats::bias_report(points, box(dim, lo, hi), alpha)); },
        py::arg("points"), py::arg("dim"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
        py::arg("alpha") = 0.05);

    const auto run_common = [](const std::string& alg, std::size_t population, std::size_t dim,
                               const std::string& objective, std::uint64_t budget,
                               std::uint64_t seed, std::uint64_t snapshot_every) {
        const auto kind = objectives::objective_kind_from_name(objective);
        const auto obj = objectives::Objective::make(kind, dim);
        rng::Lcg48Engine engine(seed);
        optim::RunTrace trace;
        if (alg == "ga") {
            optim::GaConfig c;
            c.population = population;
            c.budget = budget;
            c.snapshot_every = snapshot_every;
            trace = optim::ga_run(c, obj, obj.domain, engine);
        } else if (alg == "pso") {
            optim::PsoConfig c;
            c.population = population;
            c.budget = budget;
            c.snapshot_every = snapshot_every;
            trace = optim::pso_run(c, obj, obj.domain, engine);
        } else if (alg == "sga") {
            optim::SimplifiedGaConfig c;
            c.population = population;
            c.steps = budget > population ? budget - population : 0;
            c.snapshot_every = snapshot_every;
            trace = optim::sga_run(c, obj, obj.domain, engine);
        } else if (alg == "ra") {
            optim::RaConfig c;
            c.population = population;
            c.budget = budget;
            c.snapshot_every = snapshot_every;
            trace = optim::ra_run(c, obj, obj.domain, engine);
        } else {
            throw std::invalid_argument("algorithm must be ga, pso, sga or ra");
        }
        return trace_to_dict(trace);
    };
    m.def("run", run_common, py::arg("algorithm"), py::arg("population"), py::arg("dim"),
          py::arg("objective") = "f0", py::arg("budget") = 10000, py::arg("seed") = 1,
          py::arg("snapshot_every") = 0,
          "Run one optimizer instance and return its trace as a dict.");

    m.def(
        "parallel_coordinates_svg",
        [](const std::vector<std::vector<double>>& points, std::size_t dim, double lo, double hi,
           const std::vector<double>& fitnesses) {
            return viz::parallel_coordinates_svg(points, box(dim, lo, hi), fitnesses,
                                                 viz::ColorMap())
                .to_xml();
        },
        py::arg("points"), py::arg("dim"), py::arg("lo"), py::arg("hi"), py::arg("fitnesses"));
    m.def(
        "scatter_svg",
        [](const std::vector<std::pair<double, double>>& pairs) {
            return viz::scatter_svg(pairs).to_xml();
        },
        py::arg("pairs"));
}
