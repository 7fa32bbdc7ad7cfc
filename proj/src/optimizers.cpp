#include "biasprobe/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biasprobe::optim {

namespace {

using objectives::Objective;
using objectives::SearchDomain;

std::uint64_t resolve_cadence(std::uint64_t snapshot_every, std::uint64_t budget) {
    if (snapshot_every > 0) return snapshot_every;
    return (budget + 99) / 100;  // ceil(budget / 100)
}

double saturate(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

/// Tracks evaluations and decides snapshot points: the initial population,
/// every `cadence` evaluations after that, and the final population.
class SnapshotRecorder {
public:
    SnapshotRecorder(RunTrace& trace, const SnapshotSink& sink, std::uint64_t cadence,
                     std::uint64_t budget)
        : trace_(trace), sink_(sink), cadence_(cadence), budget_(budget) {}

    void record(std::uint64_t evaluations, const std::vector<Individual>& population) {
        Snapshot snap{evaluations, population};
        if (sink_) sink_(snap);
        trace_.snapshots.push_back(std::move(snap));
        last_recorded_ = evaluations;
    }

    void maybe_record(std::uint64_t evaluations, const std::vector<Individual>& population) {
        if (evaluations % cadence_ == 0 || evaluations == budget_) {
            if (evaluations != last_recorded_) record(evaluations, population);
        }
    }

private:
    RunTrace& trace_;
    const SnapshotSink& sink_;
    std::uint64_t cadence_;
    std::uint64_t budget_;
    std::uint64_t last_recorded_ = std::uint64_t(-1);
};

std::vector<Individual> init_population_interleaved(std::size_t n, const Objective& objective,
                                                    const SearchDomain& domain,
                                                    rng::RngEngine& engine) {
    const std::size_t dim = domain.dimension();
    std::vector<Individual> population(n);
    for (auto& ind : population) {
        ind.position.resize(dim);
        for (std::size_t c = 0; c < dim; ++c)
            ind.position[c] = domain.lower[c] + engine.next_uniform() * domain.width(c);
        ind.fitness = objective.evaluate(ind.position, engine);
    }
    return population;
}

std::size_t worst_index(const std::vector<Individual>& population) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].fitness > population[worst].fitness) worst = i;
    return worst;
}

void validate_run_inputs(const Objective& objective, const SearchDomain& domain) {
    domain.validate();
    if (objective.dimension() != domain.dimension())
        throw std::invalid_argument("run: objective and domain dimensions differ");
}

nlohmann::json domain_json(const SearchDomain& domain) {
    return {{"lower", domain.lower}, {"upper", domain.upper}};
}

nlohmann::json base_header(const char* algorithm, const Objective& objective,
                           const SearchDomain& domain, std::uint64_t budget,
                           std::uint64_t cadence) {
    return {{"record", "header"},
            {"algorithm", algorithm},
            {"objective", objective_name(objective.kind)},
            {"dim", domain.dimension()},
            {"domain", domain_json(domain)},
            {"budget", budget},
            {"snapshot_every", cadence}};
}

}  // namespace

RunTrace ga_run(const GaConfig& config, const Objective& objective, const SearchDomain& domain,
                rng::RngEngine& engine, const SnapshotSink& sink) {
    validate_run_inputs(objective, domain);
    if (config.population < 2) throw std::invalid_argument("ga_run: population >= 2");
    if (config.tournament_size < 1) throw std::invalid_argument("ga_run: tournament_size >= 1");
    if (config.budget < config.population)
        throw std::invalid_argument("ga_run: budget must cover the initial population");

    const std::size_t n = config.population;
    const std::size_t dim = domain.dimension();
    const std::uint64_t cadence = resolve_cadence(config.snapshot_every, config.budget);

    RunTrace trace;
    trace.config = ga_header(config, objective, domain);
    SnapshotRecorder recorder(trace, sink, cadence, config.budget);

    auto population = init_population_interleaved(n, objective, domain, engine);
    std::uint64_t evaluations = n;
    recorder.record(evaluations, population);

    // Draw order per child: tournament indices (2 * tournament_size), one
    // blend factor per coordinate, one gaussian per coordinate, then the
    // child evaluation. With the default tournament size this consumes
    // 2*dim + 5 uniforms per child on even-dimensional problems.
    auto tournament = [&]() -> const Individual& {
        std::size_t best = engine.next_index(n);
        for (std::size_t t = 1; t < config.tournament_size; ++t) {
            const std::size_t candidate = engine.next_index(n);
            if (population[candidate].fitness < population[best].fitness) best = candidate;
        }
        return population[best];
    };

    std::vector<double> child(dim);
    while (evaluations < config.budget) {
        const Individual& parent1 = tournament();
        const Individual& parent2 = tournament();
        for (std::size_t c = 0; c < dim; ++c) {
            const double alpha =
                -config.blend_overshoot +
                engine.next_uniform() * (1.0 + 2.0 * config.blend_overshoot);
            child[c] = saturate(parent1.position[c] + alpha * (parent2.position[c] - parent1.position[c]),
                                domain.lower[c], domain.upper[c]);
        }
        const bool mutate = config.mutation_probability >= 1.0 ||
                            engine.next_uniform() < config.mutation_probability;
        if (mutate) {
            for (std::size_t c = 0; c < dim; ++c) {
                const double delta =
                    engine.next_gaussian(0.0, config.mutation_rate * domain.width(c));
                child[c] = saturate(child[c] + delta, domain.lower[c], domain.upper[c]);
            }
        }
        const double fitness = objective.evaluate(child, engine);
        ++evaluations;

        const std::size_t worst = worst_index(population);
        if (fitness <= population[worst].fitness) {
            population[worst].position = child;
            population[worst].fitness = fitness;
        }
        recorder.maybe_record(evaluations, population);
    }

    const Snapshot& last = trace.snapshots.back();
    trace.final_best = best_of(last);
    return trace;
}

RunTrace pso_run(const PsoConfig& config, const Objective& objective, const SearchDomain& domain,
                 rng::RngEngine& engine, const SnapshotSink& sink) {
    validate_run_inputs(objective, domain);
    if (config.population < 1) throw std::invalid_argument("pso_run: population >= 1");
    if (config.velocity_clamp <= 0.0) throw std::invalid_argument("pso_run: velocity_clamp > 0");
    if (config.budget < config.population)
        throw std::invalid_argument("pso_run: budget must cover the initial population");

    const std::size_t n = config.population;
    const std::size_t dim = domain.dimension();
    const std::uint64_t cadence = resolve_cadence(config.snapshot_every, config.budget);

    RunTrace trace;
    trace.config = pso_header(config, objective, domain);
    SnapshotRecorder recorder(trace, sink, cadence, config.budget);

    // Initialization phases follow the loop structure: all positions, all
    // evaluations, then all velocities. Velocity limits are stated for the
    // unit cube and scale with the per-coordinate domain width.
    std::vector<Individual> population(n);
    for (auto& ind : population) {
        ind.position.resize(dim);
        for (std::size_t c = 0; c < dim; ++c)
            ind.position[c] = domain.lower[c] + engine.next_uniform() * domain.width(c);
    }
    for (auto& ind : population) ind.fitness = objective.evaluate(ind.position, engine);
    std::vector<std::vector<double>> velocity(n, std::vector<double>(dim));
    for (auto& v : velocity)
        for (std::size_t c = 0; c < dim; ++c)
            v[c] = engine.next_uniform() * config.velocity_init_max * domain.width(c);

    std::vector<Individual> personal_best = population;
    std::size_t gb = best_index({0, population});
    Individual global_best = population[gb];

    std::uint64_t evaluations = n;
    recorder.record(evaluations, population);

    // Per particle and step: pull weights, velocity update, norm clamp,
    // move, evaluate. The weights alpha1, alpha2 are drawn per coordinate
    // (interleaved a1, a2 along the coordinates) or once per particle,
    // depending on alpha_per_coordinate. Personal bests update immediately
    // after the particle's evaluation; the global best refreshes only
    // between sweeps, so every velocity update within a sweep sees the same
    // global best.
    while (evaluations < config.budget) {
        for (std::size_t i = 0; i < n && evaluations < config.budget; ++i) {
            auto& p = population[i];
            auto& v = velocity[i];
            double a1 = 0.0, a2 = 0.0;
            if (!config.alpha_per_coordinate) {
                a1 = engine.next_uniform();
                a2 = engine.next_uniform();
            }
            double norm2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                if (config.alpha_per_coordinate) {
                    a1 = engine.next_uniform();
                    a2 = engine.next_uniform();
                }
                v[c] = config.inertia * v[c] +
                       config.cognitive * a1 * (personal_best[i].position[c] - p.position[c]) +
                       config.social * a2 * (global_best.position[c] - p.position[c]);
                const double scaled = v[c] / domain.width(c);
                norm2 += scaled * scaled;
            }
            const double norm = std::sqrt(norm2);
            if (norm > config.velocity_clamp) {
                const double shrink = config.velocity_clamp / norm;
                for (auto& vc : v) vc *= shrink;
            }
            for (std::size_t c = 0; c < dim; ++c) {
                p.position[c] += v[c];
                if (config.boundary == BoundaryPolicy::kSaturate)
                    p.position[c] = saturate(p.position[c], domain.lower[c], domain.upper[c]);
            }
            p.fitness = objective.evaluate(p.position, engine);
            ++evaluations;
            if (p.fitness < personal_best[i].fitness) personal_best[i] = p;
            recorder.maybe_record(evaluations, population);
        }
        for (const auto& pb : personal_best)
            if (pb.fitness < global_best.fitness) global_best = pb;
    }

    trace.final_best = best_of(trace.snapshots.back());
    return trace;
}

RunTrace sga_run(const SimplifiedGaConfig& config, const Objective& objective,
                 const SearchDomain& domain, rng::RngEngine& engine, const SnapshotSink& sink) {
    validate_run_inputs(objective, domain);
    if (config.population < 2) throw std::invalid_argument("sga_run: population >= 2");

    const std::size_t n = config.population;
    const std::size_t dim = domain.dimension();
    const std::uint64_t budget = n + config.steps;
    const std::uint64_t cadence = resolve_cadence(config.snapshot_every, budget);

    RunTrace trace;
    trace.config = sga_header(config, objective, domain);
    SnapshotRecorder recorder(trace, sink, cadence, budget);

    auto population = init_population_interleaved(n, objective, domain, engine);
    std::uint64_t evaluations = n;
    recorder.record(evaluations, population);

    // Draw order per child: parents j, k; one blend factor per coordinate;
    // one gaussian per coordinate; replaced index i; child evaluation.
    std::vector<double> child(dim);
    while (evaluations < budget) {
        const std::size_t j = engine.next_index(n);
        const std::size_t k = engine.next_index(n);
        for (std::size_t c = 0; c < dim; ++c) {
            const double alpha = -config.blend_overshoot +
                                 engine.next_uniform() * (1.0 + 2.0 * config.blend_overshoot);
            child[c] = alpha * population[j].position[c] +
                       (1.0 - alpha) * population[k].position[c];
        }
        for (std::size_t c = 0; c < dim; ++c) {
            child[c] += engine.next_gaussian(0.0, config.sigma * domain.width(c));
            child[c] = saturate(child[c], domain.lower[c], domain.upper[c]);  // absorbed
        }
        const std::size_t i = engine.next_index(n);
        const double fitness = objective.evaluate(child, engine);
        ++evaluations;
        population[i].position = child;
        population[i].fitness = fitness;
        recorder.maybe_record(evaluations, population);
    }

    trace.final_best = best_of(trace.snapshots.back());
    return trace;
}

RunTrace ra_run(const RaConfig& config, const Objective& objective, const SearchDomain& domain,
                rng::RngEngine& engine, const SnapshotSink& sink) {
    validate_run_inputs(objective, domain);
    if (config.population < 1) throw std::invalid_argument("ra_run: population >= 1");
    if (config.budget < config.population)
        throw std::invalid_argument("ra_run: budget must cover the initial population");

    const std::size_t n = config.population;
    const std::size_t dim = domain.dimension();
    const std::uint64_t cadence = resolve_cadence(config.snapshot_every, config.budget);

    RunTrace trace;
    trace.config = ra_header(config, objective, domain);
    SnapshotRecorder recorder(trace, sink, cadence, config.budget);

    auto population = init_population_interleaved(n, objective, domain, engine);
    std::uint64_t evaluations = n;
    recorder.record(evaluations, population);

    // Per step: fresh uniform point, evaluation, replacement index.
    std::vector<double> child(dim);
    while (evaluations < config.budget) {
        for (std::size_t c = 0; c < dim; ++c)
            child[c] = domain.lower[c] + engine.next_uniform() * domain.width(c);
        const double fitness = objective.evaluate(child, engine);
        ++evaluations;
        const std::size_t i = engine.next_index(n);
        population[i].position = child;
        population[i].fitness = fitness;
        recorder.maybe_record(evaluations, population);
    }

    trace.final_best = best_of(trace.snapshots.back());
    return trace;
}

std::vector<double> simplified_ga_step(std::span<const double> x, double d, double sigma,
                                       rng::RngEngine& engine) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("simplified_ga_step: N >= 2");
    if (d < 0.0 || sigma < 0.0) throw std::invalid_argument("simplified_ga_step: d, sigma >= 0");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("simplified_ga_step: components must lie in [0,1]");

    const std::size_t j = engine.next_index(n);
    const std::size_t k = engine.next_index(n);
    const double alpha = -d + engine.next_uniform() * (1.0 + 2.0 * d);
    const double z = engine.next_gaussian(0.0, sigma);
    const std::size_t i = engine.next_index(n);

    std::vector<double> next(x.begin(), x.end());
    next[i] = std::clamp(alpha * x[j] + (1.0 - alpha) * x[k] + z, 0.0, 1.0);
    return next;
}

std::size_t best_index(const Snapshot& snapshot) {
    if (snapshot.individuals.empty()) throw std::invalid_argument("best_of: empty snapshot");
    std::size_t best = 0;
    for (std::size_t i = 1; i < snapshot.individuals.size(); ++i)
        if (snapshot.individuals[i].fitness < snapshot.individuals[best].fitness) best = i;
    return best;
}

Individual best_of(const Snapshot& snapshot) { return snapshot.individuals[best_index(snapshot)]; }

nlohmann::json ga_header(const GaConfig& config, const Objective& objective,
                         const SearchDomain& domain) {
    nlohmann::json h = base_header("ga", objective, domain, config.budget,
                                   resolve_cadence(config.snapshot_every, config.budget));
    h["params"] = {{"N", config.population},
                   {"tournament_size", config.tournament_size},
                   {"d", config.blend_overshoot},
                   {"mutation_rate", config.mutation_rate},
                   {"mutation_probability", config.mutation_probability}};
    return h;
}

nlohmann::json pso_header(const PsoConfig& config, const Objective& objective,
                          const SearchDomain& domain) {
    nlohmann::json h = base_header("pso", objective, domain, config.budget,
                                   resolve_cadence(config.snapshot_every, config.budget));
    h["params"] = {{"N", config.population},
                   {"c0", config.inertia},
                   {"c1", config.cognitive},
                   {"c2", config.social},
                   {"v_init_max", config.velocity_init_max},
                   {"v_clamp", config.velocity_clamp},
                   {"alpha_mode", config.alpha_per_coordinate ? "per_coordinate" : "per_solution"},
                   {"boundary", config.boundary == BoundaryPolicy::kSaturate ? "saturate" : "none"}};
    return h;
}

nlohmann::json sga_header(const SimplifiedGaConfig& config, const Objective& objective,
                          const SearchDomain& domain) {
    const std::uint64_t budget = config.population + config.steps;
    nlohmann::json h = base_header("sga", objective, domain, budget,
                                   resolve_cadence(config.snapshot_every, budget));
    h["params"] = {{"N", config.population},
                   {"d", config.blend_overshoot},
                   {"sigma", config.sigma},
                   {"steps", config.steps}};
    return h;
}

nlohmann::json ra_header(const RaConfig& config, const Objective& objective,
                         const SearchDomain& domain) {
    nlohmann::json h = base_header("ra", objective, domain, config.budget,
                                   resolve_cadence(config.snapshot_every, config.budget));
    h["params"] = {{"N", config.population}};
    return h;
}

}  // namespace biasprobe::optim
