#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "biasprobe/objectives.hpp"
#include "biasprobe/rng.hpp"

namespace biasprobe::optim {

struct Individual {
    std::vector<double> position;
    double fitness = 0.0;
};

struct Snapshot {
    std::uint64_t evaluations_used = 0;
    std::vector<Individual> individuals;
};

/// Full record of one optimization run. `config` is the header record that
/// gets serialized as the first JSON line of a trace file (see
/// docs/file-formats.md); the harness fills in seeds and engine fields.
struct RunTrace {
    nlohmann::json config;
    std::uint64_t master_seed = 0;
    std::uint32_t run_index = 0;
    std::vector<Snapshot> snapshots;
    Individual final_best;
};

/// Called once per recorded snapshot, in order; used by the harness to
/// stream trace lines to disk while the run is in progress.
using SnapshotSink = std::function<void(const Snapshot&)>;

enum class BoundaryPolicy { kSaturate, kNone };

struct GaConfig {
    std::size_t population = 100;
    std::size_t tournament_size = 2;
    double blend_overshoot = 0.25;      // d: child blend factor ~ Uniform(-d, 1+d)
    double mutation_rate = 0.01;        // per-coordinate gaussian sd as a fraction of width
    double mutation_probability = 1.0;  // chance the child is mutated at all
    std::uint64_t budget = 300000;      // objective evaluations, including initialization
    std::uint64_t snapshot_every = 0;   // 0 -> ceil(budget / 100)
};

struct PsoConfig {
    std::size_t population = 100;
    double inertia = 1.0;    // c0
    double cognitive = 2.0;  // c1
    double social = 2.0;     // c2
    double velocity_init_max = 0.1;  // per-coordinate init range, in units of width
    double velocity_clamp = 0.2;     // cap on the width-normalized velocity 2-norm
    BoundaryPolicy boundary = BoundaryPolicy::kSaturate;
    // Resample the pull weights alpha1, alpha2 for every coordinate (the
    // random-stream layout implied by the per-point draw accounting of
    // 2*dim*N+1) or once per particle update. Per-coordinate is the default;
    // it reproduces the population-size-dependent bias pattern.
    bool alpha_per_coordinate = true;
    std::uint64_t budget = 300000;
    std::uint64_t snapshot_every = 0;
};

struct SimplifiedGaConfig {
    std::size_t population = 100;
    double blend_overshoot = 0.25;  // d
    double sigma = 0.01;            // sd of the additive noise, in units of width
    std::uint64_t steps = 299900;   // children generated; evaluations = population + steps
    std::uint64_t snapshot_every = 0;
};

struct RaConfig {
    std::size_t population = 50;
    std::uint64_t budget = 300000;
    std::uint64_t snapshot_every = 0;
};

/// Steady-state genetic algorithm. Per child: two independent uniform
/// tournaments pick the parents (best fitness wins, ties to the earlier
/// draw); each child coordinate is p1 + alpha*(p2 - p1) with alpha drawn
/// per coordinate from Uniform(-d, 1+d); every coordinate is then perturbed
/// by a gaussian with sd mutation_rate*width; out-of-domain coordinates are
/// saturated to the nearest bound after each operator; the child replaces
/// the current worst member iff its fitness is better or equal. Stops when
/// exactly `budget` evaluations have been consumed (initialization included).
RunTrace ga_run(const GaConfig& config, const objectives::Objective& objective,
                const objectives::SearchDomain& domain, rng::RngEngine& engine,
                const SnapshotSink& sink = nullptr);

/// Synchronous particle swarm. Per particle and step, two scalar uniforms
/// alpha1, alpha2 weight the pulls toward the personal and global bests; the
/// velocity is clamped coordinate-wise when its width-normalized 2-norm
/// exceeds velocity_clamp; personal/global bests update on strict
/// improvement, with the global best frozen during each sweep.
RunTrace pso_run(const PsoConfig& config, const objectives::Objective& objective,
                 const objectives::SearchDomain& domain, rng::RngEngine& engine,
                 const SnapshotSink& sink = nullptr);

/// Population process with uniformly random parent selection and uniformly
/// random unconditional replacement: child coordinates are
/// alpha*X_j + (1-alpha)*X_k + Z (alpha per coordinate from Uniform(-d,1+d),
/// Z gaussian with sd sigma*width), absorbed at the domain boundaries. The
/// child is still evaluated so traces carry fitness.
RunTrace sga_run(const SimplifiedGaConfig& config, const objectives::Objective& objective,
                 const objectives::SearchDomain& domain, rng::RngEngine& engine,
                 const SnapshotSink& sink = nullptr);

/// Truly-random baseline: each step draws one uniform point in the domain,
/// evaluates it, and overwrites a uniformly chosen member unconditionally.
RunTrace ra_run(const RaConfig& config, const objectives::Objective& objective,
                const objectives::SearchDomain& domain, rng::RngEngine& engine,
                const SnapshotSink& sink = nullptr);

/// One transition of the scalar population process on [0,1]^N: draw parents
/// j, k uniformly with replacement, blend with alpha ~ Uniform(-d, 1+d), add
/// gaussian noise Z with sd sigma, clip the result into [0,1], and write it
/// over a uniformly chosen component. Draw order: j, k, alpha, Z, i.
std::vector<double> simplified_ga_step(std::span<const double> x, double d, double sigma,
                                       rng::RngEngine& engine);

/// Minimal-fitness individual of a snapshot; ties break to the lowest index.
Individual best_of(const Snapshot& snapshot);
std::size_t best_index(const Snapshot& snapshot);

/// Header records (the first trace line) as built by the run functions;
/// exposed so a streaming writer can emit the header before the run starts.
nlohmann::json ga_header(const GaConfig& config, const objectives::Objective& objective,
                         const objectives::SearchDomain& domain);
nlohmann::json pso_header(const PsoConfig& config, const objectives::Objective& objective,
                          const objectives::SearchDomain& domain);
nlohmann::json sga_header(const SimplifiedGaConfig& config, const objectives::Objective& objective,
                          const objectives::SearchDomain& domain);
nlohmann::json ra_header(const RaConfig& config, const objectives::Objective& objective,
                         const objectives::SearchDomain& domain);

}  // namespace biasprobe::optim
