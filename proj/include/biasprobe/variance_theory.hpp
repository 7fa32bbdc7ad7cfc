#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "biasprobe/optimizers.hpp"
#include "biasprobe/rng.hpp"

namespace biasprobe::theory {

/// Sample variance (1/(N-1)) * (sum x_i^2 - (sum x_i)^2 / N), computed with
/// a two-pass centered sum for numerical stability. Requires N >= 2.
double sample_variance(std::span<const double> x);

struct AlphaMoments {
    double mean = 0.0;           // always 1/2
    double second_moment = 0.0;  // (1 + d + d^2) / 3
};

/// Moments of the blend factor alpha ~ Uniform(-d, 1+d), d >= 0.
AlphaMoments alpha_moments(double d);

/// Largest blend overshoot d for which the variance-contraction result
/// applies: (-1 + sqrt((3N+9)/(N-1))) / 2. Strictly decreasing in N with
/// limit (sqrt(3)-1)/2.
double d_bound(std::size_t n);

struct ThresholdK {
    bool finite = false;
    double value = 0.0;        // meaningful only when finite
    double denominator = 0.0;  // N+1 - 2*(1+d+d^2)/3*(N-1)
};

/// Variance level K = sigma2*(1-1/N) / (N+1 - 2*(1+d+d^2)/3*(N-1)) above
/// which the expected one-step variance change of the scalar population
/// process is negative. Finite exactly when d < d_bound(N) (equivalently,
/// when the denominator is positive); otherwise the infinite flag is set.
ThresholdK threshold_k(std::size_t n, double d, double sigma2);

struct TheoremQuantities {
    std::size_t n = 0;
    double d = 0.0;
    double sigma2 = 0.0;
    double d_bound = 0.0;
    ThresholdK k;
    AlphaMoments alpha;
};

TheoremQuantities theorem_quantities(std::size_t n, double d, double sigma2);

/// Exact conditional expectation of S^2(t+1) - S^2(t) for the scalar
/// population process WITHOUT boundary absorption, given the current
/// configuration x (all components in [0,1]):
///
///   drift = S^2(x) * (2*m2*(N-1) - (N+1)) / N^2 + sigma2 / N,
///   m2 = (1 + d + d^2) / 3.
///
/// Derivation in docs/variance-drift.md. Depends on x only through its
/// sample variance, so it is invariant under translating all components.
double expected_drift_unabsorbed(std::span<const double> x, double d, double sigma2);

struct DriftEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// Monte-Carlo estimate of E[S^2(x') - S^2(x)] over independent one-step
/// transitions from x. Draw order per trial matches simplified_ga_step
/// (j, k, alpha, Z, i), so running with the same seed and absorbed on/off
/// pairs the trials through shared randomness. Requires trials >= 100.
DriftEstimate monte_carlo_drift(std::span<const double> x, double d, double sigma,
                                std::uint64_t trials, rng::RngEngine& engine, bool absorbed);

/// Per-snapshot sample variance of one coordinate over a run trace.
std::vector<std::pair<std::uint64_t, double>> variance_trajectory(const optim::RunTrace& trace,
                                                                  std::size_t dim);

/// Per-step sample variance of a scalar-process history (one vector per step).
std::vector<std::pair<std::uint64_t, double>> variance_trajectory(
    std::span<const std::vector<double>> history);

}  // namespace biasprobe::theory
