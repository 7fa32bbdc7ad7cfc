#include "biasprobe/variance_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biasprobe::theory {

double sample_variance(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n - 1);
}

AlphaMoments alpha_moments(double d) {
    if (d < 0.0) throw std::invalid_argument("alpha_moments: d >= 0");
    return {0.5, (1.0 + d + d * d) / 3.0};
}

double d_bound(std::size_t n) {
    if (n < 2) throw std::invalid_argument("d_bound: N >= 2");
    const auto nn = static_cast<double>(n);
    return (-1.0 + std::sqrt((3.0 * nn + 9.0) / (nn - 1.0))) / 2.0;
}

ThresholdK threshold_k(std::size_t n, double d, double sigma2) {
    if (n < 2) throw std::invalid_argument("threshold_k: N >= 2");
    if (d < 0.0 || sigma2 < 0.0) throw std::invalid_argument("threshold_k: d, sigma2 >= 0");
    const auto nn = static_cast<double>(n);
    const double m2 = alpha_moments(d).second_moment;
    ThresholdK k;
    k.denominator = nn + 1.0 - 2.0 * m2 * (nn - 1.0);
    // Positivity of the denominator and d < d_bound(N) are the same condition
    // algebraically; requiring both keeps the boundary case d == d_bound(N)
    // flagged infinite regardless of rounding.
    k.finite = k.denominator > 0.0 && d < d_bound(n);
    if (k.finite) k.value = sigma2 * (1.0 - 1.0 / nn) / k.denominator;
    return k;
}

TheoremQuantities theorem_quantities(std::size_t n, double d, double sigma2) {
    TheoremQuantities q;
    q.n = n;
    q.d = d;
    q.sigma2 = sigma2;
    q.d_bound = d_bound(n);
    q.k = threshold_k(n, d, sigma2);
    q.alpha = alpha_moments(d);
    return q;
}

namespace {

void check_unit_interval(std::span<const double> x, const char* who) {
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(who) + ": components must lie in [0,1]");
}

}  // namespace

double expected_drift_unabsorbed(std::span<const double> x, double d, double sigma2) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("expected_drift_unabsorbed: N >= 2");
    if (sigma2 < 0.0) throw std::invalid_argument("expected_drift_unabsorbed: sigma2 >= 0");
    check_unit_interval(x, "expected_drift_unabsorbed");
    const auto nn = static_cast<double>(n);
    const double m2 = alpha_moments(d).second_moment;
    const double s2 = sample_variance(x);
    return s2 * (2.0 * m2 * (nn - 1.0) - (nn + 1.0)) / (nn * nn) + sigma2 / nn;
}

DriftEstimate monte_carlo_drift(std::span<const double> x, double d, double sigma,
                                std::uint64_t trials, rng::RngEngine& engine, bool absorbed) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("monte_carlo_drift: N >= 2");
    if (trials < 100) throw std::invalid_argument("monte_carlo_drift: trials >= 100");
    if (d < 0.0 || sigma < 0.0) throw std::invalid_argument("monte_carlo_drift: d, sigma >= 0");
    check_unit_interval(x, "monte_carlo_drift");

    const auto nn = static_cast<double>(n);
    double s1 = 0.0, s2 = 0.0;
    for (double v : x) {
        s1 += v;
        s2 += v * v;
    }
    const double base_var = (s2 - s1 * s1 / nn) / (nn - 1.0);

    // Welford accumulation of the per-trial variance change.
    double mean = 0.0, m2_acc = 0.0;
    for (std::uint64_t t = 1; t <= trials; ++t) {
        const std::size_t j = engine.next_index(n);
        const std::size_t k = engine.next_index(n);
        const double alpha = -d + engine.next_uniform() * (1.0 + 2.0 * d);
        const double z = engine.next_gaussian(0.0, sigma);
        const std::size_t i = engine.next_index(n);
        double y = alpha * x[j] + (1.0 - alpha) * x[k] + z;
        if (absorbed) y = std::clamp(y, 0.0, 1.0);
        const double s1p = s1 - x[i] + y;
        const double s2p = s2 - x[i] * x[i] + y * y;
        const double delta = (s2p - s1p * s1p / nn) / (nn - 1.0) - base_var;
        const double d1 = delta - mean;
        mean += d1 / static_cast<double>(t);
        m2_acc += d1 * (delta - mean);
    }
    DriftEstimate est;
    est.mean = mean;
    est.trials = trials;
    est.std_error =
        trials > 1 ? std::sqrt(m2_acc / static_cast<double>(trials - 1) / static_cast<double>(trials))
                   : 0.0;
    return est;
}

std::vector<std::pair<std::uint64_t, double>> variance_trajectory(const optim::RunTrace& trace,
                                                                  std::size_t dim) {
    if (trace.snapshots.empty()) throw std::invalid_argument("variance_trajectory: empty trace");
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(trace.snapshots.size());
    std::vector<double> coord;
    for (const auto& snap : trace.snapshots) {
        coord.clear();
        for (const auto& ind : snap.individuals) {
            if (dim >= ind.position.size())
                throw std::invalid_argument("variance_trajectory: dimension out of range");
            coord.push_back(ind.position[dim]);
        }
        out.emplace_back(snap.evaluations_used, sample_variance(coord));
    }
    return out;
}

std::vector<std::pair<std::uint64_t, double>> variance_trajectory(
    std::span<const std::vector<double>> history) {
    if (history.empty()) throw std::invalid_argument("variance_trajectory: empty history");
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(history.size());
    for (std::size_t t = 0; t < history.size(); ++t)
        out.emplace_back(static_cast<std::uint64_t>(t), sample_variance(history[t]));
    return out;
}

}  // namespace biasprobe::theory
