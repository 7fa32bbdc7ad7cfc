#include "biasprobe/bias_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biasprobe/variance_theory.hpp"

namespace biasprobe::stats {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    // Below ~0.04 the survival probability is 1 to double precision and the
    // alternating series would need thousands of terms.
    if (lambda < 0.04) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100000; ++j) {
        const double e = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * e;
        sign = -sign;
        if (e < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> sample, double lo, double hi) {
    const std::size_t n = sample.size();
    if (n < 1) throw std::invalid_argument("ks_uniform: empty sample");
    if (!(lo < hi)) throw std::invalid_argument("ks_uniform: lo < hi required");
    std::vector<double> u;
    u.reserve(n);
    for (double v : sample) {
        if (!(v >= lo && v <= hi))
            throw std::invalid_argument("ks_uniform: sample value outside [lo, hi]");
        u.push_back((v - lo) / (hi - lo));
    }
    std::sort(u.begin(), u.end());

    const auto nn = static_cast<double>(n);
    double d_stat = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double ui = u[i - 1];
        d_stat = std::max(d_stat, std::max(static_cast<double>(i) / nn - ui,
                                           ui - (static_cast<double>(i) - 1.0) / nn));
    }

    const double sqrt_n = std::sqrt(nn);
    const double lambda = d_stat * (sqrt_n + 0.12 + 0.11 / sqrt_n);
    return {d_stat, kolmogorov_q(lambda), n};
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string verdict_for(double median_p, std::size_t flagged, std::size_t dims) {
    if (median_p < kVerdictStrongMedianP || flagged * 2 >= dims) return "strong_bias";
    if (median_p < kVerdictModerateMedianP || flagged > std::max<std::size_t>(1, dims / 5))
        return "bias_detected";
    return "no_bias_detected";
}

}  // namespace

BiasReport bias_report(std::span<const std::vector<double>> final_best_points,
                       const objectives::SearchDomain& domain, double alpha_level,
                       std::string metadata) {
    if (final_best_points.size() < 5)
        throw std::invalid_argument("bias_report: need at least 5 points");
    const std::size_t dims = domain.dimension();
    for (const auto& p : final_best_points)
        if (p.size() != dims) throw std::invalid_argument("bias_report: dimension mismatch");

    BiasReport report;
    report.alpha_level = alpha_level;
    report.metadata = std::move(metadata);
    report.per_dimension.reserve(dims);

    std::vector<double> coord(final_best_points.size());
    std::vector<double> pvals;
    pvals.reserve(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t i = 0; i < final_best_points.size(); ++i)
            coord[i] = final_best_points[i][d];
        KsResult ks = ks_uniform(coord, domain.lower[d], domain.upper[d]);
        if (ks.p_value < alpha_level) ++report.dims_below_alpha;
        pvals.push_back(ks.p_value);
        report.per_dimension.push_back(ks);
    }
    report.median_p = median_of(pvals);
    report.verdict = verdict_for(report.median_p, report.dims_below_alpha, dims);
    return report;
}

std::vector<DispersionStats> dispersion_summary(std::span<const std::vector<double>> points) {
    if (points.size() < 2) throw std::invalid_argument("dispersion_summary: need >= 2 points");
    const std::size_t dims = points.front().size();
    for (const auto& p : points)
        if (p.size() != dims) throw std::invalid_argument("dispersion_summary: dimension mismatch");

    std::vector<DispersionStats> out(dims);
    std::vector<double> coord(points.size());
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t i = 0; i < points.size(); ++i) coord[i] = points[i][d];
        DispersionStats s;
        s.min = *std::min_element(coord.begin(), coord.end());
        s.max = *std::max_element(coord.begin(), coord.end());
        double mean = 0.0;
        for (double v : coord) mean += v;
        s.mean = mean / static_cast<double>(coord.size());
        s.variance = theory::sample_variance(coord);
        out[d] = s;
    }
    return out;
}

std::string sensitivity_name(Sensitivity s) {
    switch (s) {
        case Sensitivity::kInsensitive: return "insensitive";
        case Sensitivity::kSensitive: return "sensitive";
        case Sensitivity::kHighlySensitive: return "highly_sensitive";
    }
    throw std::invalid_argument("sensitivity_name: bad value");
}

Sensitivity sensitivity_classify(const std::map<std::size_t, PopsizeObservation>& by_popsize,
                                 const SensitivityThresholds& thresholds) {
    if (by_popsize.size() < 2)
        throw std::invalid_argument("sensitivity_classify: need >= 2 population sizes");

    auto mean_dispersion = [](const PopsizeObservation& obs) {
        if (obs.dispersion.empty())
            throw std::invalid_argument("sensitivity_classify: missing dispersion");
        double acc = 0.0;
        for (const auto& d : obs.dispersion) acc += d.variance;
        return acc / static_cast<double>(obs.dispersion.size());
    };

    const PopsizeObservation& smallest = by_popsize.begin()->second;
    const PopsizeObservation& largest = by_popsize.rbegin()->second;

    const bool degraded =
        largest.report.median_p < thresholds.p_degrade_ratio * smallest.report.median_p;
    if (!degraded) return Sensitivity::kInsensitive;

    const bool collapsed = mean_dispersion(largest) <
                           thresholds.dispersion_collapse_ratio * mean_dispersion(smallest);
    return collapsed ? Sensitivity::kHighlySensitive : Sensitivity::kSensitive;
}

}  // namespace biasprobe::stats
