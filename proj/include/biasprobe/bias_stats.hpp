#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biasprobe/objectives.hpp"

namespace biasprobe::stats {

struct KsResult {
    double statistic = 0.0;  // sup-norm distance D in [0, 1]
    double p_value = 1.0;
    std::size_t sample_size = 0;
};

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 * sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample Kolmogorov-Smirnov test of `sample` against Uniform[lo, hi].
/// D comes from the exact sorted-sample formula
///   max_i max(i/n - u_(i), u_(i) - (i-1)/n);
/// the p-value evaluates kolmogorov_q at D * (sqrt(n) + 0.12 + 0.11/sqrt(n)),
/// the standard small-n corrected asymptotic. All values must lie in [lo, hi].
KsResult ks_uniform(std::span<const double> sample, double lo, double hi);

struct BiasReport {
    std::vector<KsResult> per_dimension;
    double alpha_level = 0.05;
    std::size_t dims_below_alpha = 0;
    double median_p = 1.0;
    std::string verdict;  // see verdict thresholds below
    std::string metadata; // free-form run/config identifier
};

/// Verdict thresholds (heuristic):
///   "strong_bias"      median_p < 1e-3 or flagged dims >= half of all dims
///   "bias_detected"    median_p < 0.05 or flagged dims > max(1, dims/5)
///   "no_bias_detected" otherwise
inline constexpr double kVerdictStrongMedianP = 1e-3;
inline constexpr double kVerdictModerateMedianP = 0.05;

/// Per-dimension uniformity over a set of final best points: dimension d is
/// tested with ks_uniform over coordinate d of every point against the
/// domain bounds of that dimension. Requires at least 5 points.
BiasReport bias_report(std::span<const std::vector<double>> final_best_points,
                       const objectives::SearchDomain& domain, double alpha_level,
                       std::string metadata = {});

struct DispersionStats {
    double mean = 0.0;
    double variance = 0.0;  // sample variance
    double min = 0.0;
    double max = 0.0;
};

/// Per-coordinate summary over >= 2 points.
std::vector<DispersionStats> dispersion_summary(std::span<const std::vector<double>> points);

enum class Sensitivity { kInsensitive, kSensitive, kHighlySensitive };

std::string sensitivity_name(Sensitivity s);

struct SensitivityThresholds {
    // p at the largest population must fall below ratio * p at the smallest
    // to count as degradation.
    double p_degrade_ratio = 0.5;
    // mean dispersion at the largest population must fall below ratio * the
    // smallest-population dispersion to count as collapse.
    double dispersion_collapse_ratio = 0.2;
};

struct PopsizeObservation {
    BiasReport report;
    std::vector<DispersionStats> dispersion;
};

/// Classify how bias indicators respond to population size (heuristic,
/// thresholds overridable): insensitive when the median p holds up from the
/// smallest to the largest population, sensitive when it degrades, highly
/// sensitive when the dispersion additionally collapses.
Sensitivity sensitivity_classify(const std::map<std::size_t, PopsizeObservation>& by_popsize,
                                 const SensitivityThresholds& thresholds = {});

}  // namespace biasprobe::stats
