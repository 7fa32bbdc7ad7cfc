#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace biasprobe::rng {

enum class AlgorithmKind { kGa, kPso };

/// Uniform draws consumed by population initialization: (dim+1)*n_pop for the
/// genetic algorithm (dim coordinates plus one evaluation per member) and
/// (2*dim+1)*n_pop for particle swarm (coordinates, evaluation, velocities).
std::uint64_t init_draw_count(AlgorithmKind kind, std::uint64_t dim, std::uint64_t n_pop);

/// Draws consumed between successive uses of the random stream for the same
/// coordinate of newly generated points: 2*dim+5 for the genetic algorithm
/// (independent of population size, assuming default parameters) and
/// 2*dim*n_pop+1 for particle swarm.
std::uint64_t effective_period(AlgorithmKind kind, std::uint64_t dim, std::uint64_t n_pop);

/// Upper bound floor((n! * m)^(1/n)) on the number of hyperplanes covering
/// n-tuples of consecutive LCG outputs with modulus m. A floating-point
/// estimate is verified (and corrected) by exact big-integer comparison, so
/// the floor is exact even when (n! * m)^(1/n) falls close to an integer.
std::uint64_t marsaglia_bound(std::uint64_t n, std::uint64_t m);

/// Pair-extraction mode for the lag tests.
struct LagMode {
    enum Kind { kSingleOffset, kPooled } kind = kPooled;
    std::uint64_t offset = 0;  // used by kSingleOffset; must be < period

    static LagMode pooled() { return {kPooled, 0}; }
    static LagMode single_offset(std::uint64_t offset) { return {kSingleOffset, offset}; }
};

/// Pairs (s[i], s[i+period]). Single-offset mode keeps indices i with
/// i % period == offset; pooled mode keeps every i. A sequence shorter than
/// period+1 yields an empty result. With period 1 both modes track the
/// correlation between consecutive values.
std::vector<std::pair<double, double>> lag_pairs(std::span<const double> sequence,
                                                 std::uint64_t period, LagMode mode);

/// Pearson correlation coefficient of a pair set; 0 for fewer than 2 pairs or
/// a degenerate (constant) margin.
double pearson_correlation(std::span<const std::pair<double, double>> pairs);

/// Write pairs as CSV with header "x,y".
void write_lag_pairs_csv(const std::string& path,
                         std::span<const std::pair<double, double>> pairs);

}  // namespace biasprobe::rng
