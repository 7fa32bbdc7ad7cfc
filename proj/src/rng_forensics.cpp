#include "biasprobe/rng_forensics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "biasprobe/trace_io.hpp"

namespace biasprobe::rng {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(std::uint64_t n) {
    BigInt f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::uint64_t init_draw_count(AlgorithmKind kind, std::uint64_t dim, std::uint64_t n_pop) {
    if (dim < 1 || n_pop < 1) throw std::invalid_argument("init_draw_count: dim, n_pop >= 1");
    switch (kind) {
        case AlgorithmKind::kGa:
            return (dim + 1) * n_pop;
        case AlgorithmKind::kPso:
            return (2 * dim + 1) * n_pop;
    }
    throw std::invalid_argument("init_draw_count: bad kind");
}

std::uint64_t effective_period(AlgorithmKind kind, std::uint64_t dim, std::uint64_t n_pop) {
    if (dim < 1 || n_pop < 1) throw std::invalid_argument("effective_period: dim, n_pop >= 1");
    switch (kind) {
        case AlgorithmKind::kGa:
            return 2 * dim + 5;
        case AlgorithmKind::kPso:
            return 2 * dim * n_pop + 1;
    }
    throw std::invalid_argument("effective_period: bad kind");
}

std::uint64_t marsaglia_bound(std::uint64_t n, std::uint64_t m) {
    if (n < 1 || m < 1) throw std::invalid_argument("marsaglia_bound: n, m >= 1");
    if (n == 1) return m;

    // Floating-point estimate of (n! * m)^(1/n), then settle the exact floor
    // with integer comparisons: r is the answer iff r^n <= n!*m < (r+1)^n.
    const long double log_target =
        (std::lgamma(static_cast<long double>(n) + 1.0L) + std::log(static_cast<long double>(m))) /
        static_cast<long double>(n);
    auto guess = static_cast<std::uint64_t>(std::exp(log_target));
    if (guess < 1) guess = 1;

    const BigInt target = factorial(n) * m;
    auto pow_n = [n](std::uint64_t base) {
        return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(n));
    };
    while (pow_n(guess) > target) --guess;
    while (pow_n(guess + 1) <= target) ++guess;
    return guess;
}

std::vector<std::pair<double, double>> lag_pairs(std::span<const double> sequence,
                                                 std::uint64_t period, LagMode mode) {
    if (period < 1) throw std::invalid_argument("lag_pairs: period >= 1");
    if (mode.kind == LagMode::kSingleOffset && mode.offset >= period)
        throw std::invalid_argument("lag_pairs: offset must be < period");

    std::vector<std::pair<double, double>> pairs;
    if (sequence.size() < period + 1) return pairs;

    const std::uint64_t limit = sequence.size() - period;
    if (mode.kind == LagMode::kPooled) {
        pairs.reserve(limit);
        for (std::uint64_t i = 0; i < limit; ++i) pairs.emplace_back(sequence[i], sequence[i + period]);
    } else {
        pairs.reserve(limit / period + 1);
        for (std::uint64_t i = mode.offset; i < limit; i += period)
            pairs.emplace_back(sequence[i], sequence[i + period]);
    }
    return pairs;
}

double pearson_correlation(std::span<const std::pair<double, double>> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (const auto& [x, y] : pairs) {
        const double dx = x - mx;
        const double dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

void write_lag_pairs_csv(const std::string& path,
                         std::span<const std::pair<double, double>> pairs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "x,y\n";
    for (const auto& [x, y] : pairs)
        out << io::format_double(x) << ',' << io::format_double(y) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace biasprobe::rng
