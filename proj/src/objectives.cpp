#include "biasprobe/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biasprobe::objectives {

SearchDomain SearchDomain::uniform_box(std::size_t dim, double lo, double hi) {
    SearchDomain d;
    d.lower.assign(dim, lo);
    d.upper.assign(dim, hi);
    d.validate();
    return d;
}

bool SearchDomain::contains(std::span<const double> point) const {
    if (point.size() != lower.size()) return false;
    for (std::size_t i = 0; i < point.size(); ++i)
        if (point[i] < lower[i] || point[i] > upper[i]) return false;
    return true;
}

void SearchDomain::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("SearchDomain: dimension must be >= 1 with matching bounds");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument("SearchDomain: lower[i] < upper[i] required");
}

ObjectiveKind objective_kind_from_name(const std::string& name) {
    if (name == "f0") return ObjectiveKind::kF0;
    if (name == "sphere") return ObjectiveKind::kSphere;
    if (name == "ackley") return ObjectiveKind::kAckley;
    if (name == "rastrigin") return ObjectiveKind::kRastrigin;
    if (name == "griewank_rosenbrock") return ObjectiveKind::kGriewankRosenbrock;
    if (name == "scaffer_f6") return ObjectiveKind::kScafferF6;
    throw std::invalid_argument("unknown objective: " + name);
}

std::string objective_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::kF0: return "f0";
        case ObjectiveKind::kSphere: return "sphere";
        case ObjectiveKind::kAckley: return "ackley";
        case ObjectiveKind::kRastrigin: return "rastrigin";
        case ObjectiveKind::kGriewankRosenbrock: return "griewank_rosenbrock";
        case ObjectiveKind::kScafferF6: return "scaffer_f6";
    }
    throw std::invalid_argument("objective_name: bad kind");
}

SearchDomain default_domain(ObjectiveKind kind, std::size_t dim) {
    switch (kind) {
        case ObjectiveKind::kF0: return SearchDomain::uniform_box(dim, 0.0, 1.0);
        case ObjectiveKind::kSphere: return SearchDomain::uniform_box(dim, -100.0, 100.0);
        case ObjectiveKind::kAckley: return SearchDomain::uniform_box(dim, -32.0, 32.0);
        case ObjectiveKind::kRastrigin: return SearchDomain::uniform_box(dim, -5.0, 5.0);
        case ObjectiveKind::kGriewankRosenbrock: return SearchDomain::uniform_box(dim, -5.0, 5.0);
        case ObjectiveKind::kScafferF6: return SearchDomain::uniform_box(dim, -100.0, 100.0);
    }
    throw std::invalid_argument("default_domain: bad kind");
}

Objective Objective::make(ObjectiveKind kind, std::size_t dim) {
    return make(kind, default_domain(kind, dim));
}

Objective Objective::make(ObjectiveKind kind, SearchDomain domain) {
    domain.validate();
    return Objective{kind, std::move(domain), kind == ObjectiveKind::kF0};
}

double Objective::evaluate(std::span<const double> point, rng::RngEngine& engine) const {
    if (kind == ObjectiveKind::kF0) return f0_evaluate(point, engine);
    if (point.size() != domain.dimension())
        throw std::invalid_argument("Objective::evaluate: dimension mismatch");
    return evaluate_classic(kind, point);
}

double f0_evaluate(std::span<const double> point, rng::RngEngine& engine) {
    (void)point;  // the mark is independent of where it is requested
    return engine.next_uniform();
}

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double ackley(std::span<const double> x) {
    const auto n = static_cast<double>(x.size());
    double sum_sq = 0.0, sum_cos = 0.0;
    for (double v : x) {
        sum_sq += v * v;
        sum_cos += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) - std::exp(sum_cos / n) + 20.0 +
           std::numbers::e;
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
    return s;
}

// Expanded Griewank-of-Rosenbrock: pairs wrap around cyclically.
double griewank_rosenbrock(std::span<const double> x) {
    auto rosenbrock_pair = [](double a, double b) {
        const double t = a * a - b;
        return 100.0 * t * t + (a - 1.0) * (a - 1.0);
    };
    auto griewank_1d = [](double y) { return y * y / 4000.0 - std::cos(y) + 1.0; };
    double s = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) s += griewank_1d(rosenbrock_pair(x[i], x[(i + 1) % n]));
    return s;
}

// Expanded Scaffer F6, cyclic over consecutive coordinate pairs.
double scaffer_f6(std::span<const double> x) {
    auto sf6 = [](double a, double b) {
        const double q = a * a + b * b;
        const double s = std::sin(std::sqrt(q));
        const double d = 1.0 + 0.001 * q;
        return 0.5 + (s * s - 0.5) / (d * d);
    };
    double s = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) s += sf6(x[i], x[(i + 1) % n]);
    return s;
}

}  // namespace

double evaluate_classic(ObjectiveKind kind, std::span<const double> point) {
    if (point.empty()) throw std::invalid_argument("evaluate_classic: empty point");
    switch (kind) {
        case ObjectiveKind::kSphere: return sphere(point);
        case ObjectiveKind::kAckley: return ackley(point);
        case ObjectiveKind::kRastrigin: return rastrigin(point);
        case ObjectiveKind::kGriewankRosenbrock: return griewank_rosenbrock(point);
        case ObjectiveKind::kScafferF6: return scaffer_f6(point);
        case ObjectiveKind::kF0:
            throw std::invalid_argument("evaluate_classic: f0 is stochastic, use f0_evaluate");
    }
    throw std::invalid_argument("evaluate_classic: bad kind");
}

ArgminCounts argmin_uniformity_trial(std::size_t n_points, std::uint64_t trials,
                                     rng::RngEngine& engine) {
    if (n_points < 1) throw std::invalid_argument("argmin_uniformity_trial: n_points >= 1");
    if (trials < 1) throw std::invalid_argument("argmin_uniformity_trial: trials >= 1");
    ArgminCounts result;
    result.counts.assign(n_points, 0);
    result.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::size_t best = 0;
        double best_mark = engine.next_uniform();
        for (std::size_t i = 1; i < n_points; ++i) {
            const double mark = engine.next_uniform();
            if (mark < best_mark) {  // strict: ties keep the lowest index
                best_mark = mark;
                best = i;
            }
        }
        ++result.counts[best];
    }
    return result;
}

}  // namespace biasprobe::objectives
