#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biasprobe/rng.hpp"

namespace biasprobe::objectives {

/// Axis-aligned search box; lower[i] < upper[i] for all i.
struct SearchDomain {
    std::vector<double> lower;
    std::vector<double> upper;

    static SearchDomain uniform_box(std::size_t dim, double lo, double hi);

    std::size_t dimension() const { return lower.size(); }
    double width(std::size_t i) const { return upper[i] - lower[i]; }
    bool contains(std::span<const double> point) const;
    void validate() const;  // throws std::invalid_argument on a bad box
};

enum class ObjectiveKind {
    kF0,
    kSphere,
    kAckley,
    kRastrigin,
    kGriewankRosenbrock,
    kScafferF6,
};

ObjectiveKind objective_kind_from_name(const std::string& name);
std::string objective_name(ObjectiveKind kind);

/// Conventional search box for each function family.
SearchDomain default_domain(ObjectiveKind kind, std::size_t dim);

/// An objective to minimize. The probe objective (kF0) returns a fresh
/// uniform mark in [0, 1] per evaluation, independent of the point and of
/// all previous evaluations; it consumes exactly one engine draw. The
/// classic functions are deterministic and ignore the engine.
struct Objective {
    ObjectiveKind kind = ObjectiveKind::kF0;
    SearchDomain domain;
    bool stochastic = false;

    static Objective make(ObjectiveKind kind, std::size_t dim);
    static Objective make(ObjectiveKind kind, SearchDomain domain);

    std::size_t dimension() const { return domain.dimension(); }
    double evaluate(std::span<const double> point, rng::RngEngine& engine) const;
};

/// One fresh uniform mark per call; the point is deliberately unused.
double f0_evaluate(std::span<const double> point, rng::RngEngine& engine);

/// Deterministic value of a classic test function at a point (dimension is
/// taken from the point; must be >= 1). Formulas are listed in
/// docs/objectives.md.
double evaluate_classic(ObjectiveKind kind, std::span<const double> point);

struct ArgminCounts {
    std::vector<std::uint64_t> counts;  // one per index
    std::uint64_t trials = 0;

    double frequency(std::size_t i) const {
        return static_cast<double>(counts[i]) / static_cast<double>(trials);
    }
};

/// Repeatedly draw n_points i.i.d. uniform marks and record which index holds
/// the minimum (ties break to the lowest index, a probability-zero event for
/// continuous marks). Under the i.i.d. assumption every index is equally
/// likely, so the counts should be uniform.
ArgminCounts argmin_uniformity_trial(std::size_t n_points, std::uint64_t trials,
                                     rng::RngEngine& engine);

}  // namespace biasprobe::objectives
