#include "biasprobe/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace biasprobe::rng {

std::pair<Lcg48State, double> lcg48_next(Lcg48State s) {
    const auto wide = static_cast<unsigned __int128>(s.multiplier) * s.state + s.increment;
    s.state = static_cast<std::uint64_t>(wide) & kLcg48Mask;
    return {s, std::ldexp(static_cast<double>(s.state), -48)};
}

double RngEngine::next_uniform() {
    const double v = produce();
    ++total_draws_;
    if (tap_) tap_(v);
    return v;
}

double RngEngine::next_gaussian(double mean, double sd) {
    if (sd < 0.0) throw std::invalid_argument("next_gaussian: sd must be >= 0");
    double z;
    if (gaussian_spare_) {
        z = *gaussian_spare_;
        gaussian_spare_.reset();
    } else {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        // 1 - u1 lies in (0, 1], so the log is finite; u1 == 0 maps to r == 0.
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        z = r * std::cos(theta);
        gaussian_spare_ = r * std::sin(theta);
    }
    return mean + sd * z;
}

std::size_t RngEngine::next_index(std::size_t n) {
    const auto idx = static_cast<std::size_t>(next_uniform() * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

Lcg48Engine::Lcg48Engine(std::uint64_t seed, std::uint64_t multiplier, std::uint64_t increment) {
    state_.state = seed & kLcg48Mask;
    state_.multiplier = multiplier & kLcg48Mask;
    state_.increment = increment & kLcg48Mask;
}

double Lcg48Engine::produce() {
    auto [next, value] = lcg48_next(state_);
    state_ = next;
    return value;
}

RecordedEngine::RecordedEngine(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
    for (double v : values_) {
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("RecordedEngine: values must lie in [0,1)");
    }
}

double RecordedEngine::produce() {
    if (cursor_ >= values_.size())
        throw EngineExhausted("recorded source exhausted after " + std::to_string(values_.size()) +
                              " draws (" + source_ + ")");
    return values_[cursor_++];
}

std::vector<double> load_recorded_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open recorded source file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Trim trailing CR from files produced on other platforms.
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &consumed);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not a number: " + line);
        }
        while (consumed < line.size() && std::isspace(static_cast<unsigned char>(line[consumed])))
            ++consumed;
        if (consumed != line.size())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": trailing garbage: " + line);
        if (!(v >= 0.0 && v < 1.0))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": value outside [0,1): " + line);
        values.push_back(v);
    }
    return values;
}

std::unique_ptr<RngEngine> make_engine(const std::string& spec, std::uint64_t seed) {
    if (spec == "lcg48") return std::make_unique<Lcg48Engine>(seed);
    if (spec.rfind("recorded:", 0) == 0) {
        const std::string path = spec.substr(9);
        return std::make_unique<RecordedEngine>(load_recorded_file(path), spec);
    }
    throw std::invalid_argument("unknown engine spec: " + spec +
                                " (expected lcg48 or recorded:<path>)");
}

double gaussian_draw(RngEngine& engine, double mean, double sd) {
    return engine.next_gaussian(mean, sd);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t ordinal) {
    return splitmix64(master_seed + ordinal * 0x9E3779B97F4A7C15ULL);
}

}  // namespace biasprobe::rng
