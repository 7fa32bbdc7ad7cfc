#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biasprobe::rng {

/// Raised when a finite random source runs dry.
class EngineExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kLcg48Modulus = std::uint64_t{1} << 48;
inline constexpr std::uint64_t kLcg48Mask = kLcg48Modulus - 1;
inline constexpr std::uint64_t kLcg48DefaultMultiplier = 25214903917ULL;
inline constexpr std::uint64_t kLcg48DefaultIncrement = 11ULL;

/// State of a 48-bit linear congruential generator. The transition is
/// state' = (multiplier * state + increment) mod 2^48 and the emitted real
/// is state' / 2^48, using all 48 bits (exactly representable in a double).
struct Lcg48State {
    std::uint64_t state = 0;
    std::uint64_t multiplier = kLcg48DefaultMultiplier;
    std::uint64_t increment = kLcg48DefaultIncrement;
};

/// Advance the generator one step and emit the value in [0, 1) derived from
/// the new state.
std::pair<Lcg48State, double> lcg48_next(Lcg48State s);

/// Uniform-real source with draw accounting. Every produced value increments
/// `total_draws` and is passed to the optional tap. Engines are single-owner
/// mutable state; never share one across concurrent tasks.
class RngEngine {
public:
    virtual ~RngEngine() = default;

    /// Next uniform real in [0, 1).
    double next_uniform();

    /// Normal variate via the Box-Muller transform. Pairs of uniforms yield
    /// pairs of normals; the second of each pair is cached, so the engine
    /// consumes exactly 2 uniform draws per 2 gaussians. sd == 0 returns the
    /// mean exactly (the unit normal is still drawn and scaled by zero, so
    /// draw accounting does not depend on sd).
    double next_gaussian(double mean, double sd);

    /// Uniform index in [0, n).
    std::size_t next_index(std::size_t n);

    /// Number of uniform reals produced since construction or the last reset.
    std::uint64_t total_draws() const { return total_draws_; }
    void reset_draw_count() { total_draws_ = 0; }

    /// Install a callback receiving every drawn uniform (empty to remove).
    void set_tap(std::function<void(double)> tap) { tap_ = std::move(tap); }

    /// Short description, e.g. "lcg48" or "recorded:<path>".
    virtual std::string description() const = 0;

private:
    virtual double produce() = 0;

    std::uint64_t total_draws_ = 0;
    std::function<void(double)> tap_;
    std::optional<double> gaussian_spare_;
};

/// Deterministic 48-bit LCG engine. The seed is masked to 48 bits.
class Lcg48Engine final : public RngEngine {
public:
    explicit Lcg48Engine(std::uint64_t seed,
                         std::uint64_t multiplier = kLcg48DefaultMultiplier,
                         std::uint64_t increment = kLcg48DefaultIncrement);

    const Lcg48State& state() const { return state_; }
    std::string description() const override { return "lcg48"; }

private:
    double produce() override;
    Lcg48State state_;
};

/// Replays a finite recorded sequence of reals in [0, 1). Exhaustion raises
/// EngineExhausted; there is no silent wraparound.
class RecordedEngine final : public RngEngine {
public:
    explicit RecordedEngine(std::vector<double> values, std::string source = "recorded");

    std::size_t cursor() const { return cursor_; }
    std::size_t size() const { return values_.size(); }
    std::size_t remaining() const { return values_.size() - cursor_; }
    std::string description() const override { return source_; }

private:
    double produce() override;
    std::vector<double> values_;
    std::size_t cursor_ = 0;
    std::string source_;
};

/// Parse a recorded-source file: plain text, one decimal real per line,
/// values in [0, 1). Blank lines are ignored. Malformed or out-of-range
/// lines raise std::runtime_error naming the offending line.
std::vector<double> load_recorded_file(const std::string& path);

/// Build an engine from a CLI-style spec: "lcg48" (uses `seed`) or
/// "recorded:<path>" (seed ignored).
std::unique_ptr<RngEngine> make_engine(const std::string& spec, std::uint64_t seed);

/// One gaussian draw through the engine's pair cache; sd must be >= 0.
double gaussian_draw(RngEngine& engine, double mean, double sd);

/// One splitmix64 step (add 0x9E3779B97F4A7C15, then mix). The documented
/// per-run seed is derive_run_seed(master, ordinal) =
/// splitmix64(master + ordinal * 0x9E3779B97F4A7C15), which makes runs
/// independent and individually reproducible.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t ordinal);

}  // namespace biasprobe::rng
