#pragma once

#include <cstdint>
#include <vector>

namespace biasprobe::algk {

/// Inputs are 10-digit decimal values, i.e. integers in [0, 10^10).
inline constexpr std::uint64_t kTenDigitModulus = 10'000'000'000ULL;

/// One application of the "super-random" self-scrambling generator. The most
/// significant digit Y selects how many passes to run (Y+1); each pass jumps
/// to one of ten scrambling steps chosen by the second digit and then falls
/// through the remaining ones. All arithmetic is exact over integers below
/// 10^20 (128-bit intermediates).
std::uint64_t algk_step(std::uint64_t x);

struct OrbitResult {
    enum class Kind { kFixedPoint, kCycle, kUndecided };
    Kind kind = Kind::kUndecided;
    std::uint64_t preperiod = 0;  // steps before entering the cycle
    std::uint64_t period = 0;     // cycle length (1 for a fixed point)
    std::uint64_t steps_used = 0; // function applications spent detecting
};

/// Brent cycle detection on iterated algk_step, capped at max_steps function
/// applications. Reports kFixedPoint when the cycle has length 1, kCycle
/// otherwise, and kUndecided if the cap was reached first.
OrbitResult algk_orbit(std::uint64_t x0, std::uint64_t max_steps);

struct OrbitClass {
    std::uint64_t preperiod = 0;
    std::uint64_t period = 0;
    std::uint64_t count = 0;         // seeds in this class
    std::uint64_t example_seed = 0;  // smallest seed observed
};

struct ScanResult {
    std::vector<OrbitClass> classes;  // sorted by (period, preperiod)
    std::uint64_t undecided = 0;
    std::uint64_t seeds_scanned = 0;
};

/// Orbit classification over seeds [first_seed, first_seed + count).
ScanResult algk_scan(std::uint64_t first_seed, std::uint64_t count, std::uint64_t max_steps);

namespace detail {

// The individual scrambling transforms, exposed for unit testing. Each takes
// and returns a value in [0, 10^10) unless noted.
std::uint64_t ensure_large(std::uint64_t x);            // step: add 5*10^9 if below it
std::uint64_t middle_square(std::uint64_t x);           // floor(x^2 / 10^5) mod 10^10
std::uint64_t multiply_fixed(std::uint64_t x);          // 1001001001 * x mod 10^10
std::uint64_t pseudo_complement(std::uint64_t x);       // +9814055677 or 10^10 - x
std::uint64_t interchange_halves(std::uint64_t x);      // swap 5-digit halves
std::uint64_t decrease_digits(std::uint64_t x);         // each nonzero digit -= 1
std::uint64_t modify_99999(std::uint64_t x);            // x^2+99999 or x-99999
std::uint64_t normalize(std::uint64_t x);               // multiply by 10 until >= 10^9
std::uint64_t modified_middle_square(std::uint64_t x);  // floor(x(x-1)/10^5) mod 10^10

}  // namespace detail

}  // namespace biasprobe::algk
