#include "biasprobe/algorithm_k.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace biasprobe::algk {

namespace detail {

namespace {
using Wide = unsigned __int128;
constexpr std::uint64_t kMod = kTenDigitModulus;      // 10^10
constexpr std::uint64_t kHalf = 5'000'000'000ULL;     // 5 * 10^9
constexpr std::uint64_t kLowHalf = 100'000ULL;        // 10^5
constexpr std::uint64_t kNineDigits = 1'000'000'000ULL;
constexpr std::uint64_t kMultiplier = 1'001'001'001ULL;
}  // namespace

std::uint64_t ensure_large(std::uint64_t x) {
    return x < kHalf ? x + kHalf : x;
}

std::uint64_t middle_square(std::uint64_t x) {
    return static_cast<std::uint64_t>((Wide(x) * x / kLowHalf) % kMod);
}

std::uint64_t multiply_fixed(std::uint64_t x) {
    return static_cast<std::uint64_t>((Wide(kMultiplier) * x) % kMod);
}

std::uint64_t pseudo_complement(std::uint64_t x) {
    return x < 100'000'000ULL ? x + 9'814'055'677ULL : kMod - x;
}

std::uint64_t interchange_halves(std::uint64_t x) {
    return kLowHalf * (x % kLowHalf) + x / kLowHalf;
}

std::uint64_t decrease_digits(std::uint64_t x) {
    std::uint64_t result = 0;
    std::uint64_t place = 1;
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t digit = (x / place) % 10;
        result += (digit > 0 ? digit - 1 : 0) * place;
        place *= 10;
    }
    return result;
}

std::uint64_t modify_99999(std::uint64_t x) {
    return x < kLowHalf ? x * x + 99'999ULL : x - 99'999ULL;
}

std::uint64_t normalize(std::uint64_t x) {
    if (x == 0) throw std::invalid_argument("normalize: zero input");
    while (x < kNineDigits) x *= 10;
    return x;
}

std::uint64_t modified_middle_square(std::uint64_t x) {
    // x*(x-1) written as x*x - x to stay safe at x == 0.
    return static_cast<std::uint64_t>(((Wide(x) * x - x) / kLowHalf) % kMod);
}

}  // namespace detail

std::uint64_t algk_step(std::uint64_t x) {
    if (x >= kTenDigitModulus)
        throw std::invalid_argument("algk_step: input must be a 10-digit decimal value");
    // Most significant digit fixes the pass count; each pass enters the
    // transform chain at the slot picked by the second digit and falls
    // through to the end.
    std::uint64_t passes_left = x / 1'000'000'000ULL;
    for (;;) {
        const std::uint64_t entry = (x / 100'000'000ULL) % 10;
        switch (entry) {
            case 0: x = detail::ensure_large(x); [[fallthrough]];
            case 1: x = detail::middle_square(x); [[fallthrough]];
            case 2: x = detail::multiply_fixed(x); [[fallthrough]];
            case 3: x = detail::pseudo_complement(x); [[fallthrough]];
            case 4: x = detail::interchange_halves(x); [[fallthrough]];
            case 5: x = detail::multiply_fixed(x); [[fallthrough]];
            case 6: x = detail::decrease_digits(x); [[fallthrough]];
            case 7: x = detail::modify_99999(x); [[fallthrough]];
            case 8: x = detail::normalize(x); [[fallthrough]];
            default: x = detail::modified_middle_square(x);
        }
        if (passes_left == 0) break;
        --passes_left;
    }
    return x;
}

OrbitResult algk_orbit(std::uint64_t x0, std::uint64_t max_steps) {
    if (max_steps < 1) throw std::invalid_argument("algk_orbit: max_steps >= 1");
    if (x0 >= kTenDigitModulus)
        throw std::invalid_argument("algk_orbit: seed must be a 10-digit decimal value");

    OrbitResult result;
    auto step = [&result](std::uint64_t v) {
        ++result.steps_used;
        return algk_step(v);
    };
    auto out_of_budget = [&]() { return result.steps_used >= max_steps; };

    // Brent: find the cycle length first, doubling the search window.
    std::uint64_t power = 1, period = 1;
    std::uint64_t tortoise = x0;
    std::uint64_t hare = step(x0);
    while (tortoise != hare) {
        if (power == period) {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        if (out_of_budget()) return result;
        hare = step(hare);
        ++period;
    }

    // Advance one pointer `period` steps, then walk both to the cycle entry.
    hare = x0;
    for (std::uint64_t i = 0; i < period; ++i) {
        if (out_of_budget()) return result;
        hare = step(hare);
    }
    tortoise = x0;
    std::uint64_t preperiod = 0;
    while (tortoise != hare) {
        if (result.steps_used + 2 > max_steps) return result;
        tortoise = step(tortoise);
        hare = step(hare);
        ++preperiod;
    }

    result.kind = period == 1 ? OrbitResult::Kind::kFixedPoint : OrbitResult::Kind::kCycle;
    result.preperiod = preperiod;
    result.period = period;
    return result;
}

ScanResult algk_scan(std::uint64_t first_seed, std::uint64_t count, std::uint64_t max_steps) {
    ScanResult scan;
    scan.seeds_scanned = count;
    std::map<std::pair<std::uint64_t, std::uint64_t>, OrbitClass> classes;
    for (std::uint64_t s = first_seed; s < first_seed + count; ++s) {
        const OrbitResult orbit = algk_orbit(s, max_steps);
        if (orbit.kind == OrbitResult::Kind::kUndecided) {
            ++scan.undecided;
            continue;
        }
        auto [it, inserted] =
            classes.try_emplace({orbit.period, orbit.preperiod},
                                OrbitClass{orbit.preperiod, orbit.period, 0, s});
        ++it->second.count;
        if (!inserted) it->second.example_seed = std::min(it->second.example_seed, s);
    }
    scan.classes.reserve(classes.size());
    for (const auto& [key, cls] : classes) scan.classes.push_back(cls);
    return scan;
}

}  // namespace biasprobe::algk
