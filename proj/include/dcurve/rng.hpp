#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dcurve/math.hpp"

namespace dcurve {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// PCG32 (XSH-RR) with a per-stream increment.
class Pcg32 {
  public:
    Pcg32(std::uint64_t state, std::uint64_t stream)
        : state_(0), inc_((stream << 1) | 1ULL) {
        next();
        state_ += state;
        next();
    }

    std::uint32_t next() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18) ^ old) >> 27);
        const auto rot = static_cast<std::uint32_t>(old >> 59);
        return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
    }

  private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// Deterministic per-trial random stream: trial i of seed s always produces
/// the same draws, independent of execution order or thread count.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : gen_(splitmix64(seed ^ 0x5851F42D4C957F2DULL) + trial,
               splitmix64(trial * 0x9E3779B97F4A7C15ULL + seed)) {}

    /// Uniform on [0,1) with 53-bit resolution.
    double uniform() {
        const std::uint64_t hi = gen_.next();
        const std::uint64_t lo = gen_.next();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (explicit form, platform-stable).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    Pcg32 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Runs `trial_fn(i, out)` for i in [0, trials) and returns the per-statistic
/// totals. Trials are grouped into fixed-size chunks; statistics are Kahan-
/// accumulated inside each chunk in trial order and chunks are combined in
/// chunk order, so the result is a pure fold over trial index regardless of
/// how many worker threads execute the chunks.
std::vector<double> deterministic_fold(std::size_t trials, std::size_t width, unsigned threads,
                                       const std::function<void(std::size_t, std::span<double>)>& trial_fn);

}  // namespace dcurve
