// rng.hpp — Counter-based random numbers (Philox4x32-10).
//
// Each Monte Carlo trial draws from a block keyed by (seed, stream, trial
// index), so the result of a trial is independent of execution order and
// worker count. The generator follows the Philox4x32 round structure of
// Salmon et al. and is pinned by the published known-answer vectors in the
// tests.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace transim {

struct Philox4x32 {
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key, int rounds = 10) {
        for (int r = 0; r < rounds; ++r) {
            if (r > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = Counter{hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// The four words of the trial's block; deterministic in (seed, stream, trial).
inline Philox4x32::Counter trial_block(std::uint64_t seed, std::uint32_t stream, std::uint64_t trial) {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                                  stream, 0u};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Philox4x32::block(ctr, key);
}

// Uniform double in [0, 1) with 53 random bits from two words.
inline double uniform_from_words(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t mantissa = (static_cast<std::uint64_t>(hi >> 6) << 27) | (lo >> 5);
    return static_cast<double>(mantissa) * 0x1p-53;
}

// Poisson sample by CDF inversion of a single uniform; exact and cheap for
// the small means of photon-counting windows.
inline unsigned poisson_from_uniform(double mean, double u) {
    double p = std::exp(-mean);
    double cdf = p;
    unsigned k = 0;
    while (u >= cdf && k < 4096) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

// One Poisson draw for a trial at the given mean.
inline unsigned poisson_trial(double mean, std::uint64_t seed, std::uint32_t stream, std::uint64_t trial) {
    const auto words = trial_block(seed, stream, trial);
    return poisson_from_uniform(mean, uniform_from_words(words[0], words[1]));
}

}  // namespace transim
