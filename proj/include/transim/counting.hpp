// counting.hpp — Monte Carlo photon counting and the count-based estimators.
//
// Trials are independent Poisson thinnings of the integrated detection flux,
// keyed per trial by the counter-based generator so accumulation order and
// worker count cannot change the totals. The OpenMP kernel and the serial
// reference must agree bit for bit; tests enforce this.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "transim/common.hpp"

namespace transim {

// Sampled detection flux (counts/s) on a uniform grid over the counting
// window, t_local in [0, window].
struct FluxSeries {
    double window = 0.0;       // s
    std::vector<double> rate;  // counts/s, uniformly sampled incl. endpoints

    static FluxSeries constant(double rate_cps, double window, std::size_t points = 2);
    // Trapezoidal integral over the window -> expected counts per trial.
    double integral() const;
};

struct CountRecord {
    std::uint64_t trials = 0;
    std::uint64_t detected = 0;
    double window = 0.0;  // s
    std::uint64_t seed = 0;
    std::uint32_t stream = 0;

    double rate() const { return static_cast<double>(detected) / static_cast<double>(trials); }
};

// Wilson score interval for a per-trial probability at z standard errors.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double half_width() const { return 0.5 * (hi - lo); }
    bool overlaps(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.0);

// Poisson-count kernels: total detected over `trials` with per-trial mean
// `mean`. Both layouts are bit-identical by construction.
std::uint64_t count_trials_serial(double mean, std::uint64_t trials, std::uint64_t seed, std::uint32_t stream);
std::uint64_t count_trials_parallel(double mean, std::uint64_t trials, std::uint64_t seed, std::uint32_t stream);

// Simulate N trials against the integrated flux. Appends to `warnings` (or
// stderr when null) if the per-trial mean leaves the single-photon regime.
CountRecord simulate_counts(const FluxSeries& flux, std::uint64_t trials, std::uint64_t seed,
                            std::uint32_t stream = 0, std::vector<std::string>* warnings = nullptr,
                            bool parallel = true);

struct ValueWithCi {
    double value = 0.0;
    Interval ci;
};

struct TransductionResult {
    ValueWithCi p_pi;
    ValueWithCi p_0;
    ValueWithCi eta_t;
    ValueWithCi n_add;
    bool significant = true;  // false when eta_t <= 0 within statistics
};

// eta_t = P_pi - P_0 and n_add = P_0 / eta_t with propagated intervals.
TransductionResult transduction_estimate(const CountRecord& with_pi, const CountRecord& without_pi,
                                         double z = 1.0);

struct OpticalRabiFit {
    double background = 0.0;  // fitted minimum of the oscillation
    double maximum = 0.0;     // fitted maximum
    double amplitude = 0.0;   // maximum - background
    double phase = 0.0;
    Interval background_ci;
    Interval maximum_ci;
    Interval amplitude_ci;
};

// Fixed-period sinusoid fit to per-duration count rates; only offset,
// amplitude, and phase are free. Needs at least 4 durations.
OpticalRabiFit optical_rabi_fit(const std::vector<double>& durations, const std::vector<CountRecord>& counts,
                                double period, double z = 1.0);

}  // namespace transim
