#include "transim/counting.hpp"

#include <cmath>
#include <iostream>

#include "transim/fit.hpp"
#include "transim/parallel.hpp"
#include "transim/rng.hpp"

namespace transim {

FluxSeries FluxSeries::constant(double rate_cps, double window, std::size_t points) {
    FluxSeries flux;
    flux.window = window;
    flux.rate.assign(std::max<std::size_t>(points, 2), rate_cps);
    return flux;
}

double FluxSeries::integral() const {
    if (rate.size() < 2 || window <= 0.0) return 0.0;
    const double dt = window / static_cast<double>(rate.size() - 1);
    double sum = 0.5 * (rate.front() + rate.back());
    for (std::size_t i = 1; i + 1 < rate.size(); ++i) sum += rate[i];
    return sum * dt;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw EstimatorError("wilson_interval: zero trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return Interval{center - spread, center + spread};
}

namespace {

// 64-way unrolled chunks keep the reduction order fixed: totals are exact
// integer sums, associative under any partition.
std::uint64_t count_chunk(double mean, std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
                          std::uint32_t stream) {
    std::uint64_t total = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        total += poisson_trial(mean, seed, stream, trial);
    }
    return total;
}

}  // namespace

std::uint64_t count_trials_serial(double mean, std::uint64_t trials, std::uint64_t seed, std::uint32_t stream) {
    return count_chunk(mean, 0, trials, seed, stream);
}

std::uint64_t count_trials_parallel(double mean, std::uint64_t trials, std::uint64_t seed, std::uint32_t stream) {
    const std::uint64_t kChunk = 1u << 16;
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::uint64_t total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t end = std::min(trials, begin + kChunk);
        total += count_chunk(mean, begin, end, seed, stream);
    }
    return total;
}

CountRecord simulate_counts(const FluxSeries& flux, std::uint64_t trials, std::uint64_t seed,
                            std::uint32_t stream, std::vector<std::string>* warnings, bool parallel) {
    if (trials == 0) throw EstimatorError("simulate_counts: zero trials");
    for (double r : flux.rate) {
        if (r < 0.0 || !std::isfinite(r)) throw EstimatorError("simulate_counts: flux must be finite and >= 0");
    }
    const double mean = flux.integral();
    if (mean > 0.1) {
        const std::string msg = "simulate_counts: per-trial mean " + std::to_string(mean) +
                                " is in the multi-photon regime; SPD dead-time is unmodeled";
        if (warnings) {
            warnings->push_back(msg);
        } else {
            std::cerr << "warning: " << msg << "\n";
        }
    }
    CountRecord record;
    record.trials = trials;
    record.window = flux.window;
    record.seed = seed;
    record.stream = stream;
    record.detected = parallel ? count_trials_parallel(mean, trials, seed, stream)
                               : count_trials_serial(mean, trials, seed, stream);
    return record;
}

TransductionResult transduction_estimate(const CountRecord& with_pi, const CountRecord& without_pi, double z) {
    if (with_pi.window != without_pi.window) {
        throw EstimatorError("transduction_estimate: mismatched counting windows");
    }
    TransductionResult result;
    result.p_pi.value = with_pi.rate();
    result.p_pi.ci = wilson_interval(with_pi.detected, with_pi.trials, z);
    result.p_0.value = without_pi.rate();
    result.p_0.ci = wilson_interval(without_pi.detected, without_pi.trials, z);

    result.eta_t.value = result.p_pi.value - result.p_0.value;
    const double sigma_pi = result.p_pi.ci.half_width();
    const double sigma_0 = result.p_0.ci.half_width();
    const double sigma_eta = std::sqrt(sigma_pi * sigma_pi + sigma_0 * sigma_0);
    result.eta_t.ci = Interval{result.eta_t.value - sigma_eta, result.eta_t.value + sigma_eta};

    if (result.eta_t.value <= 0.0) {
        result.significant = false;
        result.n_add = ValueWithCi{};
        return result;
    }
    result.significant = result.eta_t.ci.lo > 0.0;

    const double n_add = result.p_0.value / result.eta_t.value;
    // First-order ratio propagation; P_0 and eta_t are correlated through
    // the shared no-pi record, handled via the independent (P_pi, P_0) pair.
    const double dd_pi = -n_add / result.eta_t.value;
    const double dd_0 = (result.eta_t.value + result.p_0.value) / (result.eta_t.value * result.eta_t.value);
    const double sigma_n =
        std::sqrt(dd_pi * dd_pi * sigma_pi * sigma_pi + dd_0 * dd_0 * sigma_0 * sigma_0);
    result.n_add = ValueWithCi{n_add, Interval{n_add - sigma_n, n_add + sigma_n}};
    return result;
}

OpticalRabiFit optical_rabi_fit(const std::vector<double>& durations, const std::vector<CountRecord>& counts,
                                double period, double z) {
    if (durations.size() != counts.size()) {
        throw FitError("optical_rabi_fit: durations and counts differ in length");
    }
    if (durations.size() < 4) {
        throw FitError("optical_rabi_fit: need at least 4 drive durations");
    }
    if (!(period > 0.0)) throw FitError("optical_rabi_fit: period must be positive");

    const double omega = kTwoPi / period;
    std::vector<double> rates(counts.size()), variances(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        rates[i] = counts[i].rate();
        // Poisson variance of the per-trial rate.
        variances[i] = std::max(rates[i], 1.0 / static_cast<double>(counts[i].trials)) /
                       static_cast<double>(counts[i].trials);
    }
    const HarmonicFit fit = fit_fixed_frequency(durations, rates, omega, &variances);

    OpticalRabiFit out;
    out.background = fit.offset - fit.amplitude();
    out.maximum = fit.offset + fit.amplitude();
    out.amplitude = 2.0 * fit.amplitude();
    out.phase = fit.phase();
    const double s_min = std::sqrt(fit.extremum_variance());
    const double s_amp = 2.0 * std::sqrt(fit.amplitude_variance());
    out.background_ci = Interval{out.background - z * s_min, out.background + z * s_min};
    out.maximum_ci = Interval{out.maximum - z * s_min, out.maximum + z * s_min};
    out.amplitude_ci = Interval{out.amplitude - z * s_amp, out.amplitude + z * s_amp};
    return out;
}

}  // namespace transim
