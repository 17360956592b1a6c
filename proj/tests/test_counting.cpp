#include "doctest.h"

#include <cmath>

#include "transim/counting.hpp"
#include "transim/rng.hpp"

using namespace transim;

TEST_CASE("zero flux with zero dark rate never clicks") {
    const FluxSeries flux = FluxSeries::constant(0.0, 38e-9);
    const CountRecord record = simulate_counts(flux, 1000000, 3, 0);
    CHECK(record.detected == 0);
}

TEST_CASE("dark counts alone match the Poisson budget") {
    // 10 cps over 38 ns and 1e9 trials: mean 380 counts.
    const FluxSeries flux = FluxSeries::constant(10.0, 38e-9);
    const CountRecord record = simulate_counts(flux, 1000000000ull, 4, 0);
    const double mean = 10.0 * 38e-9 * 1e9;
    CHECK(std::abs(static_cast<double>(record.detected) - mean) < 3.0 * std::sqrt(mean));
}

TEST_CASE("empirical rate converges at the Poisson 1/sqrt(N) law") {
    const double rate = 400.0;  // per second
    const FluxSeries flux = FluxSeries::constant(rate, 38e-9);
    const double mean = rate * 38e-9;
    for (const std::uint64_t n : {10000000ull, 100000000ull, 1000000000ull}) {
        const CountRecord record = simulate_counts(flux, n, 5, 0);
        const double sigma = std::sqrt(mean / static_cast<double>(n));
        CHECK(std::abs(record.rate() - mean) < 4.0 * sigma);
    }
}

TEST_CASE("multi-photon means emit a warning") {
    const FluxSeries flux = FluxSeries::constant(0.2 / 38e-9, 38e-9);
    std::vector<std::string> warnings;
    simulate_counts(flux, 1000, 6, 0, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings.front().find("multi-photon") != std::string::npos);
}

TEST_CASE("trapezoid integral matches closed forms") {
    FluxSeries ramp;
    ramp.window = 10e-9;
    ramp.rate = {0.0, 1e6};  // linear ramp
    CHECK(ramp.integral() == doctest::Approx(0.5 * 1e6 * 10e-9).epsilon(1e-12));
    CHECK(FluxSeries::constant(1e6, 10e-9).integral() == doctest::Approx(1e6 * 10e-9).epsilon(1e-12));
}

TEST_CASE("transduction estimate is the exact arithmetic identity") {
    // The published per-trial probabilities at 1e9 trials.
    CountRecord with_pi{1000000000ull, 13800, 38e-9, 0, 0};
    CountRecord without_pi{1000000000ull, 5000, 38e-9, 0, 1};
    const TransductionResult result = transduction_estimate(with_pi, without_pi);
    CHECK(result.p_pi.value == doctest::Approx(1.38e-5).epsilon(1e-12));
    CHECK(result.p_0.value == doctest::Approx(0.50e-5).epsilon(1e-12));
    CHECK(result.eta_t.value == doctest::Approx(0.88e-5).epsilon(1e-12));
    CHECK(result.n_add.value == doctest::Approx(0.50 / 0.88).epsilon(1e-12));
    CHECK(result.n_add.value == doctest::Approx(0.568).epsilon(1e-3));
    CHECK(result.significant);
}

TEST_CASE("identical rates flag an insignificant result") {
    CountRecord a{1000000ull, 50, 38e-9, 0, 0};
    CountRecord b{1000000ull, 50, 38e-9, 0, 1};
    const TransductionResult result = transduction_estimate(a, b);
    CHECK(!result.significant);
    CountRecord c{1000000ull, 40, 38e-9, 0, 1};
    CHECK_THROWS_AS(transduction_estimate(a, CountRecord{1000000ull, 40, 40e-9, 0, 1}), EstimatorError);
    (void)c;
}

TEST_CASE("generator round trip recovers injected efficiencies within 3 sigma") {
    // eta_ro = 1e-5 per phonon, occupancies 1.39 (pi, overfilled) and 0.64.
    const double eta_ro = 1e-5;
    const double occ_pi = 1.39, occ_0 = 0.64;
    const std::uint64_t trials = 1000000000ull;
    const FluxSeries flux_pi = FluxSeries::constant(occ_pi * eta_ro / 38e-9, 38e-9);
    const FluxSeries flux_0 = FluxSeries::constant(occ_0 * eta_ro / 38e-9, 38e-9);
    const CountRecord rec_pi = simulate_counts(flux_pi, trials, 11, 0);
    const CountRecord rec_0 = simulate_counts(flux_0, trials, 11, 1);
    const TransductionResult result = transduction_estimate(rec_pi, rec_0, 3.0);
    const double eta_injected = (occ_pi - occ_0) * eta_ro;  // 0.75e-5
    CHECK(result.eta_t.ci.lo < eta_injected);
    CHECK(result.eta_t.ci.hi > eta_injected);
    const double n_add_injected = occ_0 / (occ_pi - occ_0);  // 0.64/0.75
    CHECK(result.n_add.ci.lo < n_add_injected);
    CHECK(result.n_add.ci.hi > n_add_injected);
}

TEST_CASE("round trip is unbiased across 100 seeds") {
    const double mean_pi = 1.38e-5, mean_0 = 0.50e-5;
    const std::uint64_t trials = 10000000ull;
    const FluxSeries flux_pi = FluxSeries::constant(mean_pi / 38e-9, 38e-9);
    const FluxSeries flux_0 = FluxSeries::constant(mean_0 / 38e-9, 38e-9);
    double sum = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        const CountRecord rec_pi = simulate_counts(flux_pi, trials, 1000 + s, 0);
        const CountRecord rec_0 = simulate_counts(flux_0, trials, 1000 + s, 1);
        sum += transduction_estimate(rec_pi, rec_0).eta_t.value;
    }
    const double mean_eta = sum / seeds;
    const double sigma_single = std::sqrt((mean_pi + mean_0) / static_cast<double>(trials));
    CHECK(std::abs(mean_eta - (mean_pi - mean_0)) < sigma_single / std::sqrt(double(seeds)));
}

TEST_CASE("wilson interval behaves at tiny probabilities") {
    const Interval ci = wilson_interval(13800, 1000000000ull);
    CHECK(ci.lo < 1.38e-5);
    CHECK(ci.hi > 1.38e-5);
    CHECK(ci.half_width() == doctest::Approx(std::sqrt(1.38e-5 / 1e9)).epsilon(0.01));
    CHECK(wilson_interval(0, 100).lo == 0.0);
}

TEST_CASE("optical rabi fit recovers noiseless parameters exactly") {
    const double period = 64e-9;
    std::vector<double> durations;
    std::vector<CountRecord> counts;
    const std::uint64_t trials = 1000000000000ull;  // exact rates, synthetic counts
    for (int i = 0; i < 16; ++i) {
        const double tau = i * 8e-9;
        const double rate = 0.67e-5 + 0.71e-5 * 0.5 * (1.0 - std::cos(kTwoPi * tau / period));
        durations.push_back(tau);
        counts.push_back(CountRecord{trials, static_cast<std::uint64_t>(rate * trials), 38e-9, 0, 0});
    }
    const OpticalRabiFit fit = optical_rabi_fit(durations, counts, period);
    CHECK(fit.background == doctest::Approx(0.67e-5).epsilon(1e-6));
    CHECK(fit.maximum == doctest::Approx(1.38e-5).epsilon(1e-6));
}

TEST_CASE("zero-amplitude data covers zero amplitude") {
    std::vector<double> durations;
    std::vector<CountRecord> counts;
    for (int i = 0; i < 8; ++i) {
        durations.push_back(i * 8e-9);
        counts.push_back(simulate_counts(FluxSeries::constant(1e-5 / 38e-9, 38e-9), 10000000ull,
                                         400 + i, static_cast<std::uint32_t>(i)));
    }
    const OpticalRabiFit fit = optical_rabi_fit(durations, counts, 64e-9, 2.0);
    CHECK(fit.amplitude_ci.lo < 0.0);
    CHECK(fit.amplitude_ci.hi > 0.0);
}

TEST_CASE("too few durations fail the fit") {
    std::vector<double> durations{0.0, 8e-9, 16e-9};
    std::vector<CountRecord> counts(3, CountRecord{1000, 1, 38e-9, 0, 0});
    CHECK_THROWS_AS(optical_rabi_fit(durations, counts, 64e-9), FitError);
}
