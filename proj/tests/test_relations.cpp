#include "doctest.h"

#include <cmath>

#include "transim/relations.hpp"
#include "transim/rng.hpp"
#include "transim/units.hpp"

using namespace transim;

TEST_CASE("transmon frequency matches the designed qubit") {
    // sqrt(8 E_J E_c) - E_c at the paper's junction energies.
    const double f_q = transmon_frequency(15.5e9, 292e6, 0.0);
    const double by_hand = std::sqrt(8.0 * 15.5e9 * 292e6) - 292e6;
    CHECK(f_q == doctest::Approx(by_hand).epsilon(1e-14));
    CHECK(f_q == doctest::Approx(5.72e9).epsilon(2e-3));
    CHECK(std::abs(f_q - 5.7e9) / 5.7e9 < 0.01);  // within 1% of the design value
}

TEST_CASE("transmon frequency collapses at half flux quantum") {
    CHECK_THROWS_AS(transmon_frequency(15.5e9, 292e6, 0.5), std::domain_error);
    CHECK_THROWS_AS(transmon_frequency(-1.0, 292e6, 0.0), std::domain_error);
}

TEST_CASE("transmon plasma term scales as sqrt(E_J)") {
    const double f4 = transmon_frequency(4.0 * 15.5e9, 292e6, 0.0);
    const double expected = 2.0 * std::sqrt(8.0 * 15.5e9 * 292e6) - 292e6;
    CHECK(f4 == doctest::Approx(expected).epsilon(1e-14));
    CHECK(f4 == doctest::Approx(11.74e9).epsilon(1e-3));
}

TEST_CASE("transmon frequency is even and flux-quantum periodic") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto words = trial_block(11, 0, i);
        const double flux = 0.45 * (2.0 * uniform_from_words(words[0], words[1]) - 1.0);
        const double base = transmon_frequency(15.5e9, 292e6, flux);
        CHECK(transmon_frequency(15.5e9, 292e6, -flux) == doctest::Approx(base).epsilon(1e-14));
        CHECK(transmon_frequency(15.5e9, 292e6, flux + 1.0) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("back-action rate reproduces the measured damping") {
    const double gamma = backaction_rate(44.0, rad_from_hz(420e3), rad_from_hz(1.61e9));
    CHECK(hz_from_rad(gamma) == doctest::Approx(19.28e3).epsilon(2e-3));
    CHECK(std::abs(hz_from_rad(gamma) - 19.3e3) < 0.5e3);
    CHECK(backaction_rate(0.0, rad_from_hz(420e3), rad_from_hz(1.61e9)) == 0.0);
    // Linearity in n_c: 4x photons, 4x damping.
    CHECK(backaction_rate(176.0, rad_from_hz(420e3), rad_from_hz(1.61e9)) ==
          doctest::Approx(4.0 * gamma).epsilon(1e-14));
}

TEST_CASE("back-action rate is linear in n_c and quadratic in g_om") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto words = trial_block(12, 0, i);
        const double n_c = 200.0 * uniform_from_words(words[0], words[1]);
        const double g = rad_from_hz(1e6 * uniform_from_words(words[2], words[3]));
        const double kappa = rad_from_hz(1.61e9);
        const double base = backaction_rate(n_c, g, kappa);
        CHECK(backaction_rate(3.0 * n_c, g, kappa) == doctest::Approx(3.0 * base).epsilon(1e-12));
        CHECK(backaction_rate(n_c, 2.0 * g, kappa) == doctest::Approx(4.0 * base).epsilon(1e-12));
    }
    CHECK_THROWS_AS(backaction_rate(44.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("cooperativity is back-action over the mechanical rate") {
    const double c = cooperativity(44.0, rad_from_hz(420e3), rad_from_hz(1.61e9), rad_from_hz(446e3));
    CHECK(c == doctest::Approx(19.283e3 / 446e3).epsilon(1e-3));
}

TEST_CASE("Stark shift calibration inverts the dispersive relation") {
    // 10 MHz shift at 50 MHz detuning needs Omega/2pi = 31.6 MHz.
    const double omega = stark_drive_amplitude(rad_from_hz(10e6), rad_from_hz(50e6));
    CHECK(hz_from_rad(omega) == doctest::Approx(31.62e6).epsilon(1e-3));
    CHECK(stark_shift_from_drive(omega, rad_from_hz(50e6)) ==
          doctest::Approx(rad_from_hz(10e6)).epsilon(1e-12));
}

TEST_CASE("fridge occupancy is negligible at base temperature") {
    const double n_f = bose_occupancy(rad_from_hz(5.1588e9), 0.015);
    CHECK(n_f < 1e-6);
    CHECK(n_f > 0.0);
    // Inverse mapping round-trips.
    const double t = bath_temperature_for_occupancy(rad_from_hz(5.1588e9), 0.64);
    CHECK(bose_occupancy(rad_from_hz(5.1588e9), t) == doctest::Approx(0.64).epsilon(1e-12));
}
