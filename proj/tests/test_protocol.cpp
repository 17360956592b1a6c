#include "doctest.h"

#include <cmath>

#include "transim/config.hpp"
#include "transim/protocol.hpp"

using namespace transim;

namespace {

Profile paper() { return load_profile("paper_device"); }

Profile lossless(Profile p) {
    p.device.qubit.t1 = 1.0;
    p.device.qubit.t2_star = 1.9;
    p.device.mech_modes[0].t1 = 1.0;
    return p;
}

std::vector<double> grid(double t0, double t1, double step) {
    std::vector<double> out;
    for (double t = t0; t <= t1 + 1e-15; t += step) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("rabi scan finds the calibrated pi time") {
    const Profile p = paper();
    const RabiScan scan = rabi_scan(p.device, p.sequence, p.sequence.rabi_omega(),
                                    grid(0.0, 256e-9, 2e-9), p.sim);
    CHECK(std::abs(scan.pi_time() - 32e-9) < 1e-9);
}

TEST_CASE("rabi scan with zero drive stays flat and reports no fit") {
    const Profile p = paper();
    const RabiScan scan = rabi_scan(p.device, p.sequence, 0.0, grid(0.0, 128e-9, 8e-9), p.sim);
    for (double v : scan.p_e) CHECK(v == 0.0);
    CHECK(!scan.fit.has_value());
    CHECK_THROWS_AS(scan.pi_time(), FitError);
}

TEST_CASE("lossless full Rabi cycle returns the qubit to ground") {
    Profile p = lossless(paper());
    p.device.mech_modes[0].g_pe = 0.0;  // pure two-level rotation
    const double omega = p.sequence.rabi_omega();
    PulseSequence pulses;
    pulses.append(make_drive_segment(omega, 2.0 * M_PI / omega, 0.0, 0.0, p.sequence.drive_edge));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix final_state =
        evolve_to(model, product_state(model.ops, 0.0, 0), model.duration, p.sim);
    CHECK(expectation(final_state, model.ops.sigma_ee) < 1e-6);
}

TEST_CASE("decay-free pi time equals the pulse-area value within 2%") {
    Profile p = lossless(paper());
    p.device.mech_modes[0].g_pe = 0.0;
    const double omega = p.sequence.rabi_omega();
    const RabiScan scan = rabi_scan(p.device, p.sequence, omega, grid(0.0, 256e-9, 2e-9), p.sim);
    CHECK(std::abs(scan.pi_time() - M_PI / omega) / (M_PI / omega) < 0.02);
}

TEST_CASE("stark swap hits the paper's transfer curve") {
    const Profile p = paper();
    SUBCASE("zero hold leaves the phonon empty") {
        const SwapResult r = stark_swap(p.device, p.sequence, 0.0, p.sim);
        CHECK(r.n_m_after == 0.0);
        CHECK(r.p_e_after == 1.0);
    }
    SUBCASE("maximal transfer near the published hold") {
        const SwapResult r = stark_swap(p.device, p.sequence, 104e-9, p.sim);
        CHECK(r.n_m_after > 0.70);
        CHECK(r.n_m_after < 0.80);
    }
    SUBCASE("insufficient shift warns") {
        Profile weak = p;
        weak.sequence.stark_shift = 3.0 * weak.device.g_pe();
        const SwapResult r = stark_swap(weak.device, weak.sequence, 104e-9, weak.sim);
        REQUIRE(!r.warnings.empty());
        CHECK(r.warnings.front().find("insufficient detuning contrast") != std::string::npos);
    }
}

TEST_CASE("lossless rectangular swap realizes the analytic half period") {
    Profile p = lossless(paper());
    p.sequence.stark_rise = 0.0;
    p.sequence.stark_fall = 0.0;
    const double hold = M_PI / (2.0 * p.device.g_pe());
    CHECK(hold == doctest::Approx(111.6e-9).epsilon(1e-3));
    const SwapResult r = stark_swap(p.device, p.sequence, hold, p.sim);
    CHECK(r.n_m_after == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("lossless oscillation frequency equals 2 g_pe within 1%") {
    Profile p = lossless(paper());
    const VacuumRabiScan scan =
        vacuum_rabi_scan(p.device, p.sequence, grid(0.0, 560e-9, 4e-9), p.sim);
    REQUIRE(scan.fit.has_value());
    const double f_expected = hz_from_rad(2.0 * p.device.g_pe());
    CHECK(std::abs(scan.fit->frequency - f_expected) / f_expected < 0.01);
}

TEST_CASE("swap efficiency reproduces the measured value and timing") {
    const Profile p = paper();
    const SwapEfficiency eff = swap_efficiency(p.device, p.sequence, p.sim);
    CHECK(eff.eta_swap > 0.70);
    CHECK(eff.eta_swap < 0.80);
    CHECK(std::abs(eff.t_swap - 104e-9) < 10e-9);

    SUBCASE("lossless limit transfers fully") {
        const Profile q = lossless(p);
        const SwapEfficiency ideal = swap_efficiency(q.device, q.sequence, q.sim);
        CHECK(ideal.eta_swap > 0.999);
    }
    SUBCASE("halving the phonon lifetime lowers the efficiency") {
        Profile worse = p;
        worse.device.mech_modes[0].t1 *= 0.5;
        const SwapEfficiency degraded = swap_efficiency(worse.device, worse.sequence, worse.sim);
        CHECK(degraded.eta_swap < eff.eta_swap);
    }
}

TEST_CASE("swap efficiency is monotone in the decay channels") {
    const Profile p = paper();
    const double base = swap_efficiency(p.device, p.sequence, p.sim).eta_swap;

    Profile fast_qubit = p;
    fast_qubit.device.qubit.t1 = 0.5 * p.device.qubit.t1;
    fast_qubit.device.qubit.t2_star = std::min(p.device.qubit.t2_star, 2.0 * fast_qubit.device.qubit.t1);
    CHECK(swap_efficiency(fast_qubit.device, fast_qubit.sequence, fast_qubit.sim).eta_swap < base);

    Profile dephased = p;
    dephased.device.qubit.t2_star = 0.5 * p.device.qubit.t2_star;
    CHECK(swap_efficiency(dephased.device, dephased.sequence, dephased.sim).eta_swap < base);
}

TEST_CASE("double swap decay matches the phonon lifetime") {
    const Profile p = paper();
    const PhononT1Result r = phonon_t1(p.device, p.sequence, grid(0.0, 1.2e-6, 10e-9), p.sim);
    CHECK(std::abs(r.t1 - 357e-9) / 357e-9 < 0.10);
    CHECK(!r.lower_bound);
}

TEST_CASE("undamped phonon reports a lower bound") {
    Profile p = paper();
    p.device.mech_modes[0].t1 = 1.0;  // effectively lossless
    const PhononT1Result r = phonon_t1(p.device, p.sequence, grid(0.0, 1.2e-6, 50e-9), p.sim);
    CHECK(r.lower_bound);
    CHECK(r.t1 > 1.2e-6);
}

TEST_CASE("degenerate delay list is rejected") {
    const Profile p = paper();
    CHECK_THROWS_WITH_AS(phonon_t1(p.device, p.sequence, {0.0}, p.sim),
                         doctest::Contains("insufficient points"), FitError);
}

TEST_CASE("ramsey reproduces the coherence time") {
    const Profile p = paper();
    const RamseyResult r = ramsey(p.device, p.sequence, grid(0.0, 1.5e-6, 10e-9), p.sim);
    CHECK(std::abs(r.t2_star - 678e-9) / 678e-9 < 0.10);
}

TEST_CASE("ramsey fringes oscillate at the drive detuning for a bare qubit") {
    Profile p = paper();
    p.device.mech_modes[0].g_pe = 0.0;  // undress the qubit
    const RamseyResult r = ramsey(p.device, p.sequence, grid(0.0, 1.5e-6, 10e-9), p.sim);
    CHECK(std::abs(r.fringe_frequency - 2e6) / 2e6 < 0.01);
}

TEST_CASE("ramsey without dephasing or decay keeps full fringes") {
    Profile p = lossless(paper());
    p.device.mech_modes[0].g_pe = 0.0;
    const auto delays = grid(0.0, 1.5e-6, 10e-9);
    const RamseyResult r = ramsey(p.device, p.sequence, delays, p.sim);
    CHECK(r.t2_star > 10.0 * delays.back());  // no envelope on the scanned window
}

TEST_CASE("transduction occupancy equals the swap population exactly") {
    Profile p = paper();
    p.heating.gamma_p_per_photon = 0.0;  // no heating
    const TransductionTrace trace = transduction_sequence(
        p.device, p.sequence, p.chain, p.heating, p.sequence.pi_time, p.sequence.readout_window, p.sim);
    const SwapResult swap = stark_swap(p.device, p.sequence, p.sequence.swap_hold, p.sim);
    CHECK(trace.occupancy_at_readout == doctest::Approx(swap.n_m_after).epsilon(1e-12));
}

TEST_CASE("without qubit drive the readout sees heating only") {
    const Profile p = paper();
    const TransductionTrace trace = transduction_sequence(
        p.device, p.sequence, p.chain, p.heating, 0.0, p.sequence.readout_window, p.sim);
    CHECK(trace.occupancy_at_readout < 1e-6);
    CHECK(trace.n_m.back() > 0.1);  // absorption heating fills the window
}

TEST_CASE("drive-duration sweep modulates occupancy at the Rabi period") {
    const Profile p = paper();
    const double period = 2.0 * p.sequence.pi_time;
    std::vector<double> durations = grid(0.0, 2.0 * period, 8e-9);
    std::vector<double> occupancy(durations.size());
    for (std::size_t i = 0; i < durations.size(); ++i) {
        occupancy[i] = transduction_sequence(p.device, p.sequence, p.chain, p.heating, durations[i],
                                             p.sequence.readout_window, p.sim)
                           .occupancy_at_readout;
    }
    const HarmonicFit fit = fit_fixed_frequency(durations, occupancy, kTwoPi / period);
    // The fixed-period harmonic explains the curve: residuals are tiny.
    double sse = 0.0;
    for (std::size_t i = 0; i < durations.size(); ++i) {
        const double model = fit.offset + fit.a_cos * std::cos(kTwoPi / period * durations[i]) +
                             fit.a_sin * std::sin(kTwoPi / period * durations[i]);
        sse += (model - occupancy[i]) * (model - occupancy[i]);
    }
    CHECK(std::sqrt(sse / durations.size()) < 1e-6);
    CHECK(2.0 * fit.amplitude() == doctest::Approx(occupancy[8] - occupancy[0]).epsilon(1e-6));
}

TEST_CASE("short repetition period cites the environment model") {
    Profile p = paper();
    p.sequence.repetition_period = 1e-3;  // below the ~8 ms recovery
    const QpModel qp = p.qp;
    const TransductionTrace trace = transduction_sequence(
        p.device, p.sequence, p.chain, p.heating, p.sequence.pi_time, p.sequence.readout_window, p.sim, &qp);
    REQUIRE(!trace.warnings.empty());
    CHECK(trace.warnings.front().find("environment") != std::string::npos);
}
