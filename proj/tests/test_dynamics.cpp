#include "doctest.h"

#include <cmath>

#include "transim/config.hpp"
#include "transim/integrator.hpp"
#include "transim/units.hpp"

using namespace transim;

namespace {

Profile paper() { return load_profile("paper_device"); }

Profile decoupled(Profile p) {
    p.device.mech_modes[0].g_pe = 0.0;
    return p;
}

Profile lossless(Profile p) {
    p.device.qubit.t1 = 1.0;
    p.device.qubit.t2_star = 1.9;
    p.device.mech_modes[0].t1 = 1.0;
    return p;
}

}  // namespace

TEST_CASE("free qubit decay reaches 1/e at T1") {
    const Profile p = decoupled(paper());
    PulseSequence pulses;
    pulses.append(make_idle_segment(p.device.qubit.t1));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
    const DensityMatrix final_state = evolve_to(model, rho0, p.device.qubit.t1, p.sim);
    CHECK(expectation(final_state, model.ops.sigma_ee) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-3 / std::exp(-1.0)));
}

TEST_CASE("decoupled phonon thermalizes toward the bath") {
    const Profile p = decoupled(paper());
    const double t1_m = p.device.mech_modes[0].t1;
    PulseSequence pulses;
    pulses.append(make_idle_segment(t1_m));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(model.ops, 0.0, 1);
    const DensityMatrix final_state = evolve_to(model, rho0, t1_m, p.sim);
    const double n_f = p.device.n_fridge();
    const double expected = std::exp(-1.0) * (1.0 - n_f) + n_f;
    CHECK(expectation(final_state, model.ops.n_mech) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("lossless vacuum Rabi revival at the analytic period") {
    Profile p = lossless(paper());
    p.device.qubit.park_offset = 0.0;  // resonant qubit-phonon block
    PulseSequence pulses;
    const double period = M_PI / p.device.g_pe();  // population revival
    pulses.append(make_idle_segment(1.1 * period));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
    CHECK(period == doctest::Approx(223.2e-9).epsilon(1e-3));
    const DensityMatrix at_period = evolve_to(model, rho0, period, p.sim);
    CHECK(expectation(at_period, model.ops.sigma_ee) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("trace, Hermiticity, and positivity hold along a driven sequence") {
    const Profile p = paper();
    PulseSequence pulses;
    pulses.append(make_drive_segment(p.sequence.rabi_omega(), p.sequence.pi_time, 0.0));
    pulses.append(make_stark_segment(p.sequence.stark_shift, p.sequence.swap_hold));
    pulses.append(make_idle_segment(100e-9));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(model.ops, 0.0, 0);
    const auto grid = linspace(0.0, model.duration, 33);
    const auto traj = evolve(model, rho0, grid, p.sim);  // checks run internally every step
    for (const auto& state : traj) {
        CHECK(state.trace_error() < 1e-8);
        state.check_invariants();
    }
}

TEST_CASE("step halving leaves observables unchanged at 1e-4") {
    const Profile p = paper();
    PulseSequence pulses;
    pulses.append(make_stark_segment(p.sequence.stark_shift, p.sequence.swap_hold));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);

    SimOptions coarse = p.sim;
    SimOptions fine = p.sim;
    fine.max_dt = 0.5 * coarse.max_dt;
    const double n_coarse =
        expectation(evolve_to(model, rho0, model.duration, coarse), model.ops.n_mech);
    const double n_fine = expectation(evolve_to(model, rho0, model.duration, fine), model.ops.n_mech);
    CHECK(std::abs(n_coarse - n_fine) < 1e-4);
}

TEST_CASE("excitation is conserved without dissipation") {
    Profile p = lossless(paper());
    p.device.qubit.park_offset = 0.0;
    PulseSequence pulses;
    pulses.append(make_idle_segment(400e-9));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    const Matrix total = model.ops.sigma_ee + model.ops.n_mech;
    const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
    const auto grid = linspace(0.0, 400e-9, 21);
    const auto traj = evolve(model, rho0, grid, p.sim);
    for (const auto& state : traj) {
        CHECK(std::abs(expectation(state, total) - 1.0) < 1e-8);
    }
}

TEST_CASE("detailed balance relaxes any phonon state to the bath occupancy") {
    Profile p = decoupled(paper());
    // Hot bath making the steady state clearly nonzero.
    p.device.t_fridge = bath_temperature_for_occupancy(p.device.mech_modes[0].omega, 0.5);
    SimOptions sim = p.sim;
    sim.n_m_levels = 12;  // roomy truncation for nbar = 0.5
    PulseSequence pulses;
    pulses.append(make_idle_segment(12.0 * p.device.mech_modes[0].t1));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, sim);
    for (int fock : {0, 3}) {
        const DensityMatrix rho0 = product_state(model.ops, 0.0, fock);
        const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
        CHECK(expectation(final_state, model.ops.n_mech) == doctest::Approx(0.5).epsilon(2e-3));
    }
}

TEST_CASE("expectation rejects dimension mismatches and non-Hermitian garbage") {
    const OperatorSet ops = build_operators(4);
    const DensityMatrix rho = ground_state(ops);
    const OperatorSet bigger = build_operators(6);
    CHECK_THROWS_AS(expectation(rho, bigger.n_mech), std::invalid_argument);
}

TEST_CASE("integration error names the invariant and the time") {
    const Profile p = paper();
    PulseSequence pulses;
    pulses.append(make_idle_segment(200e-9));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    // A state with broken trace must be rejected before stepping.
    DensityMatrix bad = product_state(model.ops, 1.0, 0);
    bad.rho *= 1.5;
    try {
        evolve_to(model, bad, 100e-9, p.sim);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        const std::string what = e.what();
        CHECK(what.find("trace") != std::string::npos);
        CHECK(what.find("t = ") != std::string::npos);
    }
}

TEST_CASE("zero-power readout model matches the no-readout model") {
    const Profile p = paper();
    PulseSequence with_dark_readout;
    with_dark_readout.append(make_readout_segment(0.0, 100e-9));
    PulseSequence idle_only;
    idle_only.append(make_idle_segment(with_dark_readout.total_duration()));

    const LindbladModel a = build_model(p.device, with_dark_readout, CavityMode::eliminated, p.sim);
    const LindbladModel b = build_model(p.device, idle_only, CavityMode::eliminated, p.sim);
    const DensityMatrix rho0 = product_state(a.ops, 1.0, 1);
    const DensityMatrix fa = evolve_to(a, rho0, a.duration, p.sim);
    const DensityMatrix fb = evolve_to(b, rho0, b.duration, p.sim);
    CHECK((fa.rho - fb.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("swap segment realizes the resonant exchange block") {
    const Profile p = paper();
    PulseSequence pulses;
    pulses.append(make_stark_segment(p.sequence.stark_shift, 104e-9));
    const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
    // At the plateau the qubit detuning cancels and the exchange element is
    // g_pe = 2 pi x 2.24 MHz.
    Matrix h(model.ops.dim, model.ops.dim);
    model.hamiltonian_at(52e-9, h);
    const DensityMatrix eg = product_state(model.ops, 1.0, 0);   // |e,0>
    const DensityMatrix ge = product_state(model.ops, 0.0, 1);   // |g,1>
    Eigen::Index i_e0 = -1, i_g1 = -1;
    for (Eigen::Index k = 0; k < model.ops.dim; ++k) {
        if (std::abs(eg.rho(k, k).real() - 1.0) < 1e-12) i_e0 = k;
        if (std::abs(ge.rho(k, k).real() - 1.0) < 1e-12) i_g1 = k;
    }
    REQUIRE(i_e0 >= 0);
    REQUIRE(i_g1 >= 0);
    CHECK(std::abs(h(i_e0, i_g1)) == doctest::Approx(p.device.g_pe()).epsilon(1e-9));
    CHECK(std::abs(h(i_e0, i_e0)) < 1e-3 * std::abs(p.sequence.stark_shift));
}

TEST_CASE("adiabatic elimination rejects strong-coupling pump") {
    Profile p = paper();
    // Narrow cavity: kappa_o/2pi = 1 MHz while staying resolved-sideband.
    p.device.optical.kappa_i = rad_from_hz(0.5e6);
    p.device.optical.kappa_e = rad_from_hz(0.5e6);
    PulseSequence pulses;
    pulses.append(make_readout_segment(44.0, 38e-9));
    CHECK_THROWS_AS(build_model(p.device, pulses, CavityMode::eliminated, p.sim), ValidityError);
}

TEST_CASE("truncation doubling does not move swap observables") {
    const Profile p = paper();
    SimOptions coarse = p.sim;  // 4 levels
    SimOptions fine = p.sim;
    fine.n_m_levels = 8;
    PulseSequence pulses;
    pulses.append(make_stark_segment(p.sequence.stark_shift, p.sequence.swap_hold));
    const LindbladModel small = build_model(p.device, pulses, CavityMode::eliminated, coarse);
    const LindbladModel big = build_model(p.device, pulses, CavityMode::eliminated, fine);
    const double n_small = expectation(
        evolve_to(small, product_state(small.ops, 1.0, 0), small.duration, coarse), small.ops.n_mech);
    const double n_big = expectation(
        evolve_to(big, product_state(big.ops, 1.0, 0), big.duration, fine), big.ops.n_mech);
    CHECK(std::abs(n_small - n_big) < 1e-6);
}
