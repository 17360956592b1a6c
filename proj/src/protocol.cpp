#include "transim/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "transim/integrator.hpp"
#include "transim/parallel.hpp"
#include "transim/relations.hpp"

namespace transim {

void SequenceParams::validate() const {
    if (!(pi_time > 0.0)) throw SchemaError("sequence.pi_time_s", "must be positive");
    if (drive_edge < 0.0) throw SchemaError("sequence.drive_edge_s", "must be non-negative");
    if (stark_rise < 0.0 || stark_fall < 0.0) throw SchemaError("sequence.stark_edge_s", "must be non-negative");
    if (!(readout_window > 0.0)) throw SchemaError("sequence.readout_window_s", "must be positive");
    if (n_c_peak < 0.0) throw SchemaError("sequence.n_c_peak", "must be non-negative");
    if (envelope_factor <= 0.0 || envelope_factor > 1.0) {
        throw SchemaError("sequence.envelope_factor", "must be inside (0, 1]");
    }
    if (eta_ro_calibration < 0.0) throw SchemaError("sequence.eta_ro_calibration", "must be non-negative");
    if (repetition_period < 0.0) throw SchemaError("sequence.repetition_period_s", "must be non-negative");
}

const DampedSinusoidFit& RabiScan::require_fit() const {
    if (!fit) throw FitError("rabi_scan: oscillation contrast below the fit floor");
    return *fit;
}

double RabiScan::pi_time() const {
    const DampedSinusoidFit& f = require_fit();
    return f.first_maximum(1.25 / f.frequency);
}


RabiScan rabi_scan(const DeviceParams& device, const SequenceParams& seq, double omega,
                   const std::vector<double>& durations, const SimOptions& sim) {
    seq.validate();
    RabiScan scan;
    scan.durations = durations;
    scan.p_e.resize(durations.size());

    parallel_for_index(durations.size(), [&](std::size_t i) {
        if (durations[i] <= 0.0) {
            scan.p_e[i] = 0.0;  // no drive applied
            return;
        }
        PulseSequence pulses;
        pulses.append(make_drive_segment(omega, durations[i], 0.0, 0.0, seq.drive_edge));
        const LindbladModel model = build_model(device, pulses, CavityMode::eliminated, sim);
        const DensityMatrix rho0 = product_state(model.ops, 0.0, 0);
        const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
        scan.p_e[i] = expectation(final_state, model.ops.sigma_ee);
    });

    try {
        scan.fit = fit_damped_sinusoid(scan.durations, scan.p_e);
    } catch (const FitError&) {
        scan.fit.reset();
    }
    return scan;
}

SwapResult stark_swap(const DeviceParams& device, const SequenceParams& seq, double hold,
                      const SimOptions& sim) {
    seq.validate();
    SwapResult result;
    if (std::abs(seq.stark_shift) < 4.0 * device.g_pe()) {
        result.warnings.push_back("stark_swap: insufficient detuning contrast, shift below 4 g_pe");
    }
    if (hold <= 0.0) {
        result.p_e_after = 1.0;  // prepared state, no interaction window
        result.n_m_after = 0.0;
        return result;
    }
    PulseSequence pulses;
    pulses.append(make_stark_segment(seq.stark_shift, hold, seq.stark_rise, seq.stark_fall));
    const LindbladModel model = build_model(device, pulses, CavityMode::eliminated, sim);
    const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
    const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
    result.p_e_after = expectation(final_state, model.ops.sigma_ee);
    result.n_m_after = expectation(final_state, model.ops.n_mech);
    return result;
}

VacuumRabiScan vacuum_rabi_scan(const DeviceParams& device, const SequenceParams& seq,
                                const std::vector<double>& holds, const SimOptions& sim) {
    VacuumRabiScan scan;
    scan.holds = holds;
    scan.p_e.resize(holds.size());
    scan.n_m.resize(holds.size());
    parallel_for_index(holds.size(), [&](std::size_t i) {
        const SwapResult point = stark_swap(device, seq, holds[i], sim);
        scan.p_e[i] = point.p_e_after;
        scan.n_m[i] = point.n_m_after;
    });
    try {
        scan.fit = fit_damped_sinusoid(scan.holds, scan.p_e);
    } catch (const FitError&) {
        scan.fit.reset();
    }
    return scan;
}

SwapEfficiency swap_efficiency(const DeviceParams& device, const SequenceParams& seq,
                               const SimOptions& sim) {
    // Bracket the first transfer maximum over half a vacuum-Rabi period
    // around the analytic quarter-period estimate.
    const double quarter = M_PI / (2.0 * device.g_pe());
    std::vector<double> holds;
    for (double h = 0.25 * quarter; h <= 2.0 * quarter; h += 4e-9) holds.push_back(h);

    SwapEfficiency out;
    out.scan = vacuum_rabi_scan(device, seq, holds, sim);

    std::size_t best = 0;
    for (std::size_t i = 1; i < holds.size(); ++i) {
        if (out.scan.n_m[i] > out.scan.n_m[best]) best = i;
    }

    // Golden-section refinement on the simulated occupancy.
    const auto value = [&](double h) { return stark_swap(device, seq, h, sim).n_m_after; };
    double lo = holds[best > 0 ? best - 1 : 0];
    double hi = holds[std::min(best + 1, holds.size() - 1)];
    const double gold = 0.5 * (3.0 - std::sqrt(5.0));
    double x1 = lo + gold * (hi - lo), x2 = hi - gold * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    while (hi - lo > 0.2e-9) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - gold * (hi - lo);
            f2 = value(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + gold * (hi - lo);
            f1 = value(x1);
        }
    }
    out.t_swap = 0.5 * (lo + hi);
    out.eta_swap = value(out.t_swap);
    return out;
}

PhononT1Result phonon_t1(const DeviceParams& device, const SequenceParams& seq,
                         const std::vector<double>& delays, const SimOptions& sim) {
    if (delays.size() < 3) throw FitError("phonon_t1: insufficient points");
    seq.validate();

    PhononT1Result result;
    result.delays = delays;
    result.p_e.resize(delays.size());
    parallel_for_index(delays.size(), [&](std::size_t i) {
        PulseSequence pulses;
        pulses.append(make_stark_segment(seq.stark_shift, seq.swap_hold, seq.stark_rise, seq.stark_fall));
        if (delays[i] > 0.0) pulses.append(make_idle_segment(delays[i]));
        pulses.append(make_stark_segment(seq.stark_shift, seq.swap_hold, seq.stark_rise, seq.stark_fall));
        const LindbladModel model = build_model(device, pulses, CavityMode::eliminated, sim);
        const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
        const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
        result.p_e[i] = expectation(final_state, model.ops.sigma_ee);
    });

    const ExponentialFit fit = fit_exponential(result.delays, result.p_e);
    result.t1 = fit.decay_time;
    result.lower_bound = fit.decay_time > *std::max_element(delays.begin(), delays.end());
    return result;
}

RamseyResult ramsey(const DeviceParams& device, const SequenceParams& seq,
                    const std::vector<double>& delays, const SimOptions& sim) {
    seq.validate();
    const double omega = seq.rabi_omega();
    const double half_pi = 0.5 * seq.pi_time;

    RamseyResult result;
    result.delays = delays;
    result.p_e.resize(delays.size());
    parallel_for_index(delays.size(), [&](std::size_t i) {
        PulseSequence pulses;
        pulses.append(make_drive_segment(omega, half_pi, seq.ramsey_detuning, 0.0, seq.drive_edge));
        if (delays[i] > 0.0) pulses.append(make_idle_segment(delays[i]));
        pulses.append(make_drive_segment(omega, half_pi, seq.ramsey_detuning, 0.0, seq.drive_edge));
        const LindbladModel model = build_model(device, pulses, CavityMode::eliminated, sim);
        const DensityMatrix rho0 = product_state(model.ops, 0.0, 0);
        const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
        result.p_e[i] = expectation(final_state, model.ops.sigma_ee);
    });

    const DampedSinusoidFit fit = fit_damped_sinusoid(result.delays, result.p_e);
    result.t2_star = fit.decay_time;
    result.fringe_frequency = fit.frequency;
    return result;
}

namespace {

// Shared readout-window computation: effective pump envelope, back-action,
// heated occupancy, and the detected sideband fluxes.
TransductionTrace compute_readout(const DeviceParams& device, const SequenceParams& seq,
                                  const DetectionChain& chain, const HeatingModel& heating, double tau_ro,
                                  double n0) {
    const MechMode& mech = device.transduction_mode();
    const double kappa_o = device.optical.kappa_o();
    const double kappa_m = mech.kappa_t1();
    const double n_f = device.n_fridge();
    const double eta_chain = device.optical.eta_kappa() * chain.eta_sys();

    TransductionTrace trace;
    const PulseSegment segment =
        make_readout_segment(seq.n_c_peak, tau_ro, seq.readout_rise, seq.readout_fall);
    const auto& readout = std::get<OpticalReadout>(segment.kind);

    const std::size_t points = 385;
    trace.t = linspace(0.0, tau_ro, points);
    trace.n_c_eff.resize(points);
    trace.gamma_om.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        trace.n_c_eff[i] =
            seq.envelope_factor * readout_envelope(readout, segment.duration, trace.t[i]);
        trace.gamma_om[i] = backaction_rate(trace.n_c_eff[i], mech.g_om, kappa_o);
    }

    const auto n_c_of_t = [&](double t) {
        return seq.envelope_factor *
               readout_envelope(readout, segment.duration, std::clamp(t, 0.0, tau_ro));
    };
    const auto gamma_of_t = [&](double t) {
        return backaction_rate(n_c_of_t(t), mech.g_om, kappa_o);
    };

    trace.n_m = heated_occupancy(heating, n_c_of_t, trace.t, kappa_m, gamma_of_t, n0, n_f);

    // Per-phonon detected efficiency: response of the red integral to a unit
    // initial occupancy with the heating source switched off.
    HeatingModel no_source = heating;
    no_source.gamma_p_per_photon = heating.gamma_p_per_photon;  // damping kept, source removed via n_p
    no_source.n_p = 0.0;
    const std::vector<double> unit_response =
        heated_occupancy(no_source, n_c_of_t, trace.t, kappa_m, gamma_of_t, 1.0, 0.0);
    double eta_raw = 0.0;
    for (std::size_t i = 1; i < points; ++i) {
        const double dt = trace.t[i] - trace.t[i - 1];
        eta_raw += 0.5 * dt *
                   (trace.gamma_om[i - 1] * unit_response[i - 1] + trace.gamma_om[i] * unit_response[i]);
    }
    eta_raw *= eta_chain;

    trace.calibration_scale =
        (seq.eta_ro_calibration > 0.0 && eta_raw > 0.0) ? seq.eta_ro_calibration / eta_raw : 1.0;
    trace.eta_ro_detected = eta_raw * trace.calibration_scale;

    trace.red_flux.window = tau_ro;
    trace.blue_flux.window = tau_ro;
    trace.red_flux.rate.resize(points);
    trace.blue_flux.rate.resize(points);
    const double scale = trace.calibration_scale * eta_chain;
    for (std::size_t i = 0; i < points; ++i) {
        const double per_phonon = scale * trace.gamma_om[i];
        trace.red_flux.rate[i] = chain.dark_rate + per_phonon * trace.n_m[i];
        trace.blue_flux.rate[i] = chain.dark_rate + per_phonon * (trace.n_m[i] + 1.0);
    }
    trace.occupancy_at_readout = n0;
    return trace;
}

}  // namespace

TransductionTrace transduction_sequence(const DeviceParams& device, const SequenceParams& seq,
                                        const DetectionChain& chain, const HeatingModel& heating,
                                        double qubit_drive, double tau_ro, const SimOptions& sim,
                                        const QpModel* qp) {
    seq.validate();
    chain.validate();

    // Stage (i): calibrated drive as an ideal rotation of the qubit.
    const double angle = seq.rabi_omega() * qubit_drive;
    const double p_excited = std::pow(std::sin(0.5 * angle), 2);

    // Stage (ii): master-equation swap from the prepared state.
    double n0 = 0.0;
    if (seq.swap_hold > 0.0) {
        PulseSequence pulses;
        pulses.append(make_stark_segment(seq.stark_shift, seq.swap_hold, seq.stark_rise, seq.stark_fall));
        const LindbladModel model = build_model(device, pulses, CavityMode::eliminated, sim);
        const DensityMatrix rho0 = product_state(model.ops, p_excited, 0);
        const DensityMatrix final_state = evolve_to(model, rho0, model.duration, sim);
        n0 = expectation(final_state, model.ops.n_mech);
    }

    // Stage (iii): red-sideband readout with absorption heating.
    TransductionTrace trace = compute_readout(device, seq, chain, heating, tau_ro, n0);

    if (qp != nullptr && seq.repetition_period > 0.0) {
        const double recovery = qp_recovery_time(*qp);
        if (seq.repetition_period < recovery) {
            trace.warnings.push_back(
                "transduction_sequence: repetition period " + std::to_string(seq.repetition_period * 1e3) +
                " ms is below the quasi-particle recovery time " + std::to_string(recovery * 1e3) +
                " ms from the environment model");
        }
    }
    return trace;
}

TransductionTrace vacuum_readout(const DeviceParams& device, const SequenceParams& seq,
                                 const DetectionChain& chain, const HeatingModel& heating, double tau_ro,
                                 double initial_occupancy) {
    seq.validate();
    chain.validate();
    const double n0 = initial_occupancy >= 0.0 ? initial_occupancy : device.n_fridge();
    return compute_readout(device, seq, chain, heating, tau_ro, n0);
}

}  // namespace transim
