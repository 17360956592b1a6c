// protocol.hpp — Measurement protocols built on the master equation: Rabi
// calibration, the AC-Stark-driven qubit-mechanics swap, double-swap phonon
// lifetime, Ramsey, and the full transduction sequence.
//
// Scans parallelize across the swept variable over a shared immutable
// device description; each point evolves independently.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transim/analytics.hpp"
#include "transim/counting.hpp"
#include "transim/device.hpp"
#include "transim/environment.hpp"
#include "transim/fit.hpp"
#include "transim/lindblad.hpp"
#include "transim/pulse.hpp"

namespace transim {

// Protocol-level knobs shared by the sequences; loaded from sequence.toml.
struct SequenceParams {
    double pi_time = 32e-9;          // s, calibrated pi-pulse FWHM
    double drive_edge = 2e-9;        // s
    double stark_shift = rad_from_hz(10e6);  // rad/s, programmed qubit shift
    double stark_rise = 15e-9;       // s
    double stark_fall = 15e-9;       // s
    double swap_hold = 104e-9;       // s, full length of the swap pulse
    double readout_window = 38e-9;   // s, photon counting window
    double readout_rise = 20e-9;     // s, optical modulator edge
    double readout_fall = 20e-9;     // s
    double n_c_peak = 44.0;          // intracavity photons at the plateau
    double envelope_factor = 1.0;    // detection-effective pump scaling
    double eta_ro_calibration = 0.0; // target detected per-phonon efficiency; 0 = off
    double repetition_period = 10e-3;  // s
    double ramsey_detuning = rad_from_hz(2e6);  // rad/s

    double rabi_omega() const { return M_PI / pi_time; }
    void validate() const;
};

struct RabiScan {
    std::vector<double> durations;  // s (FWHM)
    std::vector<double> p_e;
    std::optional<DampedSinusoidFit> fit;  // absent below the contrast floor

    // Throw FitError when the scan had no usable contrast.
    const DampedSinusoidFit& require_fit() const;
    double pi_time() const;  // s, first maximum of the fitted oscillation
    double period() const { return 1.0 / require_fit().frequency; }
};

// Qubit Rabi oscillations at the parked frequency via dispersive-style
// probability readout of the final state.
RabiScan rabi_scan(const DeviceParams& device, const SequenceParams& seq, double omega,
                   const std::vector<double>& durations, const SimOptions& sim = {});

struct SwapResult {
    double p_e_after = 0.0;
    double n_m_after = 0.0;
    std::vector<std::string> warnings;
};

// Excite the qubit (ideal pi preparation), Stark-shift it onto the
// mechanical resonance with a pulse of length `hold`, and report the
// populations when the shift ends.
SwapResult stark_swap(const DeviceParams& device, const SequenceParams& seq, double hold,
                      const SimOptions& sim = {});

struct VacuumRabiScan {
    std::vector<double> holds;  // s
    std::vector<double> p_e;
    std::vector<double> n_m;
    std::optional<DampedSinusoidFit> fit;  // on p_e
};
VacuumRabiScan vacuum_rabi_scan(const DeviceParams& device, const SequenceParams& seq,
                                const std::vector<double>& holds, const SimOptions& sim = {});

struct SwapEfficiency {
    double eta_swap = 0.0;   // phonon occupancy right after the optimal swap
    double t_swap = 0.0;     // s, optimal hold
    VacuumRabiScan scan;     // coarse scan used to bracket the optimum
};

// Locate the optimal swap hold by scanning and refining, then report the
// transferred occupancy there.
SwapEfficiency swap_efficiency(const DeviceParams& device, const SequenceParams& seq,
                               const SimOptions& sim = {});

struct PhononT1Result {
    std::vector<double> delays;
    std::vector<double> p_e;
    double t1 = 0.0;            // s, fitted decay time
    bool lower_bound = false;   // fitted time exceeded the scanned span
};

// Swap, wait, swap back; exponential fit of the recovered qubit population.
PhononT1Result phonon_t1(const DeviceParams& device, const SequenceParams& seq,
                         const std::vector<double>& delays, const SimOptions& sim = {});

struct RamseyResult {
    std::vector<double> delays;
    std::vector<double> p_e;
    double t2_star = 0.0;      // s, fitted envelope decay
    double fringe_frequency = 0.0;  // Hz
};

// Two pi/2 pulses separated by a variable delay, drive detuned from the
// parked qubit so the fringes oscillate at the detuning.
RamseyResult ramsey(const DeviceParams& device, const SequenceParams& seq,
                    const std::vector<double>& delays, const SimOptions& sim = {});

struct TransductionTrace {
    double occupancy_at_readout = 0.0;  // phonons entering the window
    double eta_ro_detected = 0.0;       // per-phonon detected efficiency over the window
    double calibration_scale = 1.0;     // chain rescaling applied to hit the target
    std::vector<double> t;              // s, window grid (local time)
    std::vector<double> n_c_eff;        // effective intracavity photons
    std::vector<double> gamma_om;       // rad/s over the window
    std::vector<double> n_m;            // occupancy trajectory over the window
    FluxSeries red_flux;                // detected red-sideband rate
    FluxSeries blue_flux;               // detected blue-sideband rate
    std::vector<std::string> warnings;
};

// Full transduction sequence: qubit drive of duration `qubit_drive` (ideal
// rotation calibrated to seq.pi_time), Stark swap at seq.swap_hold, then the
// red-sideband readout window of length tau_ro with absorption heating.
TransductionTrace transduction_sequence(const DeviceParams& device, const SequenceParams& seq,
                                        const DetectionChain& chain, const HeatingModel& heating,
                                        double qubit_drive, double tau_ro, const SimOptions& sim = {},
                                        const QpModel* qp = nullptr);

// Vacuum-calibration variant: no qubit drive, occupancy starts at the
// fridge value; used by the heating/thermometry figures.
TransductionTrace vacuum_readout(const DeviceParams& device, const SequenceParams& seq,
                                 const DetectionChain& chain, const HeatingModel& heating, double tau_ro,
                                 double initial_occupancy = -1.0);

}  // namespace transim
