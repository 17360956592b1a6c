// pulse.hpp — Pulse segments, sequences, and their envelope shapes.
//
// Duration conventions: microwave drives are quoted as FWHM, so the
// envelope area equals peak * duration exactly for cosine edges and
// pulse-area calibration (pi-time = pi / Omega) is an identity. Stark and
// readout pulses are quoted as full pulse length, matching how the
// interaction time and counting window are programmed.

#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "transim/common.hpp"

namespace transim {

// Resonant or detuned microwave drive on the qubit. `detuning` is relative
// to the parked qubit frequency; `phase` is the carrier phase at global
// t = 0 so phase coherence across segments is automatic.
struct MicrowaveDrive {
    double omega = 0.0;     // rad/s Rabi rate at the plateau
    double detuning = 0.0;  // rad/s
    double phase = 0.0;     // rad
    double edge = 2e-9;     // s, cosine edge length
};

// Programmed qubit-frequency offset with raised-cosine edges.
struct StarkShift {
    double delta = 0.0;  // rad/s
    double rise = 15e-9;  // s
    double fall = 15e-9;  // s
};

// Red-sideband optical readout pulse; n_c(t) is a linear trapezoid.
struct OpticalReadout {
    double n_c_peak = 0.0;  // intracavity photons at the plateau
    double rise = 20e-9;    // s
    double fall = 20e-9;    // s
};

struct Idle {};

struct PulseSegment {
    std::variant<MicrowaveDrive, StarkShift, OpticalReadout, Idle> kind;
    double duration = 0.0;  // s, wall-clock span of the segment

    void validate() const;
};

struct PulseSequence {
    std::vector<PulseSegment> segments;
    double repetition_period = 0.0;  // s, 1/R; 0 means single shot

    double total_duration() const;
    double segment_start(std::size_t index) const;
    void validate() const;

    PulseSequence& append(PulseSegment segment) {
        segments.push_back(std::move(segment));
        return *this;
    }
};

// Segment builders. Pulses shorter than their nominal edges shrink the
// edges to fit.
PulseSegment make_drive_segment(double omega, double fwhm, double detuning, double phase = 0.0,
                                double edge = 2e-9);
PulseSegment make_stark_segment(double delta, double hold, double rise = 15e-9, double fall = 15e-9);
PulseSegment make_readout_segment(double n_c_peak, double window, double rise = 20e-9, double fall = 20e-9);
PulseSegment make_idle_segment(double duration);

// Envelope samplers; t_local runs over [0, duration].
double drive_envelope(const MicrowaveDrive& seg, double duration, double t_local);
double stark_envelope(const StarkShift& seg, double duration, double t_local);
double readout_envelope(const OpticalReadout& seg, double duration, double t_local);

}  // namespace transim
