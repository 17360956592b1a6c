#include "transim/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace transim {

namespace {

// Smooth 0 -> 1 cosine ramp.
double cosine_step(double x) { return 0.5 * (1.0 - std::cos(M_PI * std::clamp(x, 0.0, 1.0))); }

// Unit-height plateau with cosine edges, sampled at t in [0, duration].
double cosine_edged_plateau(double duration, double rise, double fall, double t) {
    if (t <= 0.0 || t >= duration) return 0.0;
    if (rise > 0.0 && t < rise) return cosine_step(t / rise);
    if (fall > 0.0 && t > duration - fall) return cosine_step((duration - t) / fall);
    return 1.0;
}

// Unit-height plateau with linear edges.
double linear_edged_plateau(double duration, double rise, double fall, double t) {
    if (t <= 0.0 || t >= duration) return 0.0;
    if (rise > 0.0 && t < rise) return t / rise;
    if (fall > 0.0 && t > duration - fall) return (duration - t) / fall;
    return 1.0;
}

struct SegmentChecker {
    double duration;
    void operator()(const MicrowaveDrive& s) const {
        if (s.omega < 0.0) throw SchemaError("segment.omega", "drive amplitude must be non-negative");
        if (s.edge < 0.0 || 2.0 * s.edge > duration + 1e-15) {
            throw SchemaError("segment.edge", "rise + fall exceeds segment duration");
        }
    }
    void operator()(const StarkShift& s) const {
        if (s.rise < 0.0 || s.fall < 0.0 || s.rise + s.fall > duration + 1e-15) {
            throw SchemaError("segment.rise", "rise + fall exceeds segment duration");
        }
    }
    void operator()(const OpticalReadout& s) const {
        if (s.n_c_peak < 0.0) throw SchemaError("segment.n_c_peak", "photon number must be non-negative");
        if (s.rise < 0.0 || s.fall < 0.0 || s.rise + s.fall > duration + 1e-15) {
            throw SchemaError("segment.rise", "rise + fall exceeds segment duration");
        }
    }
    void operator()(const Idle&) const {}
};

}  // namespace

void PulseSegment::validate() const {
    if (!(duration > 0.0)) throw SchemaError("segment.duration", "duration must be positive");
    std::visit(SegmentChecker{duration}, kind);
}

double PulseSequence::total_duration() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration;
    return total;
}

double PulseSequence::segment_start(std::size_t index) const {
    double start = 0.0;
    for (std::size_t i = 0; i < index; ++i) start += segments[i].duration;
    return start;
}

void PulseSequence::validate() const {
    for (const auto& seg : segments) seg.validate();
    if (repetition_period != 0.0 && repetition_period < total_duration()) {
        throw SchemaError("sequence.repetition_period", "repetition period shorter than the sequence");
    }
}

PulseSegment make_drive_segment(double omega, double fwhm, double detuning, double phase, double edge) {
    MicrowaveDrive drive;
    drive.omega = omega;
    drive.detuning = detuning;
    drive.phase = phase;
    drive.edge = std::min(edge, fwhm);
    return PulseSegment{drive, fwhm + drive.edge};
}

PulseSegment make_stark_segment(double delta, double hold, double rise, double fall) {
    StarkShift shift;
    shift.delta = delta;
    // `hold` is the full pulse length; short pulses shrink the edges to fit.
    const double edges = rise + fall;
    const double scale = edges > 0.0 ? std::min(1.0, hold / edges) : 1.0;
    shift.rise = rise * scale;
    shift.fall = fall * scale;
    return PulseSegment{shift, hold};
}

PulseSegment make_readout_segment(double n_c_peak, double window, double rise, double fall) {
    OpticalReadout ro;
    ro.n_c_peak = n_c_peak;
    ro.rise = rise;
    ro.fall = fall;
    // The counting window opens at the optical turn-on, so the pulse rise
    // sits inside the window; the fall comes after the window closes.
    return PulseSegment{ro, std::max(window, rise) + fall};
}

PulseSegment make_idle_segment(double duration) { return PulseSegment{Idle{}, duration}; }

double drive_envelope(const MicrowaveDrive& seg, double duration, double t_local) {
    return seg.omega * cosine_edged_plateau(duration, seg.edge, seg.edge, t_local);
}

double stark_envelope(const StarkShift& seg, double duration, double t_local) {
    return seg.delta * cosine_edged_plateau(duration, seg.rise, seg.fall, t_local);
}

double readout_envelope(const OpticalReadout& seg, double duration, double t_local) {
    return seg.n_c_peak * linear_edged_plateau(duration, seg.rise, seg.fall, t_local);
}

}  // namespace transim
