// fit.hpp — Deterministic least-squares fits used by the calibration layer.
//
// All fits are unweighted with initial guesses taken from discrete features
// of the data (extrema, crossings, endpoint levels), so repeated runs give
// identical results. Reported variances propagate caller-supplied per-point
// variances through the linear solve.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "transim/common.hpp"
#include "transim/units.hpp"

namespace transim {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// y = offset + a_cos cos(w t) + a_sin sin(w t) at fixed angular frequency w.
struct HarmonicFit {
    double offset = 0.0;
    double a_cos = 0.0;
    double a_sin = 0.0;
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // (offset, a_cos, a_sin)

    double amplitude() const { return std::hypot(a_cos, a_sin); }
    double phase() const { return std::atan2(-a_sin, a_cos); }
    double offset_variance = 0.0;
    double amplitude_variance() const;
    double minimum() const { return offset - amplitude(); }
    double maximum() const { return offset + amplitude(); }
    double extremum_variance() const;  // variance of offset -/+ amplitude
};
HarmonicFit fit_fixed_frequency(const std::vector<double>& ts, const std::vector<double>& ys, double omega,
                                const std::vector<double>* variances = nullptr);

// y = offset + (baseline + amplitude cos(2 pi frequency t + phase)) e^{-t/decay_time}.
// The decaying baseline captures population curves whose centerline relaxes
// along with the oscillation; pure-envelope data fits with baseline ~ 0.
struct DampedSinusoidFit {
    double offset = 0.0;
    double baseline = 0.0;
    double amplitude = 0.0;
    double frequency = 0.0;  // ordinary frequency, 1/[t]
    double phase = 0.0;      // rad
    double decay_time = 0.0; // same unit as t
    double rms_residual = 0.0;

    double value(double t) const {
        return offset + (baseline + amplitude * std::cos(kTwoPi * frequency * t + phase)) *
                            std::exp(-t / decay_time);
    }
    // First maximum of the fitted model in [0, t_max]; numeric argmax with
    // parabolic refinement.
    double first_maximum(double t_max) const;
};
DampedSinusoidFit fit_damped_sinusoid(const std::vector<double>& ts, const std::vector<double>& ys,
                                      double min_contrast = 0.05);

// y = offset + amplitude * exp(-t / decay_time)
struct ExponentialFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double decay_time = 0.0;
    double rms_residual = 0.0;
};
ExponentialFit fit_exponential(const std::vector<double>& ts, const std::vector<double>& ys);

// Generic Levenberg-Marquardt on a residual functor r(params, i) with
// numeric Jacobian; used by the nonlinear fits above and available to tests.
using ResidualFn = std::function<double(const Eigen::VectorXd&, std::size_t)>;
Eigen::VectorXd levenberg_marquardt(const ResidualFn& residual, std::size_t n_residuals,
                                    Eigen::VectorXd initial, int max_iterations = 300);

}  // namespace transim
