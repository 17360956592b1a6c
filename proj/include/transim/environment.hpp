// environment.hpp — Optical-absorption heating of the mechanical mode and
// light-induced quasi-particle recovery of the qubit.
//
// Both are phenomenological single-rate models calibrated against their
// measured anchors. The heating bath obeys
//   dn/dt = -(kappa_m + gamma_om(t) + gamma_p(t)) n
//           + kappa_m n_f + gamma_p(t) n_p,
// with gamma_p(t) proportional to the instantaneous intracavity photon
// number; QP suppression is a single-exponential density decay mapped onto
// Rabi contrast through the measurement window.

#pragma once

#include <functional>
#include <vector>

#include "transim/common.hpp"

namespace transim {

struct HeatingModel {
    double gamma_p_per_photon = 0.0;  // 1/s of hot-bath coupling per intracavity photon
    double n_p = 0.0;                 // hot-bath occupancy
    double onset_delay = 0.0;         // s before absorption heating engages

    void validate() const;
    double gamma_p(double n_c) const { return gamma_p_per_photon * n_c; }
};

// Integrate the heating rate equation across t_grid for a pump envelope
// n_c(t). n0 is the occupancy entering the window (swap output or the
// fridge value), n_f the cold-bath occupancy.
std::vector<double> heated_occupancy(const HeatingModel& model, const std::function<double(double)>& n_c,
                                     const std::vector<double>& t_grid, double kappa_m_t1,
                                     const std::function<double(double)>& gamma_om, double n0 = 0.0,
                                     double n_f = 0.0);

// Steady state under constant drive; closed-form oracle for the ODE.
double heating_steady_state(const HeatingModel& model, double n_c, double kappa_m_t1, double gamma_om,
                            double n_f = 0.0);

// Calibrate gamma_p_per_photon so the rate-weighted mean occupancy over a
// constant-pump window of length tau equals `target` (the quantity the
// sideband-asymmetry thermometer reports). Secant iteration, deterministic.
double calibrate_heating_rate(double target, double tau, double n_c, double n_p, double kappa_m_t1,
                              double gamma_om, double n_f = 0.0, double onset_delay = 0.0);

// Rate-weighted mean of an occupancy trajectory: integral of w(t) n(t) over
// integral of w(t); this is what the thermometry estimator measures.
double weighted_mean_occupancy(const std::vector<double>& t_grid, const std::vector<double>& occupancy,
                               const std::function<double(double)>& weight);

struct QpModel {
    double tau_qp = 0.0;               // s, quasi-particle recombination lifetime
    double injection_exponent = 0.0;   // contrast suppression exponent right after the pulse
    double recovery_threshold = 0.95;  // fraction of asymptotic contrast
    double rabi_period = 150e-9;       // s, stored for the contrast map definition

    void validate() const;
    // Rabi contrast at a given delay after the optical pulse, relative to
    // the fully recovered value.
    double contrast(double delay) const;
};

// Contrast-versus-delay curve.
std::vector<double> qp_recovery(const QpModel& model, const std::vector<double>& delays);

// First delay at which the contrast crosses the recovery threshold
// (closed-form inversion of the exponential model).
double qp_recovery_time(const QpModel& model);

struct RepetitionBudget {
    double max_rate = 0.0;       // Hz permitted by recovery + sequence length
    double recovery_time = 0.0;  // s
    bool qp_limited = false;
};

// Maximum repetition rate given the QP recovery and the sequence span.
// With no optical pulse in the sequence the budget is sequence-limited.
RepetitionBudget repetition_budget(double sequence_duration, bool has_optical_pulse, const QpModel& model);

}  // namespace transim
