// relations.hpp — Closed-form single-number relations of the device.

#pragma once

#include <cmath>
#include <stdexcept>

#include "transim/common.hpp"
#include "transim/units.hpp"

namespace transim {

// Transmon transition frequency in the asymptotic limit,
//   f_q = sqrt(8 E_J E_c |cos(pi * flux_ratio)|) - E_c,
// with both energies given as ordinary frequencies (E/h, Hz). flux_ratio is
// the SQUID flux in units of the flux quantum.
inline double transmon_frequency(double e_j_hz, double e_c_hz, double flux_ratio) {
    if (e_j_hz <= 0.0 || e_c_hz <= 0.0) {
        throw std::domain_error("transmon_frequency: E_J and E_c must be positive");
    }
    const double cos_term = std::abs(std::cos(M_PI * flux_ratio));
    const double f_q = std::sqrt(8.0 * e_j_hz * e_c_hz * cos_term) - e_c_hz;
    if (f_q <= 0.0) {
        throw std::domain_error("transmon_frequency: qubit frequency collapsed near half flux quantum");
    }
    return f_q;
}

// Optomechanical back-action damping, gamma_om = 4 n_c g_om^2 / kappa_o.
// Angular rates in, angular rate out. Resolved-sideband validity is the
// caller's responsibility.
inline double backaction_rate(double n_c, double g_om, double kappa_o) {
    if (n_c < 0.0 || g_om < 0.0) {
        throw std::domain_error("backaction_rate: inputs must be non-negative");
    }
    if (kappa_o <= 0.0) {
        throw std::domain_error("backaction_rate: kappa_o must be positive");
    }
    return 4.0 * n_c * g_om * g_om / kappa_o;
}

// Pump-enhanced optomechanical cooperativity against a mechanical rate
// kappa_m (use kappa_i for the spectroscopic value, 1/T1 for energy decay).
inline double cooperativity(double n_c, double g_om, double kappa_o, double kappa_m) {
    if (kappa_m <= 0.0) {
        throw std::domain_error("cooperativity: kappa_m must be positive");
    }
    return backaction_rate(n_c, g_om, kappa_o) / kappa_m;
}

// AC-Stark shift of a two-level transition under a drive with Rabi rate
// omega_d detuned by delta_d: both levels shift by omega_d^2/(4 delta_d) in
// opposite directions. Angular rates throughout.
inline double stark_shift_from_drive(double omega_d, double delta_d) {
    if (delta_d == 0.0) {
        throw std::domain_error("stark_shift_from_drive: drive detuning must be nonzero");
    }
    return omega_d * omega_d / (2.0 * delta_d);
}

// Drive amplitude realizing a wanted Stark shift at a given detuning.
inline double stark_drive_amplitude(double shift, double delta_d) {
    const double sq = 2.0 * delta_d * shift;
    if (sq < 0.0) {
        throw std::domain_error("stark_drive_amplitude: shift and detuning must share a sign");
    }
    return std::sqrt(sq);
}

}  // namespace transim
