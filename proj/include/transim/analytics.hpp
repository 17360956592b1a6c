// analytics.hpp — Closed-form spectroscopy and calibration layer.
//
// Sideband scattering rates, readout efficiency, sideband-asymmetry
// thermometry, avoided-crossing spectra, the thermal noise power spectral
// density, and the linewidth-versus-power coupling extraction.

#pragma once

#include <vector>

#include "transim/counting.hpp"
#include "transim/device.hpp"

namespace transim {

// Optical detection chain. eta_sys is the measured system efficiency when
// available (eta_sys_measured > 0), otherwise the product of the factors.
struct DetectionChain {
    double eta_coupler = 1.0;       // fiber-to-device, one way
    double eta_transmission = 1.0;  // filter bank and plumbing
    double eta_spd = 1.0;           // detector quantum efficiency
    double eta_sys_measured = 0.0;  // 0 means "derive from the factors"
    double dark_rate = 0.0;         // counts/s

    double eta_sys() const {
        return eta_sys_measured > 0.0 ? eta_sys_measured : eta_coupler * eta_transmission * eta_spd;
    }
    void validate() const;
};

enum class Sideband { red, blue };

// Detected scattering rate (counts/s) for a pump on the chosen sideband:
//   Gamma = Gamma_dark + eta_kappa eta_sys (4 g_om^2 n_c / kappa_o) (n_m + {0 red | 1 blue}).
double scattering_rate(Sideband sideband, double n_m, double n_c, const DeviceParams& params,
                       const DetectionChain& chain);

// Same rate over a sampled pump envelope; returns a FluxSeries over the
// window. n_m may be a constant or a sampled trajectory of matching length.
FluxSeries scattering_flux(Sideband sideband, const std::vector<double>& n_m, const std::vector<double>& n_c,
                           double window, const DeviceParams& params, const DetectionChain& chain);

// Intrinsic phonon-to-photon readout efficiency after integrating for
// tau_ro: (gamma_om / (gamma_om + kappa_m)) (1 - exp(-(gamma_om+kappa_m) tau)).
// Multiply by eta_kappa eta_sys for the detected efficiency.
double readout_efficiency(double tau_ro, double gamma_om, double kappa_m_t1);

struct ThermometryResult {
    ValueWithCi p_d;      // per-trial blue-red difference after dark subtraction
    ValueWithCi n_m;      // occupancy from the normalized red rate
};

// Sideband-asymmetry estimators from matched red/blue counting records.
// Dark counts are subtracted before the ratio; a non-positive asymmetry is
// an estimator error, never silently clipped.
ThermometryResult sideband_asymmetry(const CountRecord& red, const CountRecord& blue, double dark_rate,
                                     double z = 1.0);

// Eigen-branch frequencies (Hz) of the qubit coupled to all mechanical
// modes, one row per flux point; branches sorted ascending.
struct AvoidedCrossing {
    std::vector<double> flux_ratio;
    std::vector<double> f_qubit_hz;              // bare qubit frequency per point
    std::vector<std::vector<double>> branches_hz;
};
AvoidedCrossing avoided_crossing(const DeviceParams& params, const std::vector<double>& flux_grid);

// Fit g_om from mechanical linewidths versus pump photon number,
// kappa_m(n_c) = kappa_i + 4 n_c g_om^2 / kappa_o. Rates angular.
double linewidth_vs_power(const std::vector<double>& n_c_grid, const std::vector<double>& kappa_m_grid,
                          double kappa_o);

// Synthetic linewidth data for the fit above (test/CLI helper); optional
// multiplicative noise with a deterministic seed.
std::vector<double> synthetic_linewidths(const std::vector<double>& n_c_grid, double kappa_i, double g_om,
                                         double kappa_o, double noise_fraction = 0.0, std::uint64_t seed = 0);

// Thermal noise power spectral density: one Lorentzian per mode with width
// kappa_i + gamma_om(n_c) and area proportional to g_om^2 * occupancy.
struct NpsdPoint {
    double omega = 0.0;  // rad/s
    double value = 0.0;  // 1/(rad/s), sum of unit-area Lorentzians x weights
};
std::vector<NpsdPoint> thermal_npsd(const DeviceParams& params, const std::vector<double>& omega_grid,
                                    double n_c);

}  // namespace transim
