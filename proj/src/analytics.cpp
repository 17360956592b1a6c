#include "transim/analytics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "transim/fit.hpp"
#include "transim/relations.hpp"
#include "transim/rng.hpp"

namespace transim {

void DetectionChain::validate() const {
    const auto check_unit = [](double v, const char* name) {
        if (v < 0.0 || v > 1.0) throw SchemaError(std::string("chain.") + name, "efficiency outside [0, 1]");
    };
    check_unit(eta_coupler, "eta_coupler");
    check_unit(eta_transmission, "eta_transmission");
    check_unit(eta_spd, "eta_spd");
    if (eta_sys_measured < 0.0 || eta_sys_measured > 1.0) {
        throw SchemaError("chain.eta_sys_measured", "efficiency outside [0, 1]");
    }
    const double min_factor = std::min({eta_coupler, eta_transmission, eta_spd});
    if (eta_sys() > min_factor + 1e-12) {
        throw SchemaError("chain.eta_sys_measured", "system efficiency exceeds its smallest factor");
    }
    if (dark_rate < 0.0) throw SchemaError("chain.dark_rate", "dark rate must be non-negative");
}

double scattering_rate(Sideband sideband, double n_m, double n_c, const DeviceParams& params,
                       const DetectionChain& chain) {
    if (n_m < 0.0 || n_c < 0.0) {
        throw std::domain_error("scattering_rate: occupancies must be non-negative");
    }
    const MechMode& mech = params.transduction_mode();
    const double gamma = backaction_rate(n_c, mech.g_om, params.optical.kappa_o());
    const double vacuum = sideband == Sideband::blue ? 1.0 : 0.0;
    return chain.dark_rate + params.optical.eta_kappa() * chain.eta_sys() * gamma * (n_m + vacuum);
}

FluxSeries scattering_flux(Sideband sideband, const std::vector<double>& n_m, const std::vector<double>& n_c,
                           double window, const DeviceParams& params, const DetectionChain& chain) {
    if (n_c.size() < 2) throw std::invalid_argument("scattering_flux: need at least two envelope samples");
    if (n_m.size() != 1 && n_m.size() != n_c.size()) {
        throw std::invalid_argument("scattering_flux: occupancy length must be 1 or match the envelope");
    }
    FluxSeries flux;
    flux.window = window;
    flux.rate.resize(n_c.size());
    for (std::size_t i = 0; i < n_c.size(); ++i) {
        const double occupancy = n_m.size() == 1 ? n_m.front() : n_m[i];
        flux.rate[i] = scattering_rate(sideband, occupancy, n_c[i], params, chain);
    }
    return flux;
}

double readout_efficiency(double tau_ro, double gamma_om, double kappa_m_t1) {
    if (tau_ro < 0.0 || gamma_om < 0.0 || kappa_m_t1 < 0.0) {
        throw std::domain_error("readout_efficiency: arguments must be non-negative");
    }
    const double total = gamma_om + kappa_m_t1;
    if (total == 0.0) return 0.0;  // by continuity
    return (gamma_om / total) * (-std::expm1(-total * tau_ro));
}

ThermometryResult sideband_asymmetry(const CountRecord& red, const CountRecord& blue, double dark_rate,
                                     double z) {
    if (red.window != blue.window || red.trials != blue.trials) {
        throw EstimatorError("sideband_asymmetry: records need identical windows and trial counts");
    }
    const double n = static_cast<double>(red.trials);
    const double dark_per_trial = dark_rate * red.window;

    const double red_sig = red.rate() - dark_per_trial;
    const double blue_sig = blue.rate() - dark_per_trial;
    const double diff = blue_sig - red_sig;
    if (diff <= 0.0) {
        throw EstimatorError("sideband_asymmetry: non-physical asymmetry, blue rate does not exceed red");
    }

    // Poisson errors on the raw totals; dark subtraction shifts, not scales.
    const double var_red = static_cast<double>(red.detected) / (n * n);
    const double var_blue = static_cast<double>(blue.detected) / (n * n);
    const double var_diff = var_red + var_blue;

    ThermometryResult result;
    result.p_d.value = diff;
    const double s_diff = z * std::sqrt(var_diff);
    result.p_d.ci = Interval{diff - s_diff, diff + s_diff};

    const double n_m = red_sig / diff;
    // d(n)/d(red_sig) and d(n)/d(blue_sig) with diff = blue - red.
    const double d_red = (diff + red_sig) / (diff * diff);
    const double d_blue = -red_sig / (diff * diff);
    const double s_n = z * std::sqrt(d_red * d_red * var_red + d_blue * d_blue * var_blue);
    result.n_m.value = n_m;
    result.n_m.ci = Interval{n_m - s_n, n_m + s_n};
    return result;
}

AvoidedCrossing avoided_crossing(const DeviceParams& params, const std::vector<double>& flux_grid) {
    const std::size_t n_modes = params.mech_modes.size();
    AvoidedCrossing out;
    out.flux_ratio = flux_grid;
    out.f_qubit_hz.reserve(flux_grid.size());
    out.branches_hz.reserve(flux_grid.size());

    Eigen::MatrixXd coupled(n_modes + 1, n_modes + 1);
    for (double flux : flux_grid) {
        const double f_q = transmon_frequency(params.qubit.e_j_hz, params.qubit.e_c_hz, flux);
        coupled.setZero();
        coupled(0, 0) = f_q;
        for (std::size_t m = 0; m < n_modes; ++m) {
            coupled(m + 1, m + 1) = hz_from_rad(params.mech_modes[m].omega);
            coupled(0, m + 1) = coupled(m + 1, 0) = hz_from_rad(params.mech_modes[m].g_pe);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(coupled, Eigen::EigenvaluesOnly);
        std::vector<double> branches(solver.eigenvalues().data(),
                                     solver.eigenvalues().data() + n_modes + 1);
        out.f_qubit_hz.push_back(f_q);
        out.branches_hz.push_back(std::move(branches));
    }
    return out;
}

double linewidth_vs_power(const std::vector<double>& n_c_grid, const std::vector<double>& kappa_m_grid,
                          double kappa_o) {
    const LineFit line = fit_line(n_c_grid, kappa_m_grid);
    if (line.slope <= 0.0) return 0.0;  // no measurable back-action broadening
    return std::sqrt(line.slope * kappa_o / 4.0);
}

std::vector<double> synthetic_linewidths(const std::vector<double>& n_c_grid, double kappa_i, double g_om,
                                         double kappa_o, double noise_fraction, std::uint64_t seed) {
    std::vector<double> widths(n_c_grid.size());
    for (std::size_t i = 0; i < n_c_grid.size(); ++i) {
        double w = kappa_i + backaction_rate(n_c_grid[i], g_om, kappa_o);
        if (noise_fraction > 0.0) {
            const auto words = trial_block(seed, 0, i);
            const double u = uniform_from_words(words[0], words[1]);
            w *= 1.0 + noise_fraction * (2.0 * u - 1.0);
        }
        widths[i] = w;
    }
    return widths;
}

std::vector<NpsdPoint> thermal_npsd(const DeviceParams& params, const std::vector<double>& omega_grid,
                                    double n_c) {
    std::vector<NpsdPoint> spectrum(omega_grid.size());
    const double kappa_o = params.optical.kappa_o();
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid[i];
        double value = 0.0;
        for (const MechMode& mode : params.mech_modes) {
            const double width = mode.kappa_i + backaction_rate(n_c, mode.g_om, kappa_o);
            const double half = 0.5 * width;
            const double detune = w - mode.omega;
            const double lorentzian = half / (M_PI * (detune * detune + half * half));
            value += mode.g_om * mode.g_om * mode.occupancy * lorentzian;
        }
        spectrum[i] = NpsdPoint{w, value};
    }
    return spectrum;
}

}  // namespace transim
