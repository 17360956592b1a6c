#include "transim/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace transim {

void HeatingModel::validate() const {
    if (gamma_p_per_photon < 0.0) throw SchemaError("heating.gamma_p_per_photon_hz", "must be non-negative");
    if (n_p < 0.0) throw SchemaError("heating.n_p", "must be non-negative");
    if (onset_delay < 0.0) throw SchemaError("heating.onset_delay_s", "must be non-negative");
}

std::vector<double> heated_occupancy(const HeatingModel& model, const std::function<double(double)>& n_c,
                                     const std::vector<double>& t_grid, double kappa_m_t1,
                                     const std::function<double(double)>& gamma_om, double n0, double n_f) {
    model.validate();
    if (t_grid.size() < 2) throw std::invalid_argument("heated_occupancy: need at least two grid points");

    const auto derivative = [&](double t, double n) {
        const double pump = t >= model.onset_delay ? n_c(t) : 0.0;
        if (!std::isfinite(pump)) throw ValidityError("heated_occupancy: pump envelope not finite");
        const double g_p = model.gamma_p(pump);
        const double g_om = gamma_om ? gamma_om(t) : 0.0;
        return -(kappa_m_t1 + g_om + g_p) * n + kappa_m_t1 * n_f + g_p * model.n_p;
    };

    std::vector<double> out(t_grid.size());
    double n = n0;
    out[0] = n;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        if (!(span > 0.0)) throw std::invalid_argument("heated_occupancy: grid must be increasing");
        const long steps = std::max(1L, static_cast<long>(std::ceil(span / 0.1e-9)));
        const double dt = span / steps;
        double t = t_grid[i - 1];
        for (long s = 0; s < steps; ++s) {
            const double k1 = derivative(t, n);
            const double k2 = derivative(t + 0.5 * dt, n + 0.5 * dt * k1);
            const double k3 = derivative(t + 0.5 * dt, n + 0.5 * dt * k2);
            const double k4 = derivative(t + dt, n + dt * k3);
            n += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        out[i] = std::max(n, 0.0);
    }
    return out;
}

double heating_steady_state(const HeatingModel& model, double n_c, double kappa_m_t1, double gamma_om,
                            double n_f) {
    const double g_p = model.gamma_p(n_c);
    const double denom = kappa_m_t1 + gamma_om + g_p;
    if (denom == 0.0) return n_f;
    return (kappa_m_t1 * n_f + g_p * model.n_p) / denom;
}

double weighted_mean_occupancy(const std::vector<double>& t_grid, const std::vector<double>& occupancy,
                               const std::function<double(double)>& weight) {
    if (t_grid.size() != occupancy.size() || t_grid.size() < 2) {
        throw std::invalid_argument("weighted_mean_occupancy: grid/trajectory mismatch");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double dt = t_grid[i] - t_grid[i - 1];
        const double w0 = weight ? weight(t_grid[i - 1]) : 1.0;
        const double w1 = weight ? weight(t_grid[i]) : 1.0;
        num += 0.5 * dt * (w0 * occupancy[i - 1] + w1 * occupancy[i]);
        den += 0.5 * dt * (w0 + w1);
    }
    if (den == 0.0) throw EstimatorError("weighted_mean_occupancy: zero total weight");
    return num / den;
}

double calibrate_heating_rate(double target, double tau, double n_c, double n_p, double kappa_m_t1,
                              double gamma_om, double n_f, double onset_delay) {
    if (target <= n_f) throw std::invalid_argument("calibrate_heating_rate: target below the cold bath");

    const std::vector<double> grid = [&] {
        std::vector<double> g(385);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = tau * static_cast<double>(i) / (g.size() - 1);
        return g;
    }();
    const auto pump = [n_c](double) { return n_c; };
    const auto damping = [gamma_om](double) { return gamma_om; };

    const auto measured = [&](double rate) {
        HeatingModel model{rate, n_p, onset_delay};
        const auto traj = heated_occupancy(model, pump, grid, kappa_m_t1, damping, n_f, n_f);
        return weighted_mean_occupancy(grid, traj, damping) - target;
    };

    // Secant iteration from a linear-growth estimate of the rate.
    double r0 = 2.0 * target / (n_p * tau * n_c);
    double r1 = 1.5 * r0;
    double f0 = measured(r0), f1 = measured(r1);
    for (int iter = 0; iter < 60 && std::abs(f1) > 1e-12 * target; ++iter) {
        const double step = f1 * (r1 - r0) / (f1 - f0);
        r0 = r1;
        f0 = f1;
        r1 = std::max(r1 - step, 1e-12);
        f1 = measured(r1);
    }
    return r1;
}

void QpModel::validate() const {
    if (!(tau_qp > 0.0)) throw SchemaError("qp.tau_s", "QP lifetime must be positive");
    if (injection_exponent < 0.0) throw SchemaError("qp.injection_exponent", "must be non-negative");
    if (recovery_threshold <= 0.0 || recovery_threshold >= 1.0) {
        throw SchemaError("qp.recovery_threshold", "threshold must be inside (0, 1)");
    }
    if (!(rabi_period > 0.0)) throw SchemaError("qp.rabi_period_s", "must be positive");
}

double QpModel::contrast(double delay) const {
    // Excess QP density decays exponentially; the Rabi-contrast suppression
    // is the surviving coherent amplitude over the measurement window.
    return std::exp(-injection_exponent * std::exp(-delay / tau_qp));
}

std::vector<double> qp_recovery(const QpModel& model, const std::vector<double>& delays) {
    model.validate();
    std::vector<double> out(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) out[i] = model.contrast(delays[i]);
    return out;
}

double qp_recovery_time(const QpModel& model) {
    model.validate();
    if (model.injection_exponent == 0.0) return 0.0;
    const double log_margin = -std::log(model.recovery_threshold);
    if (model.injection_exponent <= log_margin) return 0.0;  // never suppressed below threshold
    return model.tau_qp * std::log(model.injection_exponent / log_margin);
}

RepetitionBudget repetition_budget(double sequence_duration, bool has_optical_pulse, const QpModel& model) {
    RepetitionBudget budget;
    budget.recovery_time = has_optical_pulse ? qp_recovery_time(model) : 0.0;
    budget.qp_limited = budget.recovery_time > sequence_duration;
    const double period = sequence_duration + budget.recovery_time;
    budget.max_rate = period > 0.0 ? 1.0 / period : 0.0;
    return budget;
}

}  // namespace transim
