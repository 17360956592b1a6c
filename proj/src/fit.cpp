#include "transim/fit.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace transim {

namespace {

void require_matching(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t min_points,
                      const char* who) {
    if (xs.size() != ys.size()) throw FitError(std::string(who) + ": x and y differ in length");
    if (xs.size() < min_points) {
        throw FitError(std::string(who) + ": insufficient points (" + std::to_string(xs.size()) + " < " +
                       std::to_string(min_points) + ")");
    }
}

double data_span(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

}  // namespace

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    require_matching(xs, ys, 2, "fit_line");
    const double n = static_cast<double>(xs.size());
    const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
    const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw FitError("fit_line: degenerate abscissa");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

double HarmonicFit::amplitude_variance() const {
    const double r = amplitude();
    if (r == 0.0) return std::max(covariance(1, 1), covariance(2, 2));
    const double gc = a_cos / r, gs = a_sin / r;
    return gc * gc * covariance(1, 1) + gs * gs * covariance(2, 2) + 2.0 * gc * gs * covariance(1, 2);
}

double HarmonicFit::extremum_variance() const {
    const double r = amplitude();
    Eigen::Vector3d grad;
    if (r == 0.0) {
        grad << 1.0, 1.0, 0.0;
    } else {
        grad << 1.0, a_cos / r, a_sin / r;
    }
    return grad.transpose() * covariance * grad;
}

HarmonicFit fit_fixed_frequency(const std::vector<double>& ts, const std::vector<double>& ys, double omega,
                                const std::vector<double>* variances) {
    require_matching(ts, ys, 3, "fit_fixed_frequency");
    const std::size_t n = ts.size();
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(omega * ts[i]);
        design(i, 2) = std::sin(omega * ts[i]);
        rhs(i) = ys[i];
    }
    const Eigen::Matrix3d normal = design.transpose() * design;
    const Eigen::Matrix3d normal_inv = normal.inverse();
    const Eigen::Vector3d params = normal_inv * (design.transpose() * rhs);

    HarmonicFit fit;
    fit.offset = params(0);
    fit.a_cos = params(1);
    fit.a_sin = params(2);

    Eigen::VectorXd sigma2(n);
    if (variances) {
        if (variances->size() != n) throw FitError("fit_fixed_frequency: variance vector length mismatch");
        for (std::size_t i = 0; i < n; ++i) sigma2(i) = (*variances)[i];
    } else {
        const Eigen::VectorXd residual = rhs - design * params;
        const double dof = static_cast<double>(n > 3 ? n - 3 : 1);
        sigma2.setConstant(residual.squaredNorm() / dof);
    }
    fit.covariance = normal_inv * (design.transpose() * sigma2.asDiagonal() * design) * normal_inv;
    fit.offset_variance = fit.covariance(0, 0);
    return fit;
}

Eigen::VectorXd levenberg_marquardt(const ResidualFn& residual, std::size_t n_residuals,
                                    Eigen::VectorXd params, int max_iterations) {
    const std::size_t n_params = static_cast<std::size_t>(params.size());
    auto sse = [&](const Eigen::VectorXd& p) {
        double total = 0.0;
        for (std::size_t i = 0; i < n_residuals; ++i) {
            const double r = residual(p, i);
            total += r * r;
        }
        return total;
    };

    double lambda = 1e-3;
    double current = sse(params);
    Eigen::MatrixXd jac(n_residuals, n_params);
    Eigen::VectorXd res(n_residuals);

    for (int iter = 0; iter < max_iterations; ++iter) {
        for (std::size_t i = 0; i < n_residuals; ++i) res(i) = residual(params, i);
        for (std::size_t j = 0; j < n_params; ++j) {
            const double step = 1e-7 * std::max(1.0, std::abs(params(j)));
            Eigen::VectorXd fwd = params, bwd = params;
            fwd(j) += step;
            bwd(j) -= step;
            for (std::size_t i = 0; i < n_residuals; ++i) {
                jac(i, j) = (residual(fwd, i) - residual(bwd, i)) / (2.0 * step);
            }
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * res;

        bool improved = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Eigen::VectorXd delta = damped.ldlt().solve(jtr);
            const Eigen::VectorXd trial = params - delta;
            const double trial_sse = sse(trial);
            if (trial_sse < current) {
                const double gain = (current - trial_sse) / std::max(current, 1e-300);
                params = trial;
                current = trial_sse;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                if (gain < 1e-14) return params;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
    return params;
}

double DampedSinusoidFit::first_maximum(double t_max) const {
    const std::size_t steps = 4096;
    double best_t = 0.0, best_v = value(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(steps);
        const double v = value(t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    // Parabolic refinement around the discrete peak.
    const double h = t_max / static_cast<double>(steps);
    const double vm = value(best_t - h), v0 = value(best_t), vp = value(best_t + h);
    const double denom = vm - 2.0 * v0 + vp;
    if (denom < 0.0) best_t += 0.5 * h * (vm - vp) / denom;
    return best_t;
}

DampedSinusoidFit fit_damped_sinusoid(const std::vector<double>& ts, const std::vector<double>& ys,
                                      double min_contrast) {
    require_matching(ts, ys, 6, "fit_damped_sinusoid");
    const double contrast = data_span(ys);
    if (contrast < min_contrast) {
        throw FitError("fit_damped_sinusoid: contrast " + std::to_string(contrast) + " below " +
                       std::to_string(min_contrast));
    }

    const double mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    const double span_t = ts.back() - ts.front();

    // Frequency seed from mean-crossing count; ties resolve to the lowest
    // frequency consistent with the crossings.
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if ((ys[i - 1] - mean) * (ys[i] - mean) < 0.0) ++crossings;
    }
    if (crossings < 2) throw FitError("fit_damped_sinusoid: fewer than two mean crossings");
    const double f0 = static_cast<double>(crossings) / (2.0 * span_t);

    // Decay seed from the contrast ratio of the two halves.
    const std::size_t half = ys.size() / 2;
    const double c1 = data_span(std::vector<double>(ys.begin(), ys.begin() + half));
    const double c2 = data_span(std::vector<double>(ys.begin() + half, ys.end()));
    double tau0 = 2.0 * span_t;
    if (c1 > 0.0 && c2 > 0.0 && c2 < c1) tau0 = 0.5 * span_t / std::log(c1 / c2);

    // Tail mean seeds the non-decaying offset; the rest of the centerline
    // decays with the oscillation.
    const std::size_t tail = std::max<std::size_t>(3, ys.size() / 8);
    const double offset0 =
        std::accumulate(ys.end() - static_cast<long>(tail), ys.end(), 0.0) / static_cast<double>(tail);
    const double baseline0 = mean - offset0;

    const double a0 = 0.5 * contrast;
    const double cos_arg = std::clamp((ys.front() - mean) / a0, -1.0, 1.0);
    const double phi0 = std::acos(cos_arg) * (ys.size() > 1 && ys[1] > ys[0] ? -1.0 : 1.0);

    Eigen::VectorXd p(6);
    p << offset0, baseline0, a0, f0, phi0, tau0;
    const auto residual = [&](const Eigen::VectorXd& q, std::size_t i) {
        const double decay = std::exp(-ts[i] / std::max(q(5), 1e-12 * span_t));
        return q(0) + (q(1) + q(2) * std::cos(kTwoPi * q(3) * ts[i] + q(4))) * decay - ys[i];
    };
    p = levenberg_marquardt(residual, ts.size(), p);

    DampedSinusoidFit fit;
    fit.offset = p(0);
    fit.baseline = p(1);
    fit.amplitude = p(2);
    fit.frequency = std::abs(p(3));
    fit.phase = p(4);
    fit.decay_time = p(5);
    if (fit.amplitude < 0.0) {  // canonical form: positive amplitude
        fit.amplitude = -fit.amplitude;
        fit.phase += M_PI;
    }
    fit.phase = std::remainder(fit.phase, kTwoPi);
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = fit.value(ts[i]) - ys[i];
        sse += r * r;
    }
    fit.rms_residual = std::sqrt(sse / static_cast<double>(ts.size()));
    return fit;
}

ExponentialFit fit_exponential(const std::vector<double>& ts, const std::vector<double>& ys) {
    require_matching(ts, ys, 3, "fit_exponential");
    const double span_t = ts.back() - ts.front();
    if (span_t <= 0.0) throw FitError("fit_exponential: degenerate time axis");

    const double c0 = ys.back();
    const double a0 = ys.front() - c0;
    if (std::abs(a0) == 0.0) throw FitError("fit_exponential: no decaying component");

    // Seed tau from the log-linear slope of |y - c0| where it is resolvable.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double d = (ys[i] - c0) / a0;
        if (d > 1e-6) {
            lx.push_back(ts[i]);
            ly.push_back(std::log(d));
        }
    }
    double tau0 = span_t;
    if (lx.size() >= 2) {
        const LineFit line = fit_line(lx, ly);
        if (line.slope < 0.0) tau0 = -1.0 / line.slope;
    }

    Eigen::VectorXd p(3);
    p << c0, a0, tau0;
    const auto residual = [&](const Eigen::VectorXd& q, std::size_t i) {
        return q(0) + q(1) * std::exp(-ts[i] / std::max(q(2), 1e-12 * span_t)) - ys[i];
    };
    p = levenberg_marquardt(residual, ts.size(), p);

    ExponentialFit fit;
    fit.offset = p(0);
    fit.amplitude = p(1);
    fit.decay_time = p(2);
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = fit.offset + fit.amplitude * std::exp(-ts[i] / fit.decay_time) - ys[i];
        sse += r * r;
    }
    fit.rms_residual = std::sqrt(sse / static_cast<double>(ts.size()));
    return fit;
}

}  // namespace transim
