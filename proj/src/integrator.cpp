#include "transim/integrator.hpp"

#include <cmath>
#include <sstream>

namespace transim {

namespace {
constexpr Complex kI{0.0, 1.0};

std::string time_context(double t) {
    std::ostringstream msg;
    msg << "t = " << t * 1e9 << " ns";
    return msg.str();
}
}  // namespace

LiouvillianEvaluator::LiouvillianEvaluator(const LindbladModel& model)
    : model_(model),
      h_(Matrix::Zero(model.ops.dim, model.ops.dim)),
      tmp_(Matrix::Zero(model.ops.dim, model.ops.dim)),
      jump_(Matrix::Zero(model.ops.dim, model.ops.dim)) {}

void LiouvillianEvaluator::apply(double t, const Matrix& rho, Matrix& out) {
    model_.hamiltonian_at(t, h_);
    tmp_.noalias() = h_ * rho;
    tmp_.noalias() -= rho * h_;
    out = -kI * tmp_;
    for (const auto& channel : model_.channels) {
        const double rate = channel.rate_at(t);
        if (rate == 0.0) continue;
        jump_.noalias() = channel.op * rho;
        tmp_.noalias() = jump_ * channel.op.adjoint();
        out.noalias() += rate * tmp_;
        tmp_.noalias() = channel.op_dag_op * rho;
        tmp_.noalias() += rho * channel.op_dag_op;
        out.noalias() -= (0.5 * rate) * tmp_;
    }
}

std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid, const SimOptions& options) {
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("evolve: time grid must be strictly increasing");
        }
    }
    if (rho0.rho.rows() != model.ops.dim) {
        throw std::invalid_argument("evolve: initial state dimension mismatch");
    }
    if (!(options.max_dt > 0.0)) throw std::invalid_argument("evolve: max_dt must be positive");

    LiouvillianEvaluator liouvillian(model);
    const Eigen::Index dim = model.ops.dim;
    Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);

    DensityMatrix state = rho0;
    state.check_invariants(options.tolerances, time_context(t_grid.front()));

    std::vector<DensityMatrix> trajectory;
    trajectory.reserve(t_grid.size());
    trajectory.push_back(state);

    long steps_since_check = 0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const long steps = std::max(1L, static_cast<long>(std::ceil(span / options.max_dt - 1e-12)));
        const double dt = span / steps;
        double t = t_grid[i - 1];
        for (long s = 0; s < steps; ++s) {
            liouvillian.apply(t, state.rho, k1);
            stage = state.rho + (0.5 * dt) * k1;
            liouvillian.apply(t + 0.5 * dt, stage, k2);
            stage = state.rho + (0.5 * dt) * k2;
            liouvillian.apply(t + 0.5 * dt, stage, k3);
            stage = state.rho + dt * k3;
            liouvillian.apply(t + dt, stage, k4);
            state.rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = t_grid[i - 1] + (s + 1) * dt;
            if (++steps_since_check >= options.check_every) {
                state.check_invariants(options.tolerances, time_context(t));
                steps_since_check = 0;
            }
        }
        state.check_invariants(options.tolerances, time_context(t_grid[i]));
        steps_since_check = 0;
        trajectory.push_back(state);
    }
    return trajectory;
}

DensityMatrix evolve_to(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                        const SimOptions& options) {
    if (t_final <= 0.0) {
        DensityMatrix state = rho0;
        state.check_invariants(options.tolerances, time_context(0.0));
        return state;
    }
    return evolve(model, rho0, {0.0, t_final}, options).back();
}

std::vector<double> linspace(double t0, double t1, std::size_t points) {
    if (points < 2) throw std::invalid_argument("linspace: need at least two points");
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

}  // namespace transim
