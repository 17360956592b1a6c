// integrator.hpp — Fixed-step RK4 evolution of the master equation.
//
// Classical 4th-order Runge-Kutta on d(rho)/dt = L(t) rho with a fixed step
// chosen per grid interval (never above SimOptions::max_dt). Adaptive
// stepping is deliberately absent: runs must be bit-reproducible.

#pragma once

#include <vector>

#include "transim/lindblad.hpp"

namespace transim {

// Evaluate L(t) rho into `out`. Workspaces avoid per-call allocation.
class LiouvillianEvaluator {
public:
    explicit LiouvillianEvaluator(const LindbladModel& model);
    void apply(double t, const Matrix& rho, Matrix& out);

private:
    const LindbladModel& model_;
    Matrix h_, tmp_, jump_;
};

// Evolve rho0 over t_grid (strictly increasing, t_grid[0] is the initial
// time) and return the state at every grid point. State invariants are
// checked every `check_every` internal steps and on every grid point;
// violations raise IntegrationError naming the invariant and time.
std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid, const SimOptions& options = {});

// Convenience: evolve to a single final time and return the final state.
DensityMatrix evolve_to(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                        const SimOptions& options = {});

// Uniform grid helper, endpoints included.
std::vector<double> linspace(double t0, double t1, std::size_t points);

}  // namespace transim
