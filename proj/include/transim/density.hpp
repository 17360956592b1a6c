// density.hpp — Density matrices on the composite space and their invariants.

#pragma once

#include <Eigen/Dense>

#include "transim/operators.hpp"

namespace transim {

struct InvariantTolerances {
    double trace = 1e-8;
    double hermiticity = 1e-10;
    double min_eigenvalue = -1e-8;
};

struct DensityMatrix {
    int n_m = 0;
    int n_o = 0;
    Matrix rho;

    Eigen::Index dim() const { return rho.rows(); }
    double trace_error() const { return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()); }

    // Throws IntegrationError naming the violated invariant. `context` is
    // prepended to the message (typically "t = ... ns").
    void check_invariants(const InvariantTolerances& tol = {}, const std::string& context = {}) const;
};

// Product-state constructors. The qubit argument is the excited-state
// population of a classical mixture diag(1-p, p).
DensityMatrix ground_state(const OperatorSet& ops);
DensityMatrix qubit_excited(const OperatorSet& ops);
DensityMatrix product_state(const OperatorSet& ops, double p_excited, int phonon_fock, int photon_fock = 0);

// Qubit ground, phonon in the truncated thermal state of mean nbar
// (geometric weights renormalized over the kept levels).
DensityMatrix thermal_phonon_state(const OperatorSet& ops, double nbar);

// Mean phonon number of the truncated thermal state; serves as the oracle
// for thermal-state expectation tests.
double truncated_thermal_occupancy(int levels, double nbar);

// tr(rho O) for Hermitian O; throws on dimension mismatch or when the
// imaginary part exceeds 1e-9.
double expectation(const DensityMatrix& state, const Matrix& observable);

}  // namespace transim
