// operators.hpp — Dense operators on the truncated qubit x phonon (x photon)
// space.
//
// Subsystem order in tensor products is fixed: qubit (2) first, phonon
// (n_m levels) second, photon (n_o levels, optional) last. Matrices are
// dense; the composite dimension stays at a few hundred at most.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "transim/common.hpp"

namespace transim {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

Matrix kron(const Matrix& a, const Matrix& b);

// Annihilator on an n-level truncated oscillator.
Matrix truncated_annihilator(int levels);

struct OperatorSet {
    int n_qubit = 2;
    int n_m = 0;  // phonon levels
    int n_o = 0;  // photon levels; 0 means the optical mode is eliminated
    Eigen::Index dim = 0;

    Matrix identity;
    Matrix sigma_ge;  // |g><e| embedded
    Matrix sigma_eg;  // |e><g| embedded
    Matrix sigma_ee;  // qubit excited-state projector
    Matrix b;         // phonon annihilator
    Matrix b_dag;
    Matrix n_mech;    // b^dag b
    Matrix a;         // photon annihilator (empty when n_o == 0)
    Matrix a_dag;
    Matrix n_opt;

    bool has_optical() const { return n_o > 0; }
};

// Build the embedded operator set. Throws ResourceError when the composite
// dimension exceeds dim_ceiling.
OperatorSet build_operators(int n_m_levels, int n_o_levels = 0, int dim_ceiling = 512);

}  // namespace transim
