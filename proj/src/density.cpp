#include "transim/density.hpp"

#include <cmath>
#include <sstream>

namespace transim {

void DensityMatrix::check_invariants(const InvariantTolerances& tol, const std::string& context) const {
    const auto fail = [&](const std::string& what, double value) {
        std::ostringstream msg;
        msg << "density matrix invariant violated";
        if (!context.empty()) msg << " at " << context;
        msg << ": " << what << " (" << value << ")";
        throw IntegrationError(msg.str());
    };

    const double trace_dev = trace_error();
    if (!(trace_dev < tol.trace)) fail("trace deviates from 1", trace_dev);

    const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm_dev < tol.hermiticity)) fail("not Hermitian", herm_dev);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (!(min_eig >= tol.min_eigenvalue)) fail("negative eigenvalue", min_eig);
}

namespace {

DensityMatrix from_diagonal_qubit(const OperatorSet& ops, double p_excited, const Eigen::VectorXd& phonon_diag,
                                  int photon_fock) {
    Matrix rho_q = Matrix::Zero(2, 2);
    rho_q(0, 0) = 1.0 - p_excited;
    rho_q(1, 1) = p_excited;

    Matrix rho_m = Matrix::Zero(ops.n_m, ops.n_m);
    for (int n = 0; n < ops.n_m; ++n) rho_m(n, n) = phonon_diag(n);

    Matrix rho = kron(rho_q, rho_m);
    if (ops.has_optical()) {
        Matrix rho_o = Matrix::Zero(ops.n_o, ops.n_o);
        rho_o(photon_fock, photon_fock) = 1.0;
        rho = kron(rho, rho_o);
    }
    return DensityMatrix{ops.n_m, ops.n_o, std::move(rho)};
}

}  // namespace

DensityMatrix ground_state(const OperatorSet& ops) { return product_state(ops, 0.0, 0); }

DensityMatrix qubit_excited(const OperatorSet& ops) { return product_state(ops, 1.0, 0); }

DensityMatrix product_state(const OperatorSet& ops, double p_excited, int phonon_fock, int photon_fock) {
    if (p_excited < 0.0 || p_excited > 1.0) {
        throw std::invalid_argument("product_state: excited population outside [0, 1]");
    }
    if (phonon_fock < 0 || phonon_fock >= ops.n_m) {
        throw std::invalid_argument("product_state: phonon Fock index outside truncation");
    }
    if (ops.has_optical() && (photon_fock < 0 || photon_fock >= ops.n_o)) {
        throw std::invalid_argument("product_state: photon Fock index outside truncation");
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(ops.n_m);
    diag(phonon_fock) = 1.0;
    return from_diagonal_qubit(ops, p_excited, diag, photon_fock);
}

DensityMatrix thermal_phonon_state(const OperatorSet& ops, double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("thermal_phonon_state: nbar must be non-negative");
    Eigen::VectorXd diag(ops.n_m);
    const double r = nbar / (1.0 + nbar);
    double w = 1.0;
    for (int n = 0; n < ops.n_m; ++n) {
        diag(n) = w;
        w *= r;
    }
    diag /= diag.sum();
    return from_diagonal_qubit(ops, 0.0, diag, 0);
}

double truncated_thermal_occupancy(int levels, double nbar) {
    const double r = nbar / (1.0 + nbar);
    double norm = 0.0, mean = 0.0, w = 1.0;
    for (int n = 0; n < levels; ++n) {
        norm += w;
        mean += n * w;
        w *= r;
    }
    return mean / norm;
}

double expectation(const DensityMatrix& state, const Matrix& observable) {
    if (observable.rows() != state.dim() || observable.cols() != state.dim()) {
        throw std::invalid_argument("expectation: observable dimension mismatch");
    }
    const Complex value = (state.rho * observable).trace();
    if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value.real()))) {
        throw IntegrationError("expectation: imaginary part " + std::to_string(value.imag()) +
                               " exceeds tolerance for a Hermitian observable");
    }
    return value.real();
}

}  // namespace transim
