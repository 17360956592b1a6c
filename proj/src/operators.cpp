#include "transim/operators.hpp"

#include <cmath>
#include <string>

namespace transim {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix truncated_annihilator(int levels) {
    Matrix op = Matrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) {
        op(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return op;
}

OperatorSet build_operators(int n_m_levels, int n_o_levels, int dim_ceiling) {
    if (n_m_levels < 2) {
        throw std::invalid_argument("build_operators: need at least 2 phonon levels");
    }
    if (n_o_levels < 0) {
        throw std::invalid_argument("build_operators: photon level count must be non-negative");
    }
    const long dim = 2L * n_m_levels * (n_o_levels > 0 ? n_o_levels : 1);
    if (dim > dim_ceiling) {
        throw ResourceError("build_operators: composite dimension " + std::to_string(dim) +
                            " exceeds ceiling " + std::to_string(dim_ceiling));
    }

    OperatorSet ops;
    ops.n_m = n_m_levels;
    ops.n_o = n_o_levels;
    ops.dim = dim;

    const Matrix id_q = Matrix::Identity(2, 2);
    const Matrix id_m = Matrix::Identity(n_m_levels, n_m_levels);
    Matrix lower_q = Matrix::Zero(2, 2);
    lower_q(0, 1) = 1.0;  // |g><e| in the {g, e} basis
    const Matrix b_local = truncated_annihilator(n_m_levels);

    if (n_o_levels > 0) {
        const Matrix id_o = Matrix::Identity(n_o_levels, n_o_levels);
        const Matrix a_local = truncated_annihilator(n_o_levels);
        ops.sigma_ge = kron(kron(lower_q, id_m), id_o);
        ops.b = kron(kron(id_q, b_local), id_o);
        ops.a = kron(kron(id_q, id_m), a_local);
        ops.a_dag = ops.a.adjoint();
        ops.n_opt = ops.a_dag * ops.a;
    } else {
        ops.sigma_ge = kron(lower_q, id_m);
        ops.b = kron(id_q, b_local);
    }

    ops.identity = Matrix::Identity(dim, dim);
    ops.sigma_eg = ops.sigma_ge.adjoint();
    ops.sigma_ee = ops.sigma_eg * ops.sigma_ge;
    ops.b_dag = ops.b.adjoint();
    ops.n_mech = ops.b_dag * ops.b;
    return ops;
}

}  // namespace transim
