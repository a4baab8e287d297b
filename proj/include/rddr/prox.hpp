#pragma once

#include "rddr/matrix.hpp"

namespace rddr {

/// argmin_A eps*||A||_{2,1} + 1/2 ||A - M||_F^2.
/// Column i becomes (1 - eps/||m_i||) m_i when ||m_i|| > eps, otherwise 0.
DenseMatrix prox_l21_columns(const DenseMatrix& m, double eps);

/// Entry-wise sign(m) * max(|m| - tau, 0).
DenseMatrix soft_threshold(const DenseMatrix& m, double tau);

/// argmin_A tau*||A||_1 + eps*||A||_{2,1} + 1/2 ||A - M||_F^2, evaluated as
/// prox_l21_columns(soft_threshold(M, tau), eps).
DenseMatrix prox_sparse_group(const DenseMatrix& m, double tau, double eps);

// In-place kernels behind the operators above; used by the solver loops.
void shrink_columns_inplace(Eigen::MatrixXd& m, double eps);
void soft_threshold_inplace(Eigen::MatrixXd& m, double tau);

}  // namespace rddr
