#include "rddr/prox.hpp"

#include "rddr/error.hpp"

#include <cmath>

namespace rddr {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " must be nonnegative and finite");
  }
}

}  // namespace

void shrink_columns_inplace(Eigen::MatrixXd& m, double eps) {
  if (eps == 0.0) return;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double norm = m.col(c).norm();
    // A column exactly at the threshold maps to zero.
    if (norm > eps) {
      m.col(c) *= 1.0 - eps / norm;
    } else {
      m.col(c).setZero();
    }
  }
}

void soft_threshold_inplace(Eigen::MatrixXd& m, double tau) {
  if (tau == 0.0) return;
  m = m.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag > 0.0 ? std::copysign(mag, v) : 0.0;
  });
}

DenseMatrix prox_l21_columns(const DenseMatrix& m, double eps) {
  require_nonnegative(eps, "eps");
  Eigen::MatrixXd out = m.eigen();
  shrink_columns_inplace(out, eps);
  return DenseMatrix(std::move(out));
}

DenseMatrix soft_threshold(const DenseMatrix& m, double tau) {
  require_nonnegative(tau, "tau");
  Eigen::MatrixXd out = m.eigen();
  soft_threshold_inplace(out, tau);
  return DenseMatrix(std::move(out));
}

DenseMatrix prox_sparse_group(const DenseMatrix& m, double tau, double eps) {
  require_nonnegative(tau, "tau");
  require_nonnegative(eps, "eps");
  Eigen::MatrixXd out = m.eigen();
  soft_threshold_inplace(out, tau);
  shrink_columns_inplace(out, eps);
  return DenseMatrix(std::move(out));
}

}  // namespace rddr
