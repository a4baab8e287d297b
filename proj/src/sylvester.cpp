#include "sylvester.hpp"

#include "rddr/error.hpp"
#include "rddr/matrix.hpp"
#include "rddr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rddr {
namespace detail {

DiagonalSylvester::DiagonalSylvester(const Eigen::MatrixXd& d, double lambda)
    : d_(d), lambda_(lambda) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d.transpose() * d);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSystem, "eigendecomposition of D^T D failed");
  }
  basis_ = eig.eigenvectors();
  // D^T D is PSD; clip rounding noise below zero.
  spectrum_ = eig.eigenvalues().cwiseMax(0.0);
}

Eigen::MatrixXd DiagonalSylvester::project_rhs(const Eigen::MatrixXd& x) const {
  return basis_.transpose() * (lambda_ * (d_.transpose() * x));
}

Eigen::MatrixXd DiagonalSylvester::solve(
    std::span<const double> u, const Eigen::MatrixXd& projected_rhs) const {
  const Eigen::Index n = projected_rhs.cols();
  if (static_cast<Eigen::Index>(u.size()) != n) {
    throw Error(ErrorCode::ShapeMismatch, "weight count must equal column count");
  }
  Eigen::MatrixXd scaled(projected_rhs.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::ArrayXd denom = u[i] + lambda_ * spectrum_.array();
    if (!(denom.minCoeff() > std::numeric_limits<double>::min()) ||
        !denom.allFinite()) {
      throw Error(ErrorCode::SingularSystem,
                  "column system " + std::to_string(i) + " is singular");
    }
    scaled.col(i) = projected_rhs.col(i).array() / denom;
  }
  return basis_ * scaled;
}

}  // namespace detail

DenseMatrix sylvester_diag_solve(const DenseMatrix& d, std::span<const double> u,
                                 const DenseMatrix& x, double lambda) {
  if (d.rows() != x.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "D and X must share their row count");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  }
  if (std::any_of(u.begin(), u.end(),
                  [](double v) { return !(v > 0.0) || !std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidArgument, "diagonal weights must be positive");
  }
  const detail::DiagonalSylvester solver(d.eigen(), lambda);
  return DenseMatrix(solver.solve(u, solver.project_rhs(x.eigen())));
}

}  // namespace rddr
