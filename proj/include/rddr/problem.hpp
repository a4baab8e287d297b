#pragma once

#include "rddr/matrix.hpp"

#include <string_view>

namespace rddr {

enum class Variant { Plain, Weighted, Sparse };

std::string_view variant_name(Variant v) noexcept;

/// A robust representation instance: data X (m x n), dictionary D (m x k),
/// the problem variant, the loss weight lambda and the l1 weight beta.
///
/// Plain:    min ||Z||_{2,1} + lambda/2 ||E||_F^2          s.t. X = DZ + E
/// Weighted: min ||Z||_{2,1} + lambda/2 ||E W||_F^2        s.t. X = DZ + E,
///           W = diag(||Z_1||_2, ..., ||Z_n||_2)
/// Sparse:   min ||Z||_1 + beta ||Z||_{2,1} + lambda/2 ||E||_F^2  s.t. X = DZ + E
class ProblemSpec {
 public:
  /// Validates shared row count, lambda > 0, beta >= 0 (> 0 for Sparse) and
  /// that D has a nonzero column. Throws Error on violation.
  ProblemSpec(DenseMatrix x, DenseMatrix d, Variant variant, double lambda,
              double beta = 0.0);

  const DenseMatrix& X() const noexcept { return x_; }
  const DenseMatrix& D() const noexcept { return d_; }
  Variant variant() const noexcept { return variant_; }
  double lambda() const noexcept { return lambda_; }
  double beta() const noexcept { return beta_; }

  Eigen::Index m() const noexcept { return x_.rows(); }
  Eigen::Index n() const noexcept { return x_.cols(); }
  Eigen::Index k() const noexcept { return d_.cols(); }

 private:
  DenseMatrix x_;
  DenseMatrix d_;
  Variant variant_;
  double lambda_;
  double beta_;
};

/// Penalty value of the problem's variant at (Z, E). Lagrangian terms are not
/// included. Throws Error(ShapeMismatch) when Z is not k x n or E not m x n.
double objective_value(const ProblemSpec& spec, const DenseMatrix& z,
                       const DenseMatrix& e);

/// Unconstrained plain objective ||Z||_{2,1} + lambda/2 ||X - DZ||_F^2.
double unconstrained_objective(const ProblemSpec& spec, const DenseMatrix& z);

}  // namespace rddr
