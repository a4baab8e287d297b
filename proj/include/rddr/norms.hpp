#pragma once

#include "rddr/matrix.hpp"

namespace rddr {

/// Which matrix norm to evaluate. Column-wise group norms sum over the
/// columns of the matrix (one group per sample).
class NormKind {
 public:
  enum class Tag { Frobenius, EntrywiseL1, EntrywiseLInf, ColumnL21, ColumnLq1 };

  static NormKind frobenius() { return NormKind(Tag::Frobenius, 0.0); }
  static NormKind entrywise_l1() { return NormKind(Tag::EntrywiseL1, 0.0); }
  static NormKind entrywise_linf() { return NormKind(Tag::EntrywiseLInf, 0.0); }
  static NormKind column_l21() { return NormKind(Tag::ColumnL21, 2.0); }
  /// q must lie in (0, 1] or equal 2; throws Error(InvalidArgument) otherwise.
  static NormKind column_lq1(double q);

  Tag tag() const noexcept { return tag_; }
  double q() const noexcept { return q_; }

 private:
  NormKind(Tag tag, double q) : tag_(tag), q_(q) {}
  Tag tag_;
  double q_;
};

double matrix_norm(const DenseMatrix& m, NormKind kind);

/// Largest singular value. Small matrices (min dimension <= 64) go through a
/// full SVD; larger ones through power iteration on M^T M.
/// Throws Error(ZeroMatrix) when every entry is zero.
double spectral_norm(const DenseMatrix& m);

/// Power-iteration path of spectral_norm, exposed for testing. Stops when
/// successive Rayleigh quotients agree to 1e-12 relative or after max_iter.
double spectral_norm_power_iteration(const Eigen::MatrixXd& m,
                                     int max_iter = 1000);

// Column-wise helpers shared by the solvers.
double l21_norm(const Eigen::MatrixXd& m);
Eigen::VectorXd column_norms(const Eigen::MatrixXd& m);
double max_abs(const Eigen::MatrixXd& m);

}  // namespace rddr
