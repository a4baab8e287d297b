#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>

namespace rddr {

/// Immutable dense real matrix with (row, col) addressing.
///
/// Construction validates that both dimensions are positive and that every
/// entry is finite, so any DenseMatrix handed to a solver is NaN/Inf free.
class DenseMatrix {
 public:
  using Index = Eigen::Index;

  /// Throws Error(InvalidArgument) on an empty shape and
  /// Error(NonFinite) when any entry is NaN or infinite.
  explicit DenseMatrix(Eigen::MatrixXd values);

  static DenseMatrix zeros(Index rows, Index cols);
  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::initializer_list<double> diag);
  /// Row-major literal, e.g. from_rows({{1, 2}, {3, 4}}).
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  double operator()(Index r, Index c) const { return values_(r, c); }

  const Eigen::MatrixXd& eigen() const noexcept { return values_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

/// True when every entry of m is finite.
bool all_finite(const Eigen::MatrixXd& m) noexcept;

}  // namespace rddr
