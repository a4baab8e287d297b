#include "rddr/matrix.hpp"

#include "rddr/error.hpp"

#include <string>
#include <utility>

namespace rddr {

bool all_finite(const Eigen::MatrixXd& m) noexcept {
  return m.allFinite();
}

DenseMatrix::DenseMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() <= 0 || values_.cols() <= 0) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix dimensions must be positive, got " +
                    std::to_string(values_.rows()) + "x" +
                    std::to_string(values_.cols()));
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::NonFinite, "matrix contains NaN or Inf entries");
  }
}

DenseMatrix DenseMatrix::zeros(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
  return DenseMatrix(Eigen::MatrixXd::Zero(rows, cols));
}

DenseMatrix DenseMatrix::identity(Index n) {
  if (n <= 0) {
    throw Error(ErrorCode::InvalidArgument, "identity size must be positive");
  }
  return DenseMatrix(Eigen::MatrixXd::Identity(n, n));
}

DenseMatrix DenseMatrix::diagonal(std::initializer_list<double> diag) {
  const auto n = static_cast<Index>(diag.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Index i = 0;
  for (double d : diag) {
    m(i, i) = d;
    ++i;
  }
  return DenseMatrix(std::move(m));
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r > 0 ? static_cast<Index>(rows.begin()->size()) : Index{0};
  Eigen::MatrixXd m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) {
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    }
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return DenseMatrix(std::move(m));
}

}  // namespace rddr
