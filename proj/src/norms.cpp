#include "rddr/norms.hpp"

#include "rddr/error.hpp"

#include <algorithm>
#include <cmath>

namespace rddr {

namespace {

constexpr Eigen::Index kExactSvdLimit = 64;

double column_lq(const Eigen::MatrixXd& m, Eigen::Index col, double q) {
  double acc = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    acc += std::pow(std::abs(m(r, col)), q);
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace

NormKind NormKind::column_lq1(double q) {
  if (!((q > 0.0 && q <= 1.0) || q == 2.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "column q-norm exponent must lie in (0,1] or equal 2");
  }
  if (q == 2.0) return column_l21();
  return NormKind(Tag::ColumnLq1, q);
}

Eigen::VectorXd column_norms(const Eigen::MatrixXd& m) {
  return m.colwise().norm().transpose();
}

double l21_norm(const Eigen::MatrixXd& m) {
  return m.colwise().norm().sum();
}

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double matrix_norm(const DenseMatrix& m, NormKind kind) {
  const auto& a = m.eigen();
  switch (kind.tag()) {
    case NormKind::Tag::Frobenius:
      return a.norm();
    case NormKind::Tag::EntrywiseL1:
      return a.cwiseAbs().sum();
    case NormKind::Tag::EntrywiseLInf:
      return max_abs(a);
    case NormKind::Tag::ColumnL21:
      return l21_norm(a);
    case NormKind::Tag::ColumnLq1: {
      double total = 0.0;
      for (Eigen::Index c = 0; c < a.cols(); ++c) total += column_lq(a, c, kind.q());
      return total;
    }
  }
  return 0.0;
}

double spectral_norm_power_iteration(const Eigen::MatrixXd& m, int max_iter) {
  if (max_abs(m) == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "spectral norm of an all-zero matrix");
  }
  // Start from the sum of absolute rows so the iterate is deterministic and
  // not orthogonal to the dominant right singular vector in practice.
  Eigen::VectorXd v = m.cwiseAbs().colwise().sum().transpose();
  v /= v.norm();
  double rayleigh = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = m.transpose() * (m * v);
    const double next = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) break;
    v = w / wn;
    if (it > 0 && std::abs(next - rayleigh) <= 1e-12 * std::abs(next)) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  // One more Rayleigh quotient at the final iterate.
  rayleigh = std::max(rayleigh, (m * v).squaredNorm());
  return std::sqrt(rayleigh);
}

double spectral_norm(const DenseMatrix& m) {
  const auto& a = m.eigen();
  if (max_abs(a) == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "spectral norm of an all-zero matrix");
  }
  if (std::min(a.rows(), a.cols()) <= kExactSvdLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
  }
  return spectral_norm_power_iteration(a);
}

}  // namespace rddr
