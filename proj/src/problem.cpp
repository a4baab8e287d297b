#include "rddr/problem.hpp"

#include "rddr/error.hpp"
#include "rddr/norms.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rddr {

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::Weighted: return "weighted";
    case Variant::Sparse: return "sparse";
  }
  return "unknown";
}

ProblemSpec::ProblemSpec(DenseMatrix x, DenseMatrix d, Variant variant,
                         double lambda, double beta)
    : x_(std::move(x)), d_(std::move(d)), variant_(variant), lambda_(lambda),
      beta_(beta) {
  if (x_.rows() != d_.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "X has " + std::to_string(x_.rows()) + " rows but D has " +
                    std::to_string(d_.rows()));
  }
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive and finite");
  }
  if (!(beta_ >= 0.0) || !std::isfinite(beta_)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative and finite");
  }
  if (variant_ == Variant::Sparse && beta_ == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "sparse variant requires beta > 0");
  }
  if (max_abs(d_.eigen()) == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "dictionary has no nonzero column");
  }
}

double objective_value(const ProblemSpec& spec, const DenseMatrix& z,
                       const DenseMatrix& e) {
  if (z.rows() != spec.k() || z.cols() != spec.n()) {
    throw Error(ErrorCode::ShapeMismatch, "Z must be k x n");
  }
  if (e.rows() != spec.m() || e.cols() != spec.n()) {
    throw Error(ErrorCode::ShapeMismatch, "E must be m x n");
  }
  const auto& zm = z.eigen();
  const auto& em = e.eigen();
  const double half_lambda = 0.5 * spec.lambda();
  switch (spec.variant()) {
    case Variant::Plain:
      return l21_norm(zm) + half_lambda * em.squaredNorm();
    case Variant::Weighted: {
      const Eigen::VectorXd w = column_norms(zm);
      const Eigen::VectorXd e2 = em.colwise().squaredNorm().transpose();
      return w.sum() + half_lambda * e2.dot(w.cwiseAbs2());
    }
    case Variant::Sparse:
      return zm.cwiseAbs().sum() + spec.beta() * l21_norm(zm) +
             half_lambda * em.squaredNorm();
  }
  return 0.0;
}

double unconstrained_objective(const ProblemSpec& spec, const DenseMatrix& z) {
  if (z.rows() != spec.k() || z.cols() != spec.n()) {
    throw Error(ErrorCode::ShapeMismatch, "Z must be k x n");
  }
  const Eigen::MatrixXd r = spec.X().eigen() - spec.D().eigen() * z.eigen();
  return l21_norm(z.eigen()) + 0.5 * spec.lambda() * r.squaredNorm();
}

}  // namespace rddr
