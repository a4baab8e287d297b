#include "ladmap_core.hpp"

#include "rddr/error.hpp"
#include "rddr/norms.hpp"
#include "rddr/prox.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace rddr {

void SolverOptions::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) fail("mu0 must be positive");
  if (!(mu_max > 0.0) || !std::isfinite(mu_max)) fail("mu_max must be positive");
  if (mu0 > mu_max) fail("mu0 must not exceed mu_max");
  if (!(rho > 1.0) || !std::isfinite(rho)) fail("rho must be greater than 1");
  if (!(eps_tol > 0.0) || !std::isfinite(eps_tol)) fail("eps_tol must be positive");
  if (max_iter <= 0) fail("max_iter must be positive");
  if (!(irls_mu_scale > 0.0) || !std::isfinite(irls_mu_scale)) {
    fail("irls_mu_scale must be positive");
  }
  if (weighted_outer_iters <= 0) fail("weighted_outer_iters must be positive");
  if (!(weight_floor >= 0.0) || !std::isfinite(weight_floor)) {
    fail("weight_floor must be nonnegative");
  }
}

namespace detail {

Eigen::MatrixXd z_step_argument(const Eigen::MatrixXd& z, const Eigen::MatrixXd& e,
                                const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& d, double mu, double eta) {
  return z + d.transpose() * (x - d * z - e + y / mu) / eta;
}

Eigen::MatrixXd e_step(const Eigen::MatrixXd& z_next, const Eigen::MatrixXd& y,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& d, double mu,
                       double lambda, const Eigen::VectorXd& weights_sq) {
  Eigen::MatrixXd e = x + y / mu - d * z_next;
  for (Eigen::Index i = 0; i < e.cols(); ++i) {
    e.col(i) *= mu / (lambda * weights_sq(i) + mu);
  }
  return e;
}

SolveReport run_ladmap(const LadmapProblem& problem, double eta,
                       const SolverOptions& opts, std::string name) {
  const auto& x = problem.x;
  const auto& d = problem.d;
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  const Eigen::Index k = d.cols();

  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(k, n);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd z_prev = z;
  Eigen::MatrixXd e_prev = e;
  double mu = opts.mu0;

  std::vector<double> weights(problem.loss_weights_sq.data(),
                              problem.loss_weights_sq.data() + n);
  for (double& w : weights) w = std::sqrt(w);

  std::vector<double> objective_trace;
  std::vector<double> residual_trace;
  bool converged = false;
  int iterations = 0;

  auto build_report = [&](const Eigen::MatrixXd& zr, const Eigen::MatrixXd& er,
                          bool with_prev) {
    SolveReport report{DenseMatrix(zr), DenseMatrix(er)};
    report.converged = converged;
    report.iterations = iterations;
    report.objective_trace = objective_trace;
    report.residual_trace = residual_trace;
    report.solver_name = name;
    if (with_prev) {
      report.previous_Z = DenseMatrix(z_prev);
      report.previous_E = DenseMatrix(e_prev);
    }
    return report;
  };

  for (int t = 1; t <= opts.max_iter; ++t) {
    // Z step on the linearized augmented Lagrangian.
    Eigen::MatrixXd arg = z_step_argument(z, e, y, x, d, mu, eta);
    problem.z_prox(arg, 1.0 / (mu * eta));
    Eigen::MatrixXd z_next = std::move(arg);

    Eigen::MatrixXd e_next =
        e_step(z_next, y, x, d, mu, problem.lambda, problem.loss_weights_sq);

    const Eigen::MatrixXd feasibility = x - d * z_next - e_next;
    y += mu * feasibility;

    const double dz = max_abs(z_next - z);
    const double de = max_abs(e_next - e);
    const double residual = max_abs(feasibility);

    if (!z_next.allFinite() || !e_next.allFinite() || !y.allFinite()) {
      const bool have_prev = iterations > 0;
      throw SolverDiverged(name + ": non-finite iterate at iteration " +
                               std::to_string(t),
                           build_report(z, e, have_prev));
    }

    if (opts.observer) {
      opts.observer(IterationView{t, mu, z, z_next, weights, &y});
    }

    mu = std::min(opts.mu_max, opts.rho * mu);

    z_prev = std::move(z);
    e_prev = std::move(e);
    z = std::move(z_next);
    e = std::move(e_next);
    iterations = t;
    objective_trace.push_back(problem.penalty(z, e));
    residual_trace.push_back(residual);

    if (dz < opts.eps_tol && de < opts.eps_tol && residual < opts.eps_tol) {
      converged = true;
      break;
    }
  }
  return build_report(z, e, true);
}

}  // namespace detail

namespace {

void require_variant(const ProblemSpec& spec, Variant expected, const char* solver) {
  if (spec.variant() != expected) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(solver) + " requires the " +
                    std::string(variant_name(expected)) + " variant, got " +
                    std::string(variant_name(spec.variant())));
  }
}

void check_step_shapes(const DenseMatrix& z, const DenseMatrix& y, const DenseMatrix& x,
                       const DenseMatrix& d) {
  if (d.rows() != x.rows() || z.rows() != d.cols() || z.cols() != x.cols() ||
      y.rows() != x.rows() || y.cols() != x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "inconsistent shapes in LADMAP step");
  }
}

}  // namespace

DenseMatrix ladmap_z_step(const DenseMatrix& z, const DenseMatrix& e,
                          const DenseMatrix& y, const DenseMatrix& x,
                          const DenseMatrix& d, double mu, double eta) {
  if (!(mu > 0.0) || !(eta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mu and eta must be positive");
  }
  check_step_shapes(z, y, x, d);
  if (e.rows() != x.rows() || e.cols() != x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "E must match X");
  }
  Eigen::MatrixXd arg = detail::z_step_argument(z.eigen(), e.eigen(), y.eigen(),
                                                x.eigen(), d.eigen(), mu, eta);
  shrink_columns_inplace(arg, 1.0 / (mu * eta));
  return DenseMatrix(std::move(arg));
}

DenseMatrix ladmap_weighted_e_step(const DenseMatrix& z_next, const DenseMatrix& y,
                                   const DenseMatrix& x, const DenseMatrix& d,
                                   double mu, double lambda,
                                   std::span<const double> weights) {
  if (!(mu > 0.0) || !(lambda > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mu and lambda must be positive");
  }
  check_step_shapes(z_next, y, x, d);
  if (static_cast<Eigen::Index>(weights.size()) != x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per column is required");
  }
  Eigen::VectorXd weights_sq(x.cols());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    weights_sq(i) = weights[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(i)];
  }
  return DenseMatrix(detail::e_step(z_next.eigen(), y.eigen(), x.eigen(), d.eigen(),
                                    mu, lambda, weights_sq));
}

DenseMatrix ladmap_e_step(const DenseMatrix& z_next, const DenseMatrix& y,
                          const DenseMatrix& x, const DenseMatrix& d,
                          double mu, double lambda) {
  const std::vector<double> unit(static_cast<std::size_t>(x.cols()), 1.0);
  return ladmap_weighted_e_step(z_next, y, x, d, mu, lambda, unit);
}

SolveReport solve_ladmap(const ProblemSpec& spec, const SolverOptions& opts) {
  require_variant(spec, Variant::Plain, "solve_ladmap");
  opts.validate();
  const double eta = std::pow(spectral_norm(spec.D()), 2);
  const Eigen::VectorXd unit = Eigen::VectorXd::Ones(spec.n());
  const double half_lambda = 0.5 * spec.lambda();
  detail::LadmapProblem problem{
      spec.X().eigen(), spec.D().eigen(), spec.lambda(), unit,
      [](Eigen::MatrixXd& arg, double step) { shrink_columns_inplace(arg, step); },
      [half_lambda](const Eigen::MatrixXd& z, const Eigen::MatrixXd& e) {
        return l21_norm(z) + half_lambda * e.squaredNorm();
      }};
  return detail::run_ladmap(problem, eta, opts, "ladmap");
}

SolveReport solve_sparse_ladmap(const ProblemSpec& spec, const SolverOptions& opts) {
  require_variant(spec, Variant::Sparse, "solve_sparse_ladmap");
  opts.validate();
  const double eta = std::pow(spectral_norm(spec.D()), 2);
  const Eigen::VectorXd unit = Eigen::VectorXd::Ones(spec.n());
  const double beta = spec.beta();
  const double half_lambda = 0.5 * spec.lambda();
  detail::LadmapProblem problem{
      spec.X().eigen(), spec.D().eigen(), spec.lambda(), unit,
      // Both penalties are scaled by the same linearized step.
      [beta](Eigen::MatrixXd& arg, double step) {
        soft_threshold_inplace(arg, step);
        shrink_columns_inplace(arg, beta * step);
      },
      [beta, half_lambda](const Eigen::MatrixXd& z, const Eigen::MatrixXd& e) {
        return z.cwiseAbs().sum() + beta * l21_norm(z) + half_lambda * e.squaredNorm();
      }};
  return detail::run_ladmap(problem, eta, opts, "sparse");
}

SolveReport solve_weighted_ladmap(const ProblemSpec& spec, const SolverOptions& opts) {
  require_variant(spec, Variant::Weighted, "solve_weighted_ladmap");
  opts.validate();
  const double eta = std::pow(spectral_norm(spec.D()), 2);
  const double half_lambda = 0.5 * spec.lambda();

  // Round 1 uses W = I; later rounds lag W from the previous round's Z.
  Eigen::VectorXd weights_sq = Eigen::VectorXd::Ones(spec.n());
  std::optional<SolveReport> last;
  for (int round = 0; round < opts.weighted_outer_iters; ++round) {
    if (last) {
      const Eigen::VectorXd w =
          column_norms(last->Z.eigen()).cwiseMax(opts.weight_floor);
      weights_sq = w.cwiseAbs2();
    }
    detail::LadmapProblem problem{
        spec.X().eigen(), spec.D().eigen(), spec.lambda(), weights_sq,
        [](Eigen::MatrixXd& arg, double step) { shrink_columns_inplace(arg, step); },
        [&weights_sq, half_lambda](const Eigen::MatrixXd& z, const Eigen::MatrixXd& e) {
          const Eigen::VectorXd e2 = e.colwise().squaredNorm().transpose();
          return l21_norm(z) + half_lambda * e2.dot(weights_sq);
        }};
    last = detail::run_ladmap(problem, eta, opts, "weighted");
  }
  SolveReport report = std::move(*last);
  const Eigen::VectorXd final_w =
      column_norms(report.Z.eigen()).cwiseMax(opts.weight_floor);
  report.column_weights.assign(final_w.data(), final_w.data() + final_w.size());
  return report;
}

}  // namespace rddr
