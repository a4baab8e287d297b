#include "sylvester.hpp"

#include "rddr/error.hpp"
#include "rddr/norms.hpp"
#include "rddr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace rddr {

namespace {

// Keeps U finite once columns vanish.
constexpr double kMuFloor = 1e-12;

}  // namespace

SolveReport solve_irls(const ProblemSpec& spec, const SolverOptions& opts) {
  if (spec.variant() != Variant::Plain) {
    throw Error(ErrorCode::InvalidArgument, "solve_irls requires the plain variant");
  }
  opts.validate();
  const auto& x = spec.X().eigen();
  const auto& d = spec.D().eigen();
  const double lambda = spec.lambda();
  const Eigen::Index n = spec.n();

  const detail::DiagonalSylvester sylvester(d, lambda);
  const Eigen::MatrixXd rhs = sylvester.project_rhs(x);

  double mu = opts.irls_mu_scale * spectral_norm(spec.D());
  std::vector<double> u(static_cast<std::size_t>(n), 1.0);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(spec.k(), n);
  Eigen::MatrixXd z_prev = z;

  SolveReport report{DenseMatrix::zeros(spec.k(), n), DenseMatrix::zeros(spec.m(), n)};
  report.solver_name = "irls";

  auto finalize = [&](const Eigen::MatrixXd& zr, bool with_prev) {
    report.Z = DenseMatrix(zr);
    report.E = DenseMatrix(x - d * zr);
    if (with_prev) {
      report.previous_Z = DenseMatrix(z_prev);
      report.previous_E = DenseMatrix(x - d * z_prev);
    }
  };

  for (int t = 1; t <= opts.max_iter; ++t) {
    Eigen::MatrixXd z_next = sylvester.solve(u, rhs);
    if (!z_next.allFinite()) {
      finalize(z, report.iterations > 0);
      throw SolverDiverged("irls: non-finite iterate at iteration " + std::to_string(t),
                           std::move(report));
    }
    if (opts.observer) {
      opts.observer(IterationView{t, mu, z, z_next, u});
    }

    const Eigen::VectorXd norms = column_norms(z_next);
    for (Eigen::Index i = 0; i < n; ++i) {
      u[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(norms(i) * norms(i) + mu * mu);
    }
    mu = std::max(mu / opts.rho, kMuFloor);

    const double dz = max_abs(z_next - z);
    z_prev = std::move(z);
    z = std::move(z_next);
    report.iterations = t;
    report.objective_trace.push_back(norms.sum() +
                                     0.5 * lambda * (x - d * z).squaredNorm());
    report.residual_trace.push_back(dz);
    if (dz < opts.eps_tol) {
      report.converged = true;
      break;
    }
  }
  finalize(z, true);
  return report;
}

}  // namespace rddr
