#pragma once

#include "rddr/error.hpp"
#include "rddr/matrix.hpp"
#include "rddr/problem.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rddr {

/// Snapshot handed to SolverOptions::observer after every iteration.
/// For IRLS, `weights` holds the diagonal of U used to compute z_next.
/// For the LADMAP family it holds the column weights of the current round
/// (all ones for the unweighted solvers).
struct IterationView {
  int iteration;
  double mu;
  const Eigen::MatrixXd& z_prev;
  const Eigen::MatrixXd& z_next;
  std::span<const double> weights;
  /// Lagrange multiplier after the ascent step; null for IRLS.
  const Eigen::MatrixXd* multiplier = nullptr;
};

struct SolverOptions {
  double mu0 = 1e-3;
  double mu_max = 1e10;
  double rho = 1.05;
  double eps_tol = 1e-6;
  int max_iter = 1000;
  double irls_mu_scale = 0.1;
  int weighted_outer_iters = 5;
  double weight_floor = 1e-6;
  /// Optional per-iteration hook; not part of the numeric contract.
  std::function<void(const IterationView&)> observer;

  /// Schedule used by the LADMAP family: mu0=1e-3, mu_max=1e10, rho=1.05,
  /// eps=1e-6, max_iter=1000.
  static SolverOptions ladmap_defaults() { return {}; }
  /// Schedule used by IRLS: mu = 0.1 ||D||_2, rho=1.1, max_iter=500.
  static SolverOptions irls_defaults() {
    SolverOptions o;
    o.rho = 1.1;
    o.max_iter = 500;
    return o;
  }

  /// Throws Error(InvalidArgument) when an invariant is violated.
  void validate() const;
};

struct SolveReport {
  SolveReport(DenseMatrix z, DenseMatrix e) : Z(std::move(z)), E(std::move(e)) {}

  DenseMatrix Z;
  DenseMatrix E;
  bool converged = false;
  int iterations = 0;
  std::vector<double> objective_trace;
  /// ||X - DZ - E||_inf for the LADMAP family, ||Z_t - Z_{t+1}||_inf for IRLS.
  std::vector<double> residual_trace;
  std::string solver_name;
  /// Iterate preceding the returned (Z, E), if more than one was taken.
  std::optional<DenseMatrix> previous_Z;
  std::optional<DenseMatrix> previous_E;
  /// Final-round column weights of the weighted solver; empty otherwise.
  std::vector<double> column_weights;
};

/// Thrown when an iterate stops being finite. Carries the report up to the
/// last finite iterate.
class SolverDiverged : public Error {
 public:
  SolverDiverged(const std::string& message, SolveReport partial)
      : Error(ErrorCode::NonFinite, message), partial_(std::move(partial)) {}
  const SolveReport& partial_report() const noexcept { return partial_; }

 private:
  SolveReport partial_;
};

/// Linearized Z update: prox_l21(Z + D^T(X - DZ - E + Y/mu)/eta, 1/(mu eta)).
DenseMatrix ladmap_z_step(const DenseMatrix& z, const DenseMatrix& e,
                          const DenseMatrix& y, const DenseMatrix& x,
                          const DenseMatrix& d, double mu, double eta);

/// Closed-form E update: mu/(lambda+mu) (X + Y/mu - D Z_next).
DenseMatrix ladmap_e_step(const DenseMatrix& z_next, const DenseMatrix& y,
                          const DenseMatrix& x, const DenseMatrix& d,
                          double mu, double lambda);

/// Column-weighted E update used by the weighted solver:
/// e_i = mu/(lambda w_i^2 + mu) (X + Y/mu - D Z_next)_i.
DenseMatrix ladmap_weighted_e_step(const DenseMatrix& z_next, const DenseMatrix& y,
                                   const DenseMatrix& x, const DenseMatrix& d,
                                   double mu, double lambda,
                                   std::span<const double> weights);

/// Solves Z U + lambda D^T D Z = lambda D^T X for diagonal U (entries u).
/// Throws Error(SingularSystem) if a column system cannot be solved.
DenseMatrix sylvester_diag_solve(const DenseMatrix& d, std::span<const double> u,
                                 const DenseMatrix& x, double lambda);

SolveReport solve_ladmap(const ProblemSpec& spec,
                         const SolverOptions& opts = SolverOptions::ladmap_defaults());
SolveReport solve_irls(const ProblemSpec& spec,
                       const SolverOptions& opts = SolverOptions::irls_defaults());
SolveReport solve_weighted_ladmap(
    const ProblemSpec& spec,
    const SolverOptions& opts = SolverOptions::ladmap_defaults());
SolveReport solve_sparse_ladmap(
    const ProblemSpec& spec,
    const SolverOptions& opts = SolverOptions::ladmap_defaults());

}  // namespace rddr
