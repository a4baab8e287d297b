#pragma once

#include "rddr/solvers.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace rddr::detail {

// Proximal map applied to the linearized Z argument; receives the step
// 1/(mu eta) and shrinks `arg` in place.
using ZProx = std::function<void(Eigen::MatrixXd& arg, double step)>;
// Penalty value recorded in the objective trace.
using PenaltyFn = std::function<double(const Eigen::MatrixXd& z,
                                       const Eigen::MatrixXd& e)>;

struct LadmapProblem {
  const Eigen::MatrixXd& x;
  const Eigen::MatrixXd& d;
  double lambda;
  // Squared per-column loss weights w_i^2; the E update of column i uses
  // mu / (lambda w_i^2 + mu). All ones for the unweighted loss.
  const Eigen::VectorXd& loss_weights_sq;
  ZProx z_prox;
  PenaltyFn penalty;
};

// Z + D^T (X - DZ - E + Y/mu) / eta, the point handed to the Z prox.
Eigen::MatrixXd z_step_argument(const Eigen::MatrixXd& z, const Eigen::MatrixXd& e,
                                const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& d, double mu, double eta);

// mu/(lambda w_i^2 + mu) (X + Y/mu - D Z_next), column by column.
Eigen::MatrixXd e_step(const Eigen::MatrixXd& z_next, const Eigen::MatrixXd& y,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& d, double mu,
                       double lambda, const Eigen::VectorXd& weights_sq);

// Algorithm skeleton shared by the plain, weighted and sparse solvers:
// Z step, E step, multiplier ascent, mu <- min(mu_max, rho mu), and the
// three sup-norm stopping tests checked after the multiplier update.
SolveReport run_ladmap(const LadmapProblem& problem, double eta,
                       const SolverOptions& opts, std::string name);

}  // namespace rddr::detail
