#pragma once

#include <Eigen/Dense>

#include <span>

namespace rddr::detail {

// Solver for Z U + lambda D^T D Z = lambda D^T X with U diagonal.
// D^T D = V diag(s) V^T is factored once; column i then reduces to
// z_i = V (u_i I + lambda diag(s))^{-1} V^T (lambda D^T x_i).
class DiagonalSylvester {
 public:
  DiagonalSylvester(const Eigen::MatrixXd& d, double lambda);

  // Right-hand side lambda D^T X expressed in the eigenbasis.
  Eigen::MatrixXd project_rhs(const Eigen::MatrixXd& x) const;

  Eigen::MatrixXd solve(std::span<const double> u,
                        const Eigen::MatrixXd& projected_rhs) const;

 private:
  Eigen::MatrixXd d_;
  double lambda_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd spectrum_;
};

}  // namespace rddr::detail
