#pragma once

// Dense two-phase simplex for small standard-form programs:
//   minimize c.x  subject to  A x = b,  x >= 0.
// Bland's rule throughout, so degenerate programs terminate.

#include <Eigen/Dense>

namespace qst::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Problem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;  ///< empty means pure feasibility
};

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Minimum of ||A x - b||_1 over x >= 0 found in phase one.
  double residual = 0.0;
};

/// `feasibility_tol` bounds the phase-one residual accepted as feasible.
Result solve(const Problem& problem, double feasibility_tol = 1e-9);

}  // namespace qst::lp
