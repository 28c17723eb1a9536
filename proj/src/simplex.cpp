#include "qst/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qst::lp {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kCostTol = 1e-11;

// Tableau rows 0..m-1 are constraints with rhs in the last column; basis[i] is
// the basic column of row i.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows(); }
  Eigen::Index rhs() const { return t.cols() - 1; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }
};

// Minimizes cost.x over the current basis using only columns in [0, ncols).
// Returns false when unbounded.
bool run(Tableau& tab, const Eigen::VectorXd& cost, Eigen::Index ncols) {
  const Eigen::Index m = tab.rows();
  for (int iter = 0; iter < 100000; ++iter) {
    // Reduced costs r_j = c_j - c_B . column_j
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < ncols; ++j) {
      double r = cost(j);
      for (Eigen::Index i = 0; i < m; ++i) r -= cost(tab.basis[static_cast<std::size_t>(i)]) * tab.t(i, j);
      if (r < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = tab.t(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tab.t(i, tab.rhs()) / a;
      if (ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && tab.basis[static_cast<std::size_t>(i)] <
                                                   tab.basis[static_cast<std::size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;
    tab.pivot(leave, enter);
  }
  return true;
}

}  // namespace

Result solve(const Problem& problem, double feasibility_tol) {
  const Eigen::Index m = problem.A.rows();
  const Eigen::Index n = problem.A.cols();
  Result result;
  result.x = Eigen::VectorXd::Zero(n);

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = problem.b(i) < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * problem.A.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = sign * problem.b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  run(tab, phase1, n + m);
  double residual = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] >= n) residual += std::abs(tab.t(i, tab.rhs()));
  }
  result.residual = residual;
  auto extract = [&] {
    result.x.setZero();
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
      const auto j = tab.basis[static_cast<std::size_t>(i)];
      if (j < n) result.x(j) = tab.t(i, tab.rhs());
    }
  };
  if (residual > feasibility_tol) {
    extract();
    result.status = Status::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // redundant and are zeroed out.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) tab.pivot(i, col);
  }
  // Artificial columns stay in the tableau but are never chosen to enter.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
  if (problem.c.size() == n) cost.head(n) = problem.c;
  if (!run(tab, cost, n)) {
    extract();
    result.status = Status::Unbounded;
    return result;
  }
  extract();
  result.objective = problem.c.size() == n ? problem.c.dot(result.x) : 0.0;
  result.status = Status::Optimal;
  return result;
}

}  // namespace qst::lp
