#pragma once

// Independent reference computations used to cross-check the library. Nothing
// here calls into qst beyond plain type aliases.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat random_density(std::mt19937_64& rng, int dim, int rank = -1) {
  if (rank < 0) rank = dim;
  std::normal_distribution<double> g;
  Mat a(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = cplx(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

/// Partial trace by explicit multi-index enumeration; `keep` lists factor
/// positions in ascending order.
inline Mat partial_trace(const Mat& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;
  int dk = 1;
  for (int k : keep) dk *= dims[k];
  Mat out = Mat::Zero(dk, dk);
  const int total = static_cast<int>(rho.rows());
  auto digits = [&](int idx) {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
      d[i] = idx % dims[i];
      idx /= dims[i];
    }
    return d;
  };
  for (int r = 0; r < total; ++r) {
    const auto dr = digits(r);
    for (int c = 0; c < total; ++c) {
      const auto dc = digits(c);
      bool traced_equal = true;
      for (int i = 0; i < n; ++i)
        if (!kept[i] && dr[i] != dc[i]) traced_equal = false;
      if (!traced_equal) continue;
      int ro = 0, co = 0;
      for (int i = 0; i < n; ++i) {
        if (!kept[i]) continue;
        ro = ro * dims[i] + dr[i];
        co = co * dims[i] + dc[i];
      }
      out(ro, co) += rho(r, c);
    }
  }
  return out;
}

/// Entropy in bits through the general (non-Hermitian) eigensolver.
inline double entropy(const Mat& rho) {
  Eigen::ComplexEigenSolver<Mat> es(rho);
  double h = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i).real();
    if (l > 1e-14) h -= l * std::log2(l);
  }
  return h;
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// Weights (tp, sd, ed) with w_tp*(-2,1,-1) + w_sd*(2,-1,-1) + w_ed*(0,-1,1) = x,
/// by Cramer's rule.
inline Eigen::Vector3d unit_weights(const Eigen::Vector3d& x) {
  const double m[3][3] = {{-2, 2, 0}, {1, -1, -1}, {-1, -1, 1}};
  auto det = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  Eigen::Vector3d w;
  for (int col = 0; col < 3; ++col) {
    double a[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = j == col ? x(i) : m[i][j];
    w(col) = det(a) / d;
  }
  return w;
}

}  // namespace oracle
