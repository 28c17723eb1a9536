#pragma once

// Entropic functionals in bits on labelled multipartite states.

#include <map>
#include <string>

#include "qst/quantum.hpp"

namespace qst {

double binary_entropy(double p);

/// Shannon entropy in bits of a spectrum; values in [-kEigenClip, 0) are
/// treated as zero, anything more negative is an error.
double spectrum_entropy(const Eigen::VectorXd& eigenvalues);

double von_neumann(const DensityMatrix& rho);
double von_neumann(const DensityMatrix& rho, const Group& group);
double mutual_information(const DensityMatrix& rho, const Group& a, const Group& b);
double conditional_mutual_information(const DensityMatrix& rho, const Group& a, const Group& b, const Group& c);
/// I(A>B) = H(B) - H(AB).
double coherent_information(const DensityMatrix& rho, const Group& a, const Group& b);
/// I(A>BX) = H(BX) - H(ABX).
double coherent_information(const DensityMatrix& rho, const Group& a, const Group& b, const Group& x);

/// Evaluates many entropic quantities on one state, memoizing the entropy of
/// every subsystem set it has already reduced to. Not thread-safe; create one
/// per thread.
class EntropyQuery {
 public:
  explicit EntropyQuery(const DensityMatrix& state) : state_(state) {}

  const DensityMatrix& state() const { return state_; }

  double H(const Group& group);
  double I(const Group& a, const Group& b);
  double I(const Group& a, const Group& b, const Group& c);
  double coherent(const Group& a, const Group& b);
  double coherent(const Group& a, const Group& b, const Group& x);

 private:
  const DensityMatrix& state_;
  std::map<std::string, double> cache_;
};

}  // namespace qst
