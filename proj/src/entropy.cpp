#include "qst/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qst {

namespace {

Group join(const Group& a, const Group& b) {
  Group out = a;
  for (const auto& s : b) {
    if (std::find(out.begin(), out.end(), s) != out.end()) {
      throw QuantumError("subsystem '" + s + "' appears in two groups of one query");
    }
    out.push_back(s);
  }
  return out;
}

Group join(const Group& a, const Group& b, const Group& c) { return join(join(a, b), c); }

// Label-set key independent of the order names were given in.
std::string key_of(const DensityMatrix& rho, const Group& group) {
  std::vector<std::size_t> idx;
  for (const auto& s : group) idx.push_back(rho.index_of(s));
  std::sort(idx.begin(), idx.end());
  std::string key;
  for (auto i : idx) key += std::to_string(i) + ",";
  return key;
}

}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l < -kEigenClip) throw QuantumError("negative eigenvalue " + std::to_string(l) + " in entropy");
    if (l > 0.0) h -= l * std::log2(l);
  }
  return h;
}

double von_neumann(const DensityMatrix& rho) {
  if (rho.dim() == 1) return 0.0;
  const Matrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues());
}

double von_neumann(const DensityMatrix& rho, const Group& group) {
  if (group.empty()) return 0.0;
  return von_neumann(partial_trace(rho, group));
}

double mutual_information(const DensityMatrix& rho, const Group& a, const Group& b) {
  return EntropyQuery(rho).I(a, b);
}

double conditional_mutual_information(const DensityMatrix& rho, const Group& a, const Group& b, const Group& c) {
  return EntropyQuery(rho).I(a, b, c);
}

double coherent_information(const DensityMatrix& rho, const Group& a, const Group& b) {
  return EntropyQuery(rho).coherent(a, b);
}

double coherent_information(const DensityMatrix& rho, const Group& a, const Group& b, const Group& x) {
  return EntropyQuery(rho).coherent(a, b, x);
}

double EntropyQuery::H(const Group& group) {
  if (group.empty()) return 0.0;
  std::set<std::string> unique(group.begin(), group.end());
  if (unique.size() != group.size()) throw QuantumError("entropy group repeats a subsystem");
  const auto key = key_of(state_, group);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const double h = von_neumann(state_, group);
  cache_.emplace(key, h);
  return h;
}

double EntropyQuery::I(const Group& a, const Group& b) { return H(a) + H(b) - H(join(a, b)); }

double EntropyQuery::I(const Group& a, const Group& b, const Group& c) {
  return H(join(a, c)) + H(join(b, c)) - H(join(a, b, c)) - H(c);
}

double EntropyQuery::coherent(const Group& a, const Group& b) { return H(b) - H(join(a, b)); }

double EntropyQuery::coherent(const Group& a, const Group& b, const Group& x) {
  return H(join(b, x)) - H(join(a, b, x));
}

}  // namespace qst
