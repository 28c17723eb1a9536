#include "qst/assembly.hpp"

#include <cmath>

namespace qst {

Ensemble::Ensemble(int dim_a, int dim_a_prime, std::vector<EnsembleEntry> entries, std::size_t max_outcomes)
    : dim_a_(dim_a), dim_a_prime_(dim_a_prime), entries_(std::move(entries)) {
  if (dim_a_ < 1 || dim_a_prime_ < 1) throw QuantumError("ensemble dimensions must be positive");
  if (entries_.empty()) throw QuantumError("ensemble is empty");
  if (entries_.size() > max_outcomes) throw QuantumError("ensemble exceeds the outcome cap");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (e.probability < 0.0) throw QuantumError("ensemble probability is negative");
    if (e.state.size() != static_cast<Eigen::Index>(dim_a_) * dim_a_prime_) {
      throw QuantumError("ensemble state has the wrong dimension");
    }
    if (std::abs(e.state.norm() - 1.0) > kNormTol) throw QuantumError("ensemble state is not normalized");
    total += e.probability;
  }
  if (std::abs(total - 1.0) > 1e-10) throw QuantumError("ensemble probabilities do not sum to 1");
}

Ensemble Ensemble::maximally_entangled(int dim) {
  Vector v = Vector::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) v(i * dim + i) = 1.0 / std::sqrt(static_cast<double>(dim));
  return Ensemble(dim, dim, {{1.0, v}});
}

Ensemble tensor(const Ensemble& a, const Ensemble& b) {
  std::vector<EnsembleEntry> entries;
  const Labels la{{"A1", a.dim_a()}, {"P1", a.dim_a_prime()}};
  const Labels lb{{"A2", b.dim_a()}, {"P2", b.dim_a_prime()}};
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      const PureState joint = permute(tensor(PureState(la, ea.state), PureState(lb, eb.state)),
                                      {"A1", "A2", "P1", "P2"});
      entries.push_back({ea.probability * eb.probability, joint.vector()});
    }
  }
  return Ensemble(a.dim_a() * b.dim_a(), a.dim_a_prime() * b.dim_a_prime(), std::move(entries),
                  std::max<std::size_t>(entries.size(), kDefaultMaxOutcomes));
}

SigmaDynamic build_sigma_dynamic(const QuantumChannel& channel, const Ensemble& ensemble) {
  if (ensemble.dim_a_prime() != channel.in_dim()) {
    throw QuantumError("ensemble A' dimension does not match channel input");
  }
  const Isometry u = isometric_extension(channel, "B", "E");
  const Labels input{{"A", ensemble.dim_a()}, {"A'", ensemble.dim_a_prime()}};
  const auto& entries = ensemble.entries();
  const auto nx = static_cast<Eigen::Index>(entries.size());
  Labels labels{{"X", static_cast<int>(nx)}, {"A", ensemble.dim_a()}, {"B", channel.out_dim()},
                {"E", static_cast<int>(channel.kraus().size())}};
  const auto dim = static_cast<Eigen::Index>(total_dim(labels)) / nx;
  Matrix sigma = Matrix::Zero(nx * dim, nx * dim);
  std::vector<double> probs;
  for (Eigen::Index x = 0; x < nx; ++x) {
    const auto& e = entries[static_cast<std::size_t>(x)];
    const PureState out = apply_isometry(u, PureState(input, e.state), "A'");
    sigma.block(x * dim, x * dim, dim, dim) = e.probability * out.vector() * out.vector().adjoint();
    probs.push_back(e.probability);
  }
  return {make_unchecked(std::move(labels), 0.5 * (sigma + sigma.adjoint())), std::move(probs)};
}

SigmaStatic build_sigma_static(const DensityMatrix& rho, const Instrument& instrument) {
  if (rho.labels().size() != 2 || !rho.has("A") || !rho.has("B")) {
    throw QuantumError("static resource must be a state on subsystems A and B");
  }
  const auto& a = rho.subsystem("A");
  if (a.dim != instrument.in_dim()) throw QuantumError("instrument input dimension does not match A");
  const PureState psi = purify(permute(rho, {"A", "B"}), "E");
  auto dilated = dilate_instrument(instrument, psi, "A", {"A'", "E'", "X"});
  return {std::move(dilated.state), std::move(dilated.probabilities)};
}

double off_block_mass(const DensityMatrix& rho) {
  const auto nx = static_cast<Eigen::Index>(rho.labels().front().dim);
  const auto dim = static_cast<Eigen::Index>(rho.dim()) / nx;
  double worst = 0.0;
  for (Eigen::Index x = 0; x < nx; ++x) {
    for (Eigen::Index y = 0; y < nx; ++y) {
      if (x == y) continue;
      worst = std::max(worst, rho.matrix().block(x * dim, y * dim, dim, dim).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace qst
