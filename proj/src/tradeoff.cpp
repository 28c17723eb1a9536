#include "qst/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qst/entropy.hpp"

namespace qst {

namespace {

void check_copies(int k) {
  if (k < 1 || k > 2) throw QuantumError("only k = 1 or k = 2 tensor copies are supported");
}

void check_block_diagonal(const DensityMatrix& sigma) {
  if (off_block_mass(sigma) > kBlockTol) throw QuantumError("sigma is not block diagonal in its classical flag");
}

}  // namespace

const char* to_string(PointKind kind) { return kind == PointKind::CEF ? "CEF" : "CASR"; }

DynamicQuantities dynamic_quantities(const SigmaDynamic& sigma, int copies) {
  check_block_diagonal(sigma.state);
  EntropyQuery h(sigma.state);
  const double k = copies;
  DynamicQuantities q;
  q.I_X_B = h.I({"X"}, {"B"}) / k;
  q.I_AX_B = h.I({"A", "X"}, {"B"}) / k;
  q.I_A_B_given_X = h.I({"A"}, {"B"}, {"X"}) / k;
  q.I_A_E_given_X = h.I({"A"}, {"E"}, {"X"}) / k;
  q.coherent = h.coherent({"A"}, {"B"}, {"X"}) / k;
  return q;
}

StaticQuantities static_quantities(const SigmaStatic& sigma, int copies) {
  check_block_diagonal(sigma.state);
  EntropyQuery h(sigma.state);
  const double k = copies;
  StaticQuantities q;
  q.I_X_E_given_B = h.I({"X"}, {"E"}, {"B"}) / k;
  q.I_A_E_given_EX = h.I({"A'"}, {"E"}, {"E'", "X"}) / k;
  q.I_A_B_given_X = h.I({"A'"}, {"B"}, {"X"}) / k;
  q.I_A_Ep_given_X = h.I({"A'"}, {"E'"}, {"X"}) / k;
  q.coherent = h.coherent({"A'"}, {"B"}, {"X"}) / k;
  return q;
}

RateTriple cef_rates(const DynamicQuantities& q) {
  return {q.I_X_B, 0.5 * q.I_A_B_given_X, -0.5 * q.I_A_E_given_X};
}

RateTriple casr_rates(const StaticQuantities& q) {
  return {-q.I_X_E_given_B, -0.5 * q.I_A_E_given_EX, 0.5 * (q.I_A_B_given_X - q.I_A_Ep_given_X)};
}

OneShotPoint cef_point(const QuantumChannel& channel, const Ensemble& ensemble, std::string provenance,
                       int copies) {
  check_copies(copies);
  const auto sigma = build_sigma_dynamic(channel, ensemble);
  return {PointKind::CEF, cef_rates(dynamic_quantities(sigma, copies)), std::move(provenance), copies};
}

OneShotPoint casr_point(const DensityMatrix& rho, const Instrument& instrument, std::string provenance,
                        int copies) {
  check_copies(copies);
  const auto sigma = build_sigma_static(rho, instrument);
  return {PointKind::CASR, casr_rates(static_quantities(sigma, copies)), std::move(provenance), copies};
}

RateRegion assemble_region(const std::vector<OneShotPoint>& points) {
  std::vector<RateTriple> gens{RateTriple{}};
  for (const auto& p : points) gens.push_back(p.triple);
  return minkowski_sum(RateRegion(std::move(gens)), unit_region());
}

QuantumChannel tensor_copies(const QuantumChannel& channel, int k) {
  check_copies(k);
  if (k == 1) return channel;
  std::vector<Matrix> kraus;
  for (const auto& a : channel.kraus()) {
    for (const auto& b : channel.kraus()) kraus.push_back(kron(a, b));
  }
  return QuantumChannel(channel.in_dim() * channel.in_dim(), channel.out_dim() * channel.out_dim(),
                        std::move(kraus));
}

DensityMatrix tensor_copies(const DensityMatrix& rho, int k) {
  check_copies(k);
  if (!rho.has("A") || !rho.has("B") || rho.labels().size() != 2) {
    throw QuantumError("tensor_copies expects a state on subsystems A and B");
  }
  if (k == 1) return rho;
  const auto first = rename(rename(rho, "A", "A1"), "B", "B1");
  const auto second = rename(rename(rho, "A", "A2"), "B", "B2");
  auto joint = permute(tensor(first, second), {"A1", "A2", "B1", "B2"});
  return merge(merge(joint, {"A1", "A2"}, "A"), {"B1", "B2"}, "B");
}

Ensemble tensor_copies(const Ensemble& ensemble, int k) {
  check_copies(k);
  if (k == 1) return ensemble;
  return tensor(ensemble, ensemble);
}

// --- converse predicates ------------------------------------------------------

bool BoundReport::passed(double tol) const {
  return std::all_of(checks.begin(), checks.end(), [&](const BoundCheck& c) { return c.slack() >= -tol; });
}

double BoundReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) m = std::min(m, c.slack());
  return m;
}

BoundReport cef_octant_bounds(const DynamicQuantities& q, const RateTriple& x) {
  BoundReport r{"cef_octant_bounds", "(+,+,-)", OrthantSpec::parse("++-").contains(x), {}};
  const double ae = std::abs(x.E);
  r.checks.push_back({"C + 2Q <= I(AX;B)", x.C + 2.0 * x.Q, q.I_AX_B});
  r.checks.push_back({"Q <= I(A>BX) + |E|", x.Q, q.coherent + ae});
  r.checks.push_back({"C + Q <= I(X;B) + I(A>BX) + |E|", x.C + x.Q, q.I_X_B + q.coherent + ae});
  return r;
}

BoundReport caq_bounds(const DynamicQuantities& q, const RateTriple& x) {
  BoundReport r{"caq_bounds", "(-,+,-)", OrthantSpec::parse("-+-").contains(x), {}};
  r.checks.push_back({"Q <= I(A>BX) + |E|", x.Q, q.coherent + std::abs(x.E)});
  r.checks.push_back({"2Q <= I(AX;B) + |C|", 2.0 * x.Q, q.I_AX_B + std::abs(x.C)});
  return r;
}

BoundReport eaq_classical_bounds(const DynamicQuantities& q, const RateTriple& x) {
  BoundReport r{"eaq_classical_bounds", "(+,-,-)", OrthantSpec::parse("+--").contains(x), {}};
  const double aq = std::abs(x.Q), ae = std::abs(x.E);
  r.checks.push_back({"C <= I(AX;B) + 2|Q|", x.C, q.I_AX_B + 2.0 * aq});
  r.checks.push_back({"C <= I(X;B) + I(A>BX) + |Q| + |E|", x.C, q.I_X_B + q.coherent + aq + ae});
  return r;
}

BoundReport casr_octant_bounds(const StaticQuantities& q, const RateTriple& x) {
  BoundReport r{"casr_octant_bounds", "(-,-,+)", OrthantSpec::parse("--+").contains(x), {}};
  const double ac = std::abs(x.C), aq = std::abs(x.Q);
  r.checks.push_back({"E <= I(A'>BX) + |Q|", x.E, q.coherent + aq});
  r.checks.push_back({"I(X;E|B) + I(A';E|E'X) <= |C| + 2|Q|", q.I_X_E_given_B + q.I_A_E_given_EX, ac + 2.0 * aq});
  r.checks.push_back({"E <= |C| + |Q| + I(A'>BX) - I(X;E|B)", x.E, ac + aq + q.coherent - q.I_X_E_given_B});
  return r;
}

BoundReport cef_octant_bounds(const SigmaDynamic& sigma, const RateTriple& x) {
  return cef_octant_bounds(dynamic_quantities(sigma), x);
}
BoundReport caq_bounds(const SigmaDynamic& sigma, const RateTriple& x) {
  return caq_bounds(dynamic_quantities(sigma), x);
}
BoundReport eaq_classical_bounds(const SigmaDynamic& sigma, const RateTriple& x) {
  return eaq_classical_bounds(dynamic_quantities(sigma), x);
}
BoundReport casr_octant_bounds(const SigmaStatic& sigma, const RateTriple& x) {
  return casr_octant_bounds(static_quantities(sigma), x);
}

GapResult ea_vs_tp_gap(const std::vector<OneShotPoint>& cef_points) {
  double reach = 1.0;
  for (const auto& p : cef_points) reach += std::abs(p.triple.Q) + std::abs(p.triple.E);
  GapResult g;
  g.quantum_rate = reach;
  const std::vector<LinearConstraint> cons{
      {Eigen::Vector3d(0, 1, 0), reach, LinearConstraint::Kind::Equal},
      {Eigen::Vector3d(1, 0, 0), 0.0, LinearConstraint::Kind::LessEqual},
      {Eigen::Vector3d(0, 0, 1), 0.0, LinearConstraint::Kind::LessEqual},
  };
  const Eigen::Vector3d ebits(0, 0, 1);
  const auto coded = maximize(assemble_region(cef_points), ebits, cons);
  const auto plain = maximize(unit_region(), ebits, cons);
  if (coded.status != Optimum::Status::Optimal || plain.status != Optimum::Status::Optimal) {
    throw GeometryError("teleportation comparison LP did not reach an optimum");
  }
  g.ebits_with_coding = coded.value;
  g.ebits_teleportation = plain.value;
  g.gap = coded.value - plain.value;
  return g;
}

}  // namespace qst
