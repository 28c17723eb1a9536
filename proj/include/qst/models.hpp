#pragma once

// Concrete channels and states with pinned conventions and closed-form
// reference values.

#include <map>
#include <optional>
#include <string>

#include "qst/geometry.hpp"
#include "qst/quantum.hpp"

namespace qst {

/// rho -> (1 - p/2) rho + (p/2) Z rho Z. At p = 1 the channel fully dephases.
QuantumChannel dephasing_channel(double p);

/// Qubit in, qutrit out: rho -> (1 - eps) rho (+) eps |e><e|, flag |e> = |2>.
QuantumChannel erasure_channel(double eps);

/// |Phi+> on A x B (dimension d each), as a density matrix.
DensityMatrix bell_state(int dim = 2);
PureState bell_vector(int dim = 2, const std::string& a = "A", const std::string& b = "B");

/// (1 - eps) Phi+^{AB} + eps pi^A (x) |e><e|^B, with B a qutrit.
DensityMatrix erased_state(double eps);

struct ErasedStateReference {
  double H_A;
  double H_B;
  double H_AB;
  double coherent_info;    ///< I(A>B)
  double half_I_AB;        ///< (1/2) I(A;B)
  double half_I_AE;        ///< (1/2) I(A;E)
};

ErasedStateReference erased_state_reference(double eps);

/// The mother point (0, -eps, 1 - eps) with the unit cone attached.
RateRegion erased_state_static_region(double eps);

/// Largest E at (C, Q) = (-consumed, 0) in the erased-state region: time
/// sharing between the origin and the hashing point (-2 eps, 0, 1 - 2 eps).
double erased_state_entanglement_boundary(double eps, double consumed_cbits);

struct DephasingReference {
  double quantum_capacity;     ///< 1 - H2(p/2)
  double environment_entropy;  ///< H2(p/2), on a maximally entangled input
  const char* note;
};

DephasingReference dephasing_reference(double p);

/// A parsed model spec: name(:key=value)*. Exactly one of channel/state is set.
struct Model {
  std::string name;
  std::map<std::string, double> params;
  std::optional<QuantumChannel> channel;
  std::optional<DensityMatrix> state;

  std::string spec() const;
};

/// Known models: "dephasing:p=..", "erasure:eps=..", "erased:eps=..",
/// "bell", "identity[:d=..]". Keys are validated per model.
Model parse_model(const std::string& spec);

}  // namespace qst
