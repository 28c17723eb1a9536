#pragma once

// One-shot rate points of the classically-enhanced father (dynamic) and
// classically-assisted state redistribution (static) protocols, the regions
// they generate with the unit cone, and the converse inequalities for each
// octant evaluated on an explicit state.

#include <string>
#include <vector>

#include "qst/assembly.hpp"
#include "qst/geometry.hpp"
#include "qst/unit.hpp"

namespace qst {

enum class PointKind { CEF, CASR };

const char* to_string(PointKind kind);

struct OneShotPoint {
  PointKind kind = PointKind::CEF;
  RateTriple triple;       ///< per copy
  std::string provenance;  ///< ensemble / instrument identifier
  int k = 1;
};

/// Entropic quantities of sigma^{XABE}, per copy.
struct DynamicQuantities {
  double I_X_B = 0.0;        ///< I(X;B)
  double I_AX_B = 0.0;       ///< I(AX;B)
  double I_A_B_given_X = 0.0;
  double I_A_E_given_X = 0.0;
  double coherent = 0.0;     ///< I(A>BX)
};

/// Entropic quantities of sigma^{XA'BEE'}, per copy.
struct StaticQuantities {
  double I_X_E_given_B = 0.0;      ///< I(X;E|B)
  double I_A_E_given_EX = 0.0;     ///< I(A';E|E'X)
  double I_A_B_given_X = 0.0;      ///< I(A';B|X)
  double I_A_Ep_given_X = 0.0;     ///< I(A';E'|X)
  double coherent = 0.0;           ///< I(A'>BX)
};

DynamicQuantities dynamic_quantities(const SigmaDynamic& sigma, int copies = 1);
StaticQuantities static_quantities(const SigmaStatic& sigma, int copies = 1);

/// (I(X;B), I(A;B|X)/2, -I(A;E|X)/2)
RateTriple cef_rates(const DynamicQuantities& q);
/// (-I(X;E|B), -I(A';E|E'X)/2, (I(A';B|X) - I(A';E'|X))/2)
RateTriple casr_rates(const StaticQuantities& q);

/// `copies` is the number of tensor copies the channel/state carries; rates
/// are divided by it.
OneShotPoint cef_point(const QuantumChannel& channel, const Ensemble& ensemble, std::string provenance = {},
                       int copies = 1);
OneShotPoint casr_point(const DensityMatrix& rho, const Instrument& instrument, std::string provenance = {},
                        int copies = 1);

/// hull(points + origin) + unit cone.
RateRegion assemble_region(const std::vector<OneShotPoint>& points);

QuantumChannel tensor_copies(const QuantumChannel& channel, int k);
/// k copies of a state on A, B regrouped as A = A1..Ak, B = B1..Bk.
DensityMatrix tensor_copies(const DensityMatrix& rho, int k);
Ensemble tensor_copies(const Ensemble& ensemble, int k);

struct BoundReport {
  std::string family;
  std::string octant;
  bool in_octant = false;  ///< x lies in the closed octant the bounds govern
  std::vector<BoundCheck> checks;

  bool passed(double tol) const;
  double min_slack() const;
};

/// (+,+,-): C+2Q <= I(AX;B); Q <= I(A>BX)+|E|; C+Q <= I(X;B)+I(A>BX)+|E|.
BoundReport cef_octant_bounds(const DynamicQuantities& q, const RateTriple& x);
/// (-,+,-): Q <= I(A>BX)+|E|; 2Q <= I(AX;B)+|C|.
BoundReport caq_bounds(const DynamicQuantities& q, const RateTriple& x);
/// (+,-,-): C <= I(AX;B)+2|Q|; C <= I(X;B)+I(A>BX)+|Q|+|E|.
BoundReport eaq_classical_bounds(const DynamicQuantities& q, const RateTriple& x);
/// (-,-,+): E <= I(A'>BX)+|Q|; |C|+2|Q| >= I(X;E|B)+I(A';E|E'X);
/// E <= |C|+|Q|+I(A'>BX)-I(X;E|B).
BoundReport casr_octant_bounds(const StaticQuantities& q, const RateTriple& x);

BoundReport cef_octant_bounds(const SigmaDynamic& sigma, const RateTriple& x);
BoundReport caq_bounds(const SigmaDynamic& sigma, const RateTriple& x);
BoundReport eaq_classical_bounds(const SigmaDynamic& sigma, const RateTriple& x);
BoundReport casr_octant_bounds(const SigmaStatic& sigma, const RateTriple& x);

/// Ebit savings of channel coding over plain teleportation once classical
/// communication is free: both strategies are projected onto C <= 0, E <= 0
/// and compared at a common quantum rate well beyond every generator.
struct GapResult {
  double gap = 0.0;
  double quantum_rate = 0.0;
  double ebits_with_coding = 0.0;     ///< E at that rate, channel coding + unit protocols
  double ebits_teleportation = 0.0;   ///< E at that rate, unit protocols only
};

GapResult ea_vs_tp_gap(const std::vector<OneShotPoint>& cef_points);

}  // namespace qst
