#pragma once

// The noiseless unit protocols and the region they generate.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qst/geometry.hpp"

namespace qst {

struct UnitProtocol {
  std::string name;
  RateTriple vector;
};

inline constexpr RateTriple kTeleportation{-2.0, 1.0, -1.0};
inline constexpr RateTriple kSuperDense{2.0, -1.0, -1.0};
inline constexpr RateTriple kEntanglementDistribution{0.0, -1.0, 1.0};

std::array<UnitProtocol, 3> unit_protocols();

/// cone(TP) + cone(SD) + cone(ED) with the origin as its only point. Waste of
/// any single resource already lies in this cone: (-1,0,0) = (TP+ED)/2,
/// (0,0,-1) = (TP+SD)/2, (0,-1,0) = ED + (0,0,-1).
RateRegion unit_region();

/// Facets C+Q+E <= 0, Q+E <= 0, C+2Q <= 0 of the unit region, scaled to
/// max |component| = 1.
std::vector<Facet> unit_facets();

/// Weights of TP, SD, ED reproducing x.
struct UnitCoefficients {
  double tp = 0.0;
  double sd = 0.0;
  double ed = 0.0;
  bool feasible(double tol = 1e-9) const { return tp >= -tol && sd >= -tol && ed >= -tol; }
};

UnitCoefficients unit_coefficients(const RateTriple& x);

/// One converse inequality lhs <= rhs, reported with slack rhs - lhs.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

struct OctantVerdict {
  std::string octant;  ///< e.g. "(+,-,+)"
  bool empty = false;  ///< octant contains no achievable point off its boundary
  std::vector<BoundCheck> checks;
  bool passed(double tol) const;
};

struct UnitOctantReport {
  std::vector<OctantVerdict> octants;  ///< every closed octant containing x
  bool passed(double tol = 1e-9) const;
};

/// Evaluates the per-octant converse inequalities for each closed octant that
/// contains x. x is achievable iff at least one of them passes.
UnitOctantReport octant_bound_check(const RateTriple& x);

}  // namespace qst
