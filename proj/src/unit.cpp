#include "qst/unit.hpp"

#include <algorithm>
#include <cmath>

namespace qst {

std::array<UnitProtocol, 3> unit_protocols() {
  return {{{"TP", kTeleportation}, {"SD", kSuperDense}, {"ED", kEntanglementDistribution}}};
}

RateRegion unit_region() {
  return RateRegion({RateTriple{}}, {Ray(kTeleportation), Ray(kSuperDense), Ray(kEntanglementDistribution)});
}

std::vector<Facet> unit_facets() {
  return {{Eigen::Vector3d(1.0, 1.0, 1.0), 0.0},
          {Eigen::Vector3d(0.0, 1.0, 1.0), 0.0},
          {Eigen::Vector3d(0.5, 1.0, 0.0), 0.0}};
}

UnitCoefficients unit_coefficients(const RateTriple& x) {
  // Inverse of the matrix whose columns are TP, SD, ED.
  return {-(x.C + x.Q + x.E) / 2.0, -(x.Q + x.E) / 2.0, -(x.C + 2.0 * x.Q) / 2.0};
}

bool OctantVerdict::passed(double tol) const {
  return std::all_of(checks.begin(), checks.end(), [&](const BoundCheck& c) { return c.slack() >= -tol; });
}

bool UnitOctantReport::passed(double tol) const {
  return std::all_of(octants.begin(), octants.end(), [&](const OctantVerdict& v) { return v.passed(tol); });
}

namespace {

OctantVerdict evaluate_octant(int sc, int sq, int se, const RateTriple& x) {
  auto sym = [](int s) { return s > 0 ? "+" : "-"; };
  OctantVerdict v;
  v.octant = std::string("(") + sym(sc) + "," + sym(sq) + "," + sym(se) + ")";
  const double aq = std::abs(x.Q), ae = std::abs(x.E), ac = std::abs(x.C);
  if (sc > 0 && sq > 0) {
    // (+,+,+) and (+,+,-): only the E axis boundary survives.
    v.empty = true;
    v.checks.push_back({"C <= 0", x.C, 0.0});
    v.checks.push_back({"Q <= 0", x.Q, 0.0});
    if (se > 0) v.checks.push_back({"E <= 0", x.E, 0.0});
  } else if (sc < 0 && sq > 0 && se > 0) {
    v.empty = true;
    v.checks.push_back({"Q <= 0", x.Q, 0.0});
    v.checks.push_back({"E <= 0", x.E, 0.0});
  } else if (sc > 0 && sq < 0 && se > 0) {
    v.checks.push_back({"C + E <= |Q|", x.C + x.E, aq});
  } else if (sc > 0 && sq < 0 && se < 0) {
    v.checks.push_back({"C <= 2|Q|", x.C, 2.0 * aq});
    v.checks.push_back({"C <= |Q| + |E|", x.C, aq + ae});
  } else if (sc < 0 && sq > 0 && se < 0) {
    v.checks.push_back({"Q <= |E|", x.Q, ae});
    v.checks.push_back({"2Q <= |C|", 2.0 * x.Q, ac});
  } else if (sc < 0 && sq < 0 && se > 0) {
    v.checks.push_back({"E <= |Q|", x.E, aq});
  }
  // (-,-,-) is entirely achievable.
  return v;
}

}  // namespace

UnitOctantReport octant_bound_check(const RateTriple& x) {
  UnitOctantReport report;
  for (int sc : {1, -1}) {
    if (sc * x.C < 0.0) continue;
    for (int sq : {1, -1}) {
      if (sq * x.Q < 0.0) continue;
      for (int se : {1, -1}) {
        if (se * x.E < 0.0) continue;
        report.octants.push_back(evaluate_octant(sc, sq, se, x));
      }
    }
  }
  return report;
}

}  // namespace qst
