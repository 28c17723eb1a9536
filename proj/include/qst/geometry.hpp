#pragma once

// Rate regions in (C, Q, E) space. A region is convex-hull(points) +
// cone(rays); its half-space description is derived on demand and cached.
//
// Sign convention: negative rates are consumed, positive rates generated.

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qst {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateTriple {
  double C = 0.0;
  double Q = 0.0;
  double E = 0.0;

  Eigen::Vector3d vec() const { return {C, Q, E}; }
  static RateTriple from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

  double operator[](int i) const { return i == 0 ? C : (i == 1 ? Q : E); }

  RateTriple operator+(const RateTriple& o) const { return {C + o.C, Q + o.Q, E + o.E}; }
  RateTriple operator-(const RateTriple& o) const { return {C - o.C, Q - o.Q, E - o.E}; }
  RateTriple operator*(double s) const { return {C * s, Q * s, E * s}; }
  RateTriple operator-() const { return {-C, -Q, -E}; }
  friend RateTriple operator*(double s, const RateTriple& r) { return r * s; }
  friend bool operator==(const RateTriple&, const RateTriple&) = default;
};

double max_abs_diff(const RateTriple& a, const RateTriple& b);
std::string to_string(const RateTriple& r);

/// Unit-norm recession direction.
class Ray {
 public:
  explicit Ray(const RateTriple& direction);
  const RateTriple& direction() const { return dir_; }

 private:
  RateTriple dir_;
};

/// normal . x <= offset (or == offset for affine-hull equalities).
struct Facet {
  Eigen::Vector3d normal;
  double offset = 0.0;
};

struct HalfSpaces {
  int dimension = 0;               ///< affine dimension of the region
  std::vector<Facet> equalities;   ///< affine hull, empty when full-dimensional
  std::vector<Facet> facets;       ///< irredundant inequalities within the hull
  bool full_space() const { return dimension == 3 && facets.empty(); }
};

bool satisfies(const HalfSpaces& h, const RateTriple& x, double tol = 1e-9);

class RateRegion {
 public:
  /// `points` must be nonempty; list the origin explicitly when intended.
  RateRegion(std::vector<RateTriple> points, std::vector<Ray> rays = {});
  RateRegion(std::vector<RateTriple> points, std::vector<Ray> rays, std::vector<Facet> facets);

  const std::vector<RateTriple>& points() const { return points_; }
  const std::vector<Ray>& rays() const { return rays_; }

  /// Derived half-space description; computed once, safe for concurrent readers.
  const HalfSpaces& half_spaces() const;

 private:
  struct Cache;
  std::vector<RateTriple> points_;
  std::vector<Ray> rays_;
  std::shared_ptr<Cache> cache_;
};

RateRegion minkowski_sum(const RateRegion& a, const RateRegion& b);

/// LP membership: exists convex weights on points and nonnegative ray weights
/// reproducing x with L1 residual <= tol.
bool contains(const RateRegion& region, const RateTriple& x, double tol = 1e-8);

struct Decomposition {
  std::vector<double> point_weights;
  std::vector<double> ray_weights;
  double residual = 0.0;
};

std::optional<Decomposition> decompose(const RateRegion& region, const RateTriple& x, double tol = 1e-8);

/// Irredundant H-representation; normals scaled to max |component| = 1.
HalfSpaces facets_3d(const RateRegion& region);

/// Generators with every non-extreme point removed.
RateRegion reduce(const RateRegion& region);

enum class Sign { Pos, Neg, Zero, Any };

struct OrthantSpec {
  std::array<Sign, 3> signs{Sign::Any, Sign::Any, Sign::Any};

  /// Accepts "+-0", "(+,-,0)", "+-*", with '*' or "±" meaning unconstrained.
  static OrthantSpec parse(const std::string& text);
  std::string str() const;
  bool contains(const RateTriple& x, double tol = 0.0) const;
  bool unconstrained() const;
};

/// Intersection with a signed orthant; nullopt when empty.
std::optional<RateRegion> clip(const RateRegion& region, const OrthantSpec& orthant);

/// f: S -> (S + L) ∩ target, where L is the half line along `direction`.
std::optional<RateRegion> slide_and_clip(const RateRegion& region, const RateTriple& direction,
                                         const OrthantSpec& target);
/// f̂: S -> (S - L) ∩ target.
std::optional<RateRegion> unslide_and_clip(const RateRegion& region, const RateTriple& direction,
                                           const OrthantSpec& target);

struct LinearConstraint {
  enum class Kind { LessEqual, Equal };
  Eigen::Vector3d a;
  double b = 0.0;
  Kind kind = Kind::LessEqual;
};

struct Optimum {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double value = 0.0;
  RateTriple argmax;
};

/// maximize objective . x over x in region subject to extra constraints.
Optimum maximize(const RateRegion& region, const Eigen::Vector3d& objective,
                 const std::vector<LinearConstraint>& constraints = {});

}  // namespace qst
