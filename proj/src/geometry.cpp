#include "qst/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "qst/simplex.hpp"

namespace qst {

namespace {

constexpr double kGeomTol = 1e-9;

double scale_of(const std::vector<RateTriple>& points) {
  double s = 1.0;
  for (const auto& p : points) s = std::max({s, std::abs(p.C), std::abs(p.Q), std::abs(p.E)});
  return s;
}

Eigen::Vector3d scaled_normal(Eigen::Vector3d n) {
  n /= n.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n(i)) < 1e-13) n(i) = 0.0;
  }
  return n;
}

bool same_facet(const Facet& a, const Facet& b) {
  return (a.normal - b.normal).cwiseAbs().maxCoeff() <= kGeomTol && std::abs(a.offset - b.offset) <= kGeomTol;
}

// Rank of a set of direction vectors with a tolerance relative to the data.
int rank_of(const std::vector<Eigen::Vector3d>& dirs, double tol) {
  if (dirs.empty()) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dirs.size()), 3);
  for (std::size_t i = 0; i < dirs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = dirs[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++r;
  }
  return r;
}

std::vector<RateTriple> unique_points(const std::vector<RateTriple>& pts) {
  std::vector<RateTriple> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const RateTriple& a, const RateTriple& b) {
    return std::tie(a.C, a.Q, a.E) < std::tie(b.C, b.Q, b.E);
  });
  std::vector<RateTriple> out;
  for (const auto& p : sorted) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const RateTriple& q) {
      return max_abs_diff(p, q) <= 1e-12;
    });
    if (!dup) out.push_back(p);
  }
  return out;
}

std::vector<Ray> unique_rays(const std::vector<Ray>& rays) {
  std::vector<Ray> out;
  for (const auto& r : rays) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Ray& q) {
      return max_abs_diff(r.direction(), q.direction()) <= 1e-12;
    });
    if (!dup) out.push_back(r);
  }
  return out;
}

lp::Result membership_lp(const RateRegion& region, const RateTriple& x, double tol) {
  const auto np = static_cast<Eigen::Index>(region.points().size());
  const auto nr = static_cast<Eigen::Index>(region.rays().size());
  lp::Problem prob;
  prob.A = Eigen::MatrixXd::Zero(4, np + nr);
  prob.b = Eigen::VectorXd(4);
  for (Eigen::Index i = 0; i < np; ++i) {
    prob.A.col(i).head(3) = region.points()[static_cast<std::size_t>(i)].vec();
    prob.A(3, i) = 1.0;
  }
  for (Eigen::Index j = 0; j < nr; ++j) prob.A.col(np + j).head(3) = region.rays()[static_cast<std::size_t>(j)].direction().vec();
  prob.b.head(3) = x.vec();
  prob.b(3) = 1.0;
  return lp::solve(prob, tol);
}

}  // namespace

double max_abs_diff(const RateTriple& a, const RateTriple& b) {
  return std::max({std::abs(a.C - b.C), std::abs(a.Q - b.Q), std::abs(a.E - b.E)});
}

std::string to_string(const RateTriple& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.10g, %.10g, %.10g)", r.C, r.Q, r.E);
  return buf;
}

Ray::Ray(const RateTriple& direction) {
  const double n = direction.vec().norm();
  if (!(n > 1e-14) || !std::isfinite(n)) throw GeometryError("ray direction must be nonzero and finite");
  // Leave already-normalized input untouched so serialization round-trips.
  dir_ = std::abs(n - 1.0) <= 2e-16 ? direction : direction * (1.0 / n);
}

bool satisfies(const HalfSpaces& h, const RateTriple& x, double tol) {
  for (const auto& e : h.equalities) {
    if (std::abs(e.normal.dot(x.vec()) - e.offset) > tol) return false;
  }
  for (const auto& f : h.facets) {
    if (f.normal.dot(x.vec()) - f.offset > tol) return false;
  }
  return true;
}

// --- RateRegion ---------------------------------------------------------------

struct RateRegion::Cache {
  std::once_flag once;
  HalfSpaces h;
};

RateRegion::RateRegion(std::vector<RateTriple> points, std::vector<Ray> rays)
    : points_(std::move(points)), rays_(std::move(rays)), cache_(std::make_shared<Cache>()) {
  if (points_.empty()) throw GeometryError("a region needs at least one generator point");
  for (const auto& p : points_) {
    if (!std::isfinite(p.C) || !std::isfinite(p.Q) || !std::isfinite(p.E)) {
      throw GeometryError("generator point is not finite");
    }
  }
}

RateRegion::RateRegion(std::vector<RateTriple> points, std::vector<Ray> rays, std::vector<Facet> facets)
    : RateRegion(std::move(points), std::move(rays)) {
  for (const auto& f : facets) {
    for (const auto& p : points_) {
      if (f.normal.dot(p.vec()) - f.offset > kGeomTol) throw GeometryError("generator point violates a declared facet");
    }
    for (const auto& r : rays_) {
      if (f.normal.dot(r.direction().vec()) > kGeomTol) throw GeometryError("ray violates a declared facet");
    }
  }
}

const HalfSpaces& RateRegion::half_spaces() const {
  std::call_once(cache_->once, [this] { cache_->h = facets_3d(*this); });
  return cache_->h;
}

RateRegion minkowski_sum(const RateRegion& a, const RateRegion& b) {
  std::vector<RateTriple> points;
  points.reserve(a.points().size() * b.points().size());
  for (const auto& p : a.points()) {
    for (const auto& q : b.points()) points.push_back(p + q);
  }
  std::vector<Ray> rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  return RateRegion(unique_points(points), unique_rays(rays));
}

bool contains(const RateRegion& region, const RateTriple& x, double tol) {
  return membership_lp(region, x, tol).status == lp::Status::Optimal;
}

std::optional<Decomposition> decompose(const RateRegion& region, const RateTriple& x, double tol) {
  const auto res = membership_lp(region, x, tol);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  Decomposition d;
  const auto np = region.points().size();
  for (std::size_t i = 0; i < np; ++i) d.point_weights.push_back(res.x(static_cast<Eigen::Index>(i)));
  for (std::size_t j = 0; j < region.rays().size(); ++j) d.ray_weights.push_back(res.x(static_cast<Eigen::Index>(np + j)));
  d.residual = res.residual;
  return d;
}

RateRegion reduce(const RateRegion& region) {
  const auto rays = unique_rays(region.rays());
  const auto pts = unique_points(region.points());
  if (pts.size() <= 1) return RateRegion(pts, rays);
  // Greedy pass, then a cleanup pass over the survivors.
  std::vector<RateTriple> kept{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!contains(RateRegion(kept, rays), pts[i], 1e-11)) kept.push_back(pts[i]);
  }
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<RateTriple> others = kept;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    if (contains(RateRegion(others, rays), kept[i], 1e-11)) kept = std::move(others);
    else ++i;
  }
  return RateRegion(kept, rays);
}

HalfSpaces facets_3d(const RateRegion& input) {
  const RateRegion region = reduce(input);
  const auto& pts = region.points();
  const auto& rays = region.rays();
  const double tol = kGeomTol * scale_of(pts);

  std::vector<Eigen::Vector3d> dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(pts[i].vec() - pts[0].vec());
  for (const auto& r : rays) dirs.push_back(r.direction().vec());

  HalfSpaces h;
  // Orthonormal basis of the direction space and its complement.
  Eigen::Matrix3d basis = Eigen::Matrix3d::Identity();
  if (!dirs.empty()) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dirs.size()), 3);
    for (std::size_t i = 0; i < dirs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = dirs[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    basis = svd.matrixV();
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > tol) ++h.dimension;
    }
  }
  for (int i = h.dimension; i < 3; ++i) {
    const Eigen::Vector3d n = scaled_normal(basis.col(i));
    h.equalities.push_back({n, n.dot(pts[0].vec())});
  }
  const int k = h.dimension;
  if (k == 0) return h;

  std::vector<Eigen::Vector3d> candidates;
  if (k == 3) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Eigen::Vector3d dij = pts[j].vec() - pts[i].vec();
        for (std::size_t l = j + 1; l < pts.size(); ++l) candidates.push_back(dij.cross(pts[l].vec() - pts[i].vec()));
        for (const auto& r : rays) candidates.push_back(dij.cross(r.direction().vec()));
      }
    }
    for (std::size_t a = 0; a < rays.size(); ++a) {
      for (std::size_t b = a + 1; b < rays.size(); ++b) {
        candidates.push_back(rays[a].direction().vec().cross(rays[b].direction().vec()));
      }
    }
  } else if (k == 2) {
    const Eigen::Vector3d plane_normal = basis.col(2);
    for (const auto& d : dirs) candidates.push_back(plane_normal.cross(d));
  } else {
    candidates.push_back(basis.col(0));
  }

  for (const auto& c : candidates) {
    if (c.norm() <= 1e-12) continue;
    for (double sign : {1.0, -1.0}) {
      const Eigen::Vector3d n = sign * c.normalized();
      bool ok = true;
      for (const auto& r : rays) {
        if (n.dot(r.direction().vec()) > tol) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      double b = -std::numeric_limits<double>::infinity();
      for (const auto& p : pts) b = std::max(b, n.dot(p.vec()));
      std::vector<Eigen::Vector3d> tight;
      const RateTriple* anchor = nullptr;
      for (const auto& p : pts) {
        if (n.dot(p.vec()) >= b - tol) {
          if (anchor) tight.push_back(p.vec() - anchor->vec());
          else anchor = &p;
        }
      }
      for (const auto& r : rays) {
        if (std::abs(n.dot(r.direction().vec())) <= tol) tight.push_back(r.direction().vec());
      }
      if (rank_of(tight, tol) != k - 1) continue;
      const double m = n.cwiseAbs().maxCoeff();
      Facet f{scaled_normal(n), b / m};
      const bool dup = std::any_of(h.facets.begin(), h.facets.end(), [&](const Facet& g) { return same_facet(f, g); });
      if (!dup) h.facets.push_back(f);
    }
  }
  std::sort(h.facets.begin(), h.facets.end(), [](const Facet& a, const Facet& b) {
    return std::tie(a.normal(0), a.normal(1), a.normal(2), a.offset) <
           std::tie(b.normal(0), b.normal(1), b.normal(2), b.offset);
  });
  return h;
}

// --- orthants -------------------------------------------------------------------

OrthantSpec OrthantSpec::parse(const std::string& text) {
  OrthantSpec o;
  int k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '(' || ch == ')' || ch == ',' || ch == ' ') continue;
    if (k >= 3) throw GeometryError("orthant spec has more than three signs: '" + text + "'");
    if (ch == '+') o.signs[static_cast<std::size_t>(k++)] = Sign::Pos;
    else if (ch == '-') o.signs[static_cast<std::size_t>(k++)] = Sign::Neg;
    else if (ch == '0') o.signs[static_cast<std::size_t>(k++)] = Sign::Zero;
    else if (ch == '*') o.signs[static_cast<std::size_t>(k++)] = Sign::Any;
    else if (text.compare(i, 2, "\xC2\xB1") == 0) {
      o.signs[static_cast<std::size_t>(k++)] = Sign::Any;
      ++i;
    } else {
      throw GeometryError("bad character in orthant spec: '" + text + "'");
    }
  }
  if (k != 3) throw GeometryError("orthant spec needs three signs: '" + text + "'");
  return o;
}

std::string OrthantSpec::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) s += ",";
    switch (signs[i]) {
      case Sign::Pos: s += "+"; break;
      case Sign::Neg: s += "-"; break;
      case Sign::Zero: s += "0"; break;
      case Sign::Any: s += "*"; break;
    }
  }
  return s + ")";
}

bool OrthantSpec::contains(const RateTriple& x, double tol) const {
  for (int i = 0; i < 3; ++i) {
    const double v = x[i];
    switch (signs[static_cast<std::size_t>(i)]) {
      case Sign::Pos: if (v < -tol) return false; break;
      case Sign::Neg: if (v > tol) return false; break;
      case Sign::Zero: if (std::abs(v) > tol) return false; break;
      case Sign::Any: break;
    }
  }
  return true;
}

bool OrthantSpec::unconstrained() const {
  return std::all_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::Any; });
}

std::optional<RateRegion> clip(const RateRegion& region, const OrthantSpec& orthant) {
  if (orthant.unconstrained()) return region;
  const HalfSpaces& h = region.half_spaces();
  std::vector<Facet> cons = h.facets;
  for (const auto& e : h.equalities) {
    cons.push_back(e);
    cons.push_back({-e.normal, -e.offset});
  }
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    u(i) = 1.0;
    switch (orthant.signs[static_cast<std::size_t>(i)]) {
      case Sign::Pos: cons.push_back({-u, 0.0}); break;
      case Sign::Neg: cons.push_back({u, 0.0}); break;
      case Sign::Zero:
        cons.push_back({u, 0.0});
        cons.push_back({-u, 0.0});
        break;
      case Sign::Any: break;
    }
  }
  const double tol = kGeomTol * scale_of(region.points());
  auto feasible = [&](const Eigen::Vector3d& x) {
    return std::all_of(cons.begin(), cons.end(), [&](const Facet& f) { return f.normal.dot(x) <= f.offset + tol; });
  };

  std::vector<Eigen::Vector3d> normals;
  for (const auto& f : cons) normals.push_back(f.normal);
  if (rank_of(normals, 1e-12) < 3) {
    throw GeometryError("clipped region contains a line; vertex enumeration needs a pointed polyhedron");
  }

  std::vector<RateTriple> vertices;
  const std::size_t m = cons.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t l = j + 1; l < m; ++l) {
        Eigen::Matrix3d a;
        a.row(0) = cons[i].normal.transpose();
        a.row(1) = cons[j].normal.transpose();
        a.row(2) = cons[l].normal.transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d x = a.partialPivLu().solve(Eigen::Vector3d(cons[i].offset, cons[j].offset, cons[l].offset));
        if (feasible(x)) vertices.push_back(RateTriple::from(x));
      }
    }
  }
  vertices = unique_points(vertices);
  if (vertices.empty()) return std::nullopt;

  std::vector<Ray> rays;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Eigen::Vector3d d = cons[i].normal.cross(cons[j].normal);
      if (d.norm() < 1e-12) continue;
      for (double sign : {1.0, -1.0}) {
        const Eigen::Vector3d dir = sign * d.normalized();
        const bool recedes =
            std::all_of(cons.begin(), cons.end(), [&](const Facet& f) { return f.normal.dot(dir) <= 1e-12; });
        if (recedes) rays.emplace_back(RateTriple::from(dir));
      }
    }
  }
  // Snap values within rounding of zero so sign-clipped generators sit exactly
  // on the coordinate planes.
  for (auto& v : vertices) {
    if (std::abs(v.C) < 1e-13) v.C = 0.0;
    if (std::abs(v.Q) < 1e-13) v.Q = 0.0;
    if (std::abs(v.E) < 1e-13) v.E = 0.0;
  }
  return reduce(RateRegion(vertices, unique_rays(rays)));
}

std::optional<RateRegion> slide_and_clip(const RateRegion& region, const RateTriple& direction,
                                         const OrthantSpec& target) {
  const RateRegion line({RateTriple{}}, {Ray(direction)});
  return clip(minkowski_sum(region, line), target);
}

std::optional<RateRegion> unslide_and_clip(const RateRegion& region, const RateTriple& direction,
                                           const OrthantSpec& target) {
  return slide_and_clip(region, -direction, target);
}

Optimum maximize(const RateRegion& region, const Eigen::Vector3d& objective,
                 const std::vector<LinearConstraint>& constraints) {
  const auto np = static_cast<Eigen::Index>(region.points().size());
  const auto nr = static_cast<Eigen::Index>(region.rays().size());
  Eigen::Index nslack = 0;
  for (const auto& c : constraints) nslack += c.kind == LinearConstraint::Kind::LessEqual ? 1 : 0;
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(constraints.size());
  const Eigen::Index n = np + nr + nslack;

  Eigen::MatrixXd gen(3, np + nr);
  for (Eigen::Index i = 0; i < np; ++i) gen.col(i) = region.points()[static_cast<std::size_t>(i)].vec();
  for (Eigen::Index j = 0; j < nr; ++j) gen.col(np + j) = region.rays()[static_cast<std::size_t>(j)].direction().vec();

  lp::Problem prob;
  prob.A = Eigen::MatrixXd::Zero(m, n);
  prob.b = Eigen::VectorXd::Zero(m);
  prob.c = Eigen::VectorXd::Zero(n);
  prob.A.row(0).head(np).setOnes();
  prob.b(0) = 1.0;
  Eigen::Index slack = np + nr;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k) + 1;
    prob.A.row(row).head(np + nr) = constraints[k].a.transpose() * gen;
    prob.b(row) = constraints[k].b;
    if (constraints[k].kind == LinearConstraint::Kind::LessEqual) prob.A(row, slack++) = 1.0;
  }
  prob.c.head(np + nr) = -(objective.transpose() * gen).transpose();

  const auto res = lp::solve(prob, 1e-10);
  Optimum out;
  if (res.status == lp::Status::Infeasible) return out;
  if (res.status == lp::Status::Unbounded) {
    out.status = Optimum::Status::Unbounded;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.status = Optimum::Status::Optimal;
  out.argmax = RateTriple::from(gen * res.x.head(np + nr));
  out.value = objective.dot(out.argmax.vec());
  return out;
}

}  // namespace qst
