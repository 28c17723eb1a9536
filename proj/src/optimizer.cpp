#include "qst/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "qst/entropy.hpp"
#include "qst/unit.hpp"

namespace qst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string angle_tag(double theta) {
  std::ostringstream os;
  os.precision(17);
  os << theta;
  return os.str();
}

std::vector<double> angle_grid(std::size_t n) {
  std::vector<double> out;
  if (n == 1) return {std::numbers::pi / 4.0};
  for (std::size_t j = 0; j < n; ++j) out.push_back(static_cast<double>(j) * (std::numbers::pi / 2.0) / static_cast<double>(n - 1));
  return out;
}

Ensemble single(double theta) { return Ensemble(2, 2, {{1.0, schmidt_state(theta)}}); }

Ensemble schmidt_pair(double theta) {
  return Ensemble(2, 2, {{0.5, schmidt_state(theta)}, {0.5, schmidt_state(std::numbers::pi / 2.0 - theta)}});
}

}  // namespace

void SweepConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (max_outcomes < 1 || max_outcomes > 16) throw std::invalid_argument("max_outcomes must lie in [1, 16]");
  if (k < 1 || k > 2) throw std::invalid_argument("k must be 1 or 2");
  if (grid && *grid < 1) throw std::invalid_argument("grid needs at least one angle");
}

Matrix haar_isometry(std::mt19937_64& rng, int rows, int cols) {
  if (rows < cols) throw QuantumError("isometry needs rows >= cols");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Vector haar_state(std::mt19937_64& rng, int dim) { return haar_isometry(rng, dim, 1).col(0); }

std::vector<double> simplex_sample(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> cuts{0.0};
  for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(unif(rng));
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(cuts[i + 1] - cuts[i]);
  // Absorb rounding so the weights sum to one exactly enough for validation.
  double s = 0.0;
  for (double v : p) s += v;
  for (double& v : p) v /= s;
  return p;
}

Instrument random_instrument(std::mt19937_64& rng, int dim, std::size_t max_outcomes) {
  std::uniform_int_distribution<std::size_t> outcomes(1, max_outcomes);
  std::uniform_int_distribution<int> per_branch(1, 2);
  const std::size_t nx = outcomes(rng);
  std::vector<int> counts;
  int total = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    counts.push_back(per_branch(rng));
    total += counts.back();
  }
  const Matrix v = haar_isometry(rng, dim * total, dim);
  std::vector<InstrumentBranch> branches;
  int row = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    InstrumentBranch b{static_cast<int>(x), {}};
    for (int j = 0; j < counts[x]; ++j, row += dim) b.kraus.push_back(v.middleRows(row, dim));
    branches.push_back(std::move(b));
  }
  return Instrument(dim, dim, std::move(branches));
}

Ensemble random_ensemble(std::mt19937_64& rng, int dim, std::size_t max_outcomes) {
  std::uniform_int_distribution<std::size_t> outcomes(1, max_outcomes);
  const std::size_t n = outcomes(rng);
  const auto probs = simplex_sample(rng, n);
  std::vector<EnsembleEntry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({probs[i], haar_state(rng, dim * dim)});
  return Ensemble(dim, dim, std::move(entries), max_outcomes);
}

Vector schmidt_state(double theta) {
  Vector v = Vector::Zero(4);
  v(0) = std::cos(theta);
  v(3) = std::sin(theta);
  return v;
}

void sort_points(std::vector<OneShotPoint>& points) {
  std::sort(points.begin(), points.end(), [](const OneShotPoint& a, const OneShotPoint& b) {
    return std::tie(a.triple.C, a.triple.Q, a.triple.E, a.provenance) <
           std::tie(b.triple.C, b.triple.Q, b.triple.E, b.provenance);
  });
}

std::vector<OneShotPoint> sweep_cef(const QuantumChannel& base, const SweepConfig& cfg) {
  cfg.validate();
  const QuantumChannel channel = tensor_copies(base, cfg.k);
  const int dim = channel.in_dim();
  std::vector<OneShotPoint> points(cfg.samples);
  parallel_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    auto rng = sample_rng(cfg.seed, i);
    const Ensemble ens = random_ensemble(rng, dim, cfg.max_outcomes);
    points[i] = cef_point(channel, ens, "random:seed=" + std::to_string(cfg.seed) + ":i=" + std::to_string(i), cfg.k);
  });

  if (cfg.grid && base.in_dim() == 2) {
    const auto grid = angle_grid(*cfg.grid);
    std::vector<OneShotPoint> structured(2 * grid.size());
    parallel_for(grid.size(), cfg.workers, [&](std::size_t j) {
      const double theta = grid[j];
      const std::string tag = "schmidt:theta=" + angle_tag(theta);
      structured[2 * j] = cef_point(channel, tensor_copies(single(theta), cfg.k), tag, cfg.k);
      structured[2 * j + 1] = cef_point(channel, tensor_copies(schmidt_pair(theta), cfg.k), tag + ":pair", cfg.k);
    });
    points.insert(points.end(), structured.begin(), structured.end());

    if (cfg.refine_iters > 0) {
      auto coherent = [&](double theta) {
        const auto p = cef_point(channel, tensor_copies(single(theta), cfg.k), {}, cfg.k);
        return p.triple.Q + p.triple.E;
      };
      const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double lo = 0.0, hi = std::numbers::pi / 2.0;
      double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
      double f1 = coherent(x1), f2 = coherent(x2);
      for (std::size_t it = 0; it < cfg.refine_iters; ++it) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = coherent(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = coherent(x1);
        }
      }
      const double best = 0.5 * (lo + hi);
      points.push_back(cef_point(channel, tensor_copies(single(best), cfg.k),
                                 "schmidt:theta=" + angle_tag(best) + ":refined", cfg.k));
    }
  }
  sort_points(points);
  return points;
}

std::vector<OneShotPoint> sweep_casr(const DensityMatrix& base, const SweepConfig& cfg) {
  cfg.validate();
  const DensityMatrix rho = tensor_copies(base, cfg.k);
  const int dim = rho.subsystem("A").dim;
  std::vector<OneShotPoint> points(cfg.samples);
  parallel_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    if (i == 0) {
      points[i] = casr_point(rho, Instrument::trivial(dim), "trivial", cfg.k);
      return;
    }
    auto rng = sample_rng(cfg.seed, i);
    const Instrument inst = random_instrument(rng, dim, cfg.max_outcomes);
    points[i] = casr_point(rho, inst, "random:seed=" + std::to_string(cfg.seed) + ":i=" + std::to_string(i), cfg.k);
  });
  sort_points(points);
  return points;
}

double max_coherent_information(const std::vector<OneShotPoint>& cef_points) {
  double best = 0.0;
  for (const auto& p : cef_points) best = std::max(best, p.triple.Q + p.triple.E);
  return best;
}

GapResult ea_vs_tp_gap(const QuantumChannel& channel, const SweepConfig& cfg) {
  return ea_vs_tp_gap(sweep_cef(channel, cfg));
}

// --- boundary curves ------------------------------------------------------------

BoundaryCurve boundary_curve(const std::vector<OneShotPoint>& points, const Projection& projection) {
  return boundary_curve(assemble_region(points), projection);
}

BoundaryCurve boundary_curve(const RateRegion& region, const Projection& projection) {
  static const char* kAxis[] = {"C", "Q", "E"};
  if (projection.drop < 0 || projection.drop > 2) throw GeometryError("projection must drop C, Q or E");
  OrthantSpec spec;
  const auto d = static_cast<std::size_t>(projection.drop);
  switch (projection.mode) {
    case Elimination::Free: break;
    case Elimination::Zero: spec.signs[d] = Sign::Zero; break;
    case Elimination::NonPositive: spec.signs[d] = Sign::Neg; break;
    case Elimination::NonNegative: spec.signs[d] = Sign::Pos; break;
  }
  const auto sliced = clip(region, spec);
  BoundaryCurve curve;
  int u = projection.drop == 0 ? 1 : 0;
  int v = projection.drop == 2 ? 1 : 2;
  curve.axes = {kAxis[u], kAxis[v]};
  if (!sliced) return curve;

  auto project = [&](const RateTriple& x) { return Eigen::Vector2d(x[u], x[v]); };
  std::vector<Eigen::Vector2d> pts, rays;
  for (const auto& p : sliced->points()) pts.push_back(project(p));
  for (const auto& r : sliced->rays()) {
    const Eigen::Vector2d pr = project(r.direction());
    if (pr.norm() > 1e-12) rays.push_back(pr.normalized());
  }
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;

  std::vector<Eigen::Vector2d> dirs = rays;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if ((pts[j] - pts[i]).norm() > tol) dirs.push_back((pts[j] - pts[i]).normalized());
    }
  }

  struct Edge {
    Eigen::Vector2d normal;
    double offset;
  };
  std::vector<Edge> edges;
  for (const auto& dir : dirs) {
    for (double sign : {1.0, -1.0}) {
      const Eigen::Vector2d n = sign * Eigen::Vector2d(-dir(1), dir(0));
      if (std::any_of(rays.begin(), rays.end(), [&](const Eigen::Vector2d& r) { return n.dot(r) > tol; })) continue;
      double b = -std::numeric_limits<double>::infinity();
      for (const auto& p : pts) b = std::max(b, n.dot(p));
      if (n(0) < -tol || n(1) < -tol) continue;  // not on the upper-right frontier
      const bool dup = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return (e.normal - n).norm() <= 1e-9 && std::abs(e.offset - b) <= tol;
      });
      if (!dup) edges.push_back({n, b});
    }
  }

  // Frontier vertices: generator points tight on some frontier edge.
  for (const auto& p : pts) {
    const bool tight = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.normal.dot(p) >= e.offset - tol; });
    const bool dup = std::any_of(curve.vertices.begin(), curve.vertices.end(),
                                 [&](const Eigen::Vector2d& q) { return (q - p).norm() <= tol; });
    if (tight && !dup) curve.vertices.push_back(p);
  }
  if (edges.empty() && pts.size() == 1) curve.vertices = pts;
  std::sort(curve.vertices.begin(), curve.vertices.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) > b(1));
  });
  // Drop points lying in the interior of a frontier segment.
  for (std::size_t i = 1; i + 1 < curve.vertices.size();) {
    const Eigen::Vector2d a = curve.vertices[i] - curve.vertices[i - 1];
    const Eigen::Vector2d b = curve.vertices[i + 1] - curve.vertices[i];
    if (std::abs(a(0) * b(1) - a(1) * b(0)) <= tol) curve.vertices.erase(curve.vertices.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }

  for (const auto& r : rays) {
    const bool on_frontier = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return std::abs(e.normal.dot(r)) <= tol; });
    if (!on_frontier) continue;
    if (r(0) < -tol || (std::abs(r(0)) <= tol && r(1) > 0)) curve.head = r;
    else curve.tail = r;
  }
  return curve;
}

}  // namespace qst
