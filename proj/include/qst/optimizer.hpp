#pragma once

// Sampling sweeps over ensembles (dynamic case) and instruments (static case)
// that trace one-shot trade-off surfaces.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qst/assembly.hpp"
#include "qst/geometry.hpp"
#include "qst/tradeoff.hpp"

namespace qst {

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t max_outcomes = 4;
  /// Golden-section iterations on the Schmidt angle of the structured
  /// qubit family; 0 disables refinement.
  std::size_t refine_iters = 0;
  /// Number of Schmidt angles in [0, pi/2] for the structured qubit family;
  /// nullopt disables it.
  std::optional<std::size_t> grid;
  /// Tensor copies of the resource (1 or 2); rates are reported per copy.
  int k = 1;
  std::size_t workers = 1;

  void validate() const;
};

/// Haar-random unitary columns: QR of a complex Gaussian matrix with the
/// diagonal of R made positive. Returns a rows x cols isometry.
Matrix haar_isometry(std::mt19937_64& rng, int rows, int cols);
Vector haar_state(std::mt19937_64& rng, int dim);
/// Uniform point on the probability simplex via sorted-uniform gaps.
std::vector<double> simplex_sample(std::mt19937_64& rng, std::size_t n);

/// Random instrument dim -> dim with between 1 and max_outcomes branches of
/// one or two Kraus operators each.
Instrument random_instrument(std::mt19937_64& rng, int dim, std::size_t max_outcomes);
Ensemble random_ensemble(std::mt19937_64& rng, int dim, std::size_t max_outcomes);

/// cos(theta)|00> + sin(theta)|11>.
Vector schmidt_state(double theta);

/// CEF points from random ensembles plus, for qubit channels with a grid, the
/// structured Schmidt family. Sorted lexicographically; deterministic in the
/// seed and independent of the worker count.
std::vector<OneShotPoint> sweep_cef(const QuantumChannel& channel, const SweepConfig& cfg);

/// CASR points from random instruments; the trivial instrument is always
/// the first sample.
std::vector<OneShotPoint> sweep_casr(const DensityMatrix& rho, const SweepConfig& cfg);

/// max over swept points of I(A>BX), which equals Q + E of a CEF point.
double max_coherent_information(const std::vector<OneShotPoint>& cef_points);

/// Canonical lexicographic order by (C, Q, E), then provenance.
void sort_points(std::vector<OneShotPoint>& points);

GapResult ea_vs_tp_gap(const QuantumChannel& channel, const SweepConfig& cfg);

/// How the eliminated coordinate is treated when projecting to a plane.
enum class Elimination { Free, Zero, NonPositive, NonNegative };

struct Projection {
  int drop = 0;  ///< 0 = C, 1 = Q, 2 = E
  Elimination mode = Elimination::Free;
};

/// Upper-right Pareto frontier of the projected region, ordered by the first
/// remaining coordinate. Head and tail rays give the unbounded ends.
struct BoundaryCurve {
  std::array<std::string, 2> axes;
  std::vector<Eigen::Vector2d> vertices;
  std::optional<Eigen::Vector2d> head;  ///< direction leaving the first vertex
  std::optional<Eigen::Vector2d> tail;  ///< direction leaving the last vertex
};

BoundaryCurve boundary_curve(const std::vector<OneShotPoint>& points, const Projection& projection);
BoundaryCurve boundary_curve(const RateRegion& region, const Projection& projection);

}  // namespace qst
