#pragma once

// Finite-dimensional states, channels and instruments with named subsystems.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qst {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenClip = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-10;

/// Upper bound on the total Hilbert-space dimension of any single state.
/// Adjustable at runtime; the default covers two copies of every model.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// Thrown when a state, channel or instrument violates its invariants, or when
/// an operation is applied to incompatible subsystems.
class QuantumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Subsystem {
  std::string name;
  int dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

using Labels = std::vector<Subsystem>;
using Group = std::vector<std::string>;

std::size_t total_dim(const Labels& labels);
std::vector<int> dims_of(const Labels& labels);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and positivity.
  DensityMatrix(Labels labels, Matrix matrix);

  const Labels& labels() const { return labels_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  bool has(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  const Subsystem& subsystem(std::string_view name) const;

  /// Smallest eigenvalue of the full matrix.
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, Labels labels, Matrix matrix)
      : labels_(std::move(labels)), matrix_(std::move(matrix)) {}

  friend DensityMatrix make_unchecked(Labels, Matrix);

  Labels labels_;
  Matrix matrix_;
};

/// Skips positivity checks; used internally where the construction guarantees
/// a valid state up to rounding (partial traces, unitary conjugation).
DensityMatrix make_unchecked(Labels labels, Matrix matrix);

class PureState {
 public:
  PureState(Labels labels, Vector vector);

  const Labels& labels() const { return labels_; }
  const Vector& vector() const { return vector_; }

  DensityMatrix density() const;

 private:
  Labels labels_;
  Vector vector_;
};

class QuantumChannel {
 public:
  QuantumChannel(int in_dim, int out_dim, std::vector<Matrix> kraus);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  static QuantumChannel identity(int dim);

 private:
  int in_dim_;
  int out_dim_;
  std::vector<Matrix> kraus_;
};

class Isometry {
 public:
  Isometry(int in_dim, Labels out_labels, Matrix matrix);

  int in_dim() const { return in_dim_; }
  const Labels& out_labels() const { return out_labels_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  int in_dim_;
  Labels out_labels_;
  Matrix matrix_;
};

/// Classically labelled collection of CP maps A -> A'. The Kraus operators of
/// all branches together must form a trace-preserving map.
struct InstrumentBranch {
  int outcome = 0;
  std::vector<Matrix> kraus;
};

class Instrument {
 public:
  Instrument(int in_dim, int out_dim, std::vector<InstrumentBranch> branches);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<InstrumentBranch>& branches() const { return branches_; }
  std::size_t max_kraus() const;

  static Instrument trivial(int dim);

 private:
  int in_dim_;
  int out_dim_;
  std::vector<InstrumentBranch> branches_;
};

// Structural operations. All of them address subsystems by name.

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const Group& keep);

/// Reorders subsystems; `order` must be a permutation of the label names.
DensityMatrix permute(const DensityMatrix& rho, const Group& order);
PureState permute(const PureState& psi, const Group& order);

/// Fuses adjacent subsystems `parts` (in that order) into a single subsystem.
DensityMatrix merge(const DensityMatrix& rho, const Group& parts, const std::string& name);
PureState merge(const PureState& psi, const Group& parts, const std::string& name);

DensityMatrix rename(const DensityMatrix& rho, const std::string& from, const std::string& to);

/// Canonical eigendecomposition purification. The environment has one basis
/// vector per nonzero eigenvalue (at least one).
PureState purify(const DensityMatrix& rho, const std::string& env);

/// Applies a norm-preserving `op` (out x in) to the named factor of a vector;
/// the factor is replaced in place by `out_labels`.
PureState apply_operator(const Matrix& op, const PureState& psi, const std::string& on,
                         const Labels& out_labels);

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho,
                            const std::string& on);

Isometry isometric_extension(const QuantumChannel& channel, const std::string& out,
                             const std::string& env);

DensityMatrix apply_isometry(const Isometry& v, const DensityMatrix& rho, const std::string& on);
PureState apply_isometry(const Isometry& v, const PureState& psi, const std::string& on);

struct InstrumentLabels {
  std::string output = "A'";
  std::string env = "E'";
  std::string flag = "X";
};

/// The extension of an instrument applied to a pure state on `on`. The
/// result is block diagonal in the classical flag: sum_x p(x) |x><x| (x) psi_x.
struct DilatedState {
  DensityMatrix state;
  std::vector<double> probabilities;
};

DilatedState dilate_instrument(const Instrument& instrument, const PureState& psi,
                               const std::string& on, const InstrumentLabels& labels = {});

}  // namespace qst
