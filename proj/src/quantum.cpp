#include "qst/quantum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>

namespace qst {

namespace {

std::atomic<std::size_t> g_dimension_cap{1024};

void check_cap(std::size_t dim) {
  if (dim > g_dimension_cap.load()) {
    throw QuantumError("total dimension " + std::to_string(dim) + " exceeds cap " +
                       std::to_string(g_dimension_cap.load()));
  }
}

void check_labels(const Labels& labels) {
  std::set<std::string> seen;
  for (const auto& s : labels) {
    if (s.dim < 1) throw QuantumError("subsystem '" + s.name + "' has dimension < 1");
    if (!seen.insert(s.name).second) throw QuantumError("duplicate subsystem label '" + s.name + "'");
  }
}

std::size_t find_label(const Labels& labels, std::string_view name) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].name == name) return i;
  }
  throw QuantumError("unknown subsystem label '" + std::string(name) + "'");
}

// Row-major strides: the first label is the most significant digit.
std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(dims[i]);
  return s;
}

// Maps every old flat index to its flat index after reordering the factors.
std::vector<std::size_t> index_permutation(const std::vector<int>& dims,
                                           const std::vector<std::size_t>& perm) {
  const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                        [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
  std::vector<int> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);
  std::vector<std::size_t> map(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      const std::size_t digit = (idx / old_strides[perm[k]]) % static_cast<std::size_t>(dims[perm[k]]);
      out += digit * new_strides[k];
    }
    map[idx] = out;
  }
  return map;
}

std::vector<std::size_t> order_to_perm(const Labels& labels, const Group& order) {
  if (order.size() != labels.size()) throw QuantumError("permutation must list every subsystem exactly once");
  std::vector<std::size_t> perm;
  std::set<std::size_t> used;
  for (const auto& name : order) {
    const auto i = find_label(labels, name);
    if (!used.insert(i).second) throw QuantumError("permutation repeats subsystem '" + name + "'");
    perm.push_back(i);
  }
  return perm;
}

// Applies `op` (out x d) to factor `pos` of every column of `m`.
Matrix apply_to_columns(const Matrix& op, const Matrix& m, const std::vector<int>& dims, std::size_t pos) {
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= static_cast<std::size_t>(dims[i]);
  for (std::size_t i = pos + 1; i < dims.size(); ++i) right *= static_cast<std::size_t>(dims[i]);
  const auto d = static_cast<std::size_t>(dims[pos]);
  const auto out = static_cast<std::size_t>(op.rows());
  Matrix result = Matrix::Zero(static_cast<Eigen::Index>(left * out * right), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t r = 0; r < right; ++r) {
        for (std::size_t o = 0; o < out; ++o) {
          cplx acc{0.0, 0.0};
          for (std::size_t i = 0; i < d; ++i) {
            acc += op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) *
                   m(static_cast<Eigen::Index>((l * d + i) * right + r), c);
          }
          result(static_cast<Eigen::Index>((l * out + o) * right + r), c) = acc;
        }
      }
    }
  }
  return result;
}

Matrix conjugate_factor(const Matrix& op, const Matrix& rho, const std::vector<int>& dims, std::size_t pos) {
  const Matrix half = apply_to_columns(op, rho, dims, pos);
  // (K rho) K^dag = (K (K rho)^dag)^dag
  return apply_to_columns(op, half.adjoint(), dims, pos).adjoint();
}

Labels replace_label(const Labels& labels, std::size_t pos, const Labels& with) {
  Labels out(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), with.begin(), with.end());
  out.insert(out.end(), labels.begin() + static_cast<std::ptrdiff_t>(pos) + 1, labels.end());
  check_labels(out);
  return out;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(); }
void set_dimension_cap(std::size_t cap) { g_dimension_cap.store(cap); }

std::size_t total_dim(const Labels& labels) {
  std::size_t n = 1;
  for (const auto& s : labels) n *= static_cast<std::size_t>(s.dim);
  return n;
}

std::vector<int> dims_of(const Labels& labels) {
  std::vector<int> d;
  d.reserve(labels.size());
  for (const auto& s : labels) d.push_back(s.dim);
  return d;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// --- DensityMatrix -----------------------------------------------------------

DensityMatrix::DensityMatrix(Labels labels, Matrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
  check_labels(labels_);
  const auto n = total_dim(labels_);
  check_cap(n);
  if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != n) {
    throw QuantumError("density matrix size does not match subsystem dimensions");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw QuantumError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - cplx{1.0, 0.0}) > kTraceTol) {
    throw QuantumError("density matrix trace differs from 1");
  }
  if (min_eigenvalue() < -kEigenClip) throw QuantumError("density matrix has a negative eigenvalue");
}

DensityMatrix make_unchecked(Labels labels, Matrix matrix) {
  check_labels(labels);
  check_cap(total_dim(labels));
  return DensityMatrix(DensityMatrix::Unchecked{}, std::move(labels), std::move(matrix));
}

bool DensityMatrix::has(std::string_view name) const {
  return std::any_of(labels_.begin(), labels_.end(), [&](const Subsystem& s) { return s.name == name; });
}

std::size_t DensityMatrix::index_of(std::string_view name) const { return find_label(labels_, name); }

const Subsystem& DensityMatrix::subsystem(std::string_view name) const { return labels_[index_of(name)]; }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(matrix_), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// --- PureState ----------------------------------------------------------------

PureState::PureState(Labels labels, Vector vector) : labels_(std::move(labels)), vector_(std::move(vector)) {
  check_labels(labels_);
  check_cap(total_dim(labels_));
  if (static_cast<std::size_t>(vector_.size()) != total_dim(labels_)) {
    throw QuantumError("state vector size does not match subsystem dimensions");
  }
  if (std::abs(vector_.norm() - 1.0) > kNormTol) throw QuantumError("state vector is not normalized");
}

DensityMatrix PureState::density() const { return make_unchecked(labels_, vector_ * vector_.adjoint()); }

// --- QuantumChannel -------------------------------------------------------------

QuantumChannel::QuantumChannel(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ < 1 || out_dim_ < 1) throw QuantumError("channel dimensions must be positive");
  if (kraus_.empty()) throw QuantumError("channel needs at least one Kraus operator");
  Matrix sum = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_) throw QuantumError("Kraus operator has wrong shape");
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff() > kCompletenessTol) {
    throw QuantumError("Kraus operators are not trace preserving");
  }
}

QuantumChannel QuantumChannel::identity(int dim) {
  return QuantumChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

// --- Isometry --------------------------------------------------------------------

Isometry::Isometry(int in_dim, Labels out_labels, Matrix matrix)
    : in_dim_(in_dim), out_labels_(std::move(out_labels)), matrix_(std::move(matrix)) {
  check_labels(out_labels_);
  if (matrix_.cols() != in_dim_ || static_cast<std::size_t>(matrix_.rows()) != total_dim(out_labels_)) {
    throw QuantumError("isometry shape does not match its labels");
  }
  if ((matrix_.adjoint() * matrix_ - Matrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff() >
      kCompletenessTol) {
    throw QuantumError("matrix is not an isometry");
  }
}

// --- Instrument --------------------------------------------------------------------

Instrument::Instrument(int in_dim, int out_dim, std::vector<InstrumentBranch> branches)
    : in_dim_(in_dim), out_dim_(out_dim), branches_(std::move(branches)) {
  if (in_dim_ < 1 || out_dim_ < 1) throw QuantumError("instrument dimensions must be positive");
  if (branches_.empty()) throw QuantumError("instrument needs at least one branch");
  Matrix sum = Matrix::Zero(in_dim_, in_dim_);
  std::set<int> outcomes;
  for (const auto& b : branches_) {
    if (!outcomes.insert(b.outcome).second) throw QuantumError("instrument repeats outcome " + std::to_string(b.outcome));
    if (b.kraus.empty()) throw QuantumError("instrument branch has no Kraus operators");
    for (const auto& m : b.kraus) {
      if (m.rows() != out_dim_ || m.cols() != in_dim_) throw QuantumError("instrument Kraus operator has wrong shape");
      sum += m.adjoint() * m;
    }
  }
  if ((sum - Matrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff() > kCompletenessTol) {
    throw QuantumError("instrument violates completeness");
  }
}

std::size_t Instrument::max_kraus() const {
  std::size_t m = 0;
  for (const auto& b : branches_) m = std::max(m, b.kraus.size());
  return m;
}

Instrument Instrument::trivial(int dim) {
  return Instrument(dim, dim, {InstrumentBranch{0, {Matrix::Identity(dim, dim)}}});
}

// --- structural operations ------------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Labels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);
  check_cap(total_dim(labels));
  return make_unchecked(std::move(labels), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Labels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);
  return PureState(std::move(labels), kron(a.vector(), b.vector()));
}

DensityMatrix permute(const DensityMatrix& rho, const Group& order) {
  const auto perm = order_to_perm(rho.labels(), order);
  const auto map = index_permutation(dims_of(rho.labels()), perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
          static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)])) = rho.matrix()(i, j);
    }
  }
  Labels labels;
  for (auto p : perm) labels.push_back(rho.labels()[p]);
  return make_unchecked(std::move(labels), std::move(out));
}

PureState permute(const PureState& psi, const Group& order) {
  const auto perm = order_to_perm(psi.labels(), order);
  const auto map = index_permutation(dims_of(psi.labels()), perm);
  Vector out(psi.vector().size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(map[i])) = psi.vector()(static_cast<Eigen::Index>(i));
  }
  Labels labels;
  for (auto p : perm) labels.push_back(psi.labels()[p]);
  return PureState(std::move(labels), std::move(out));
}

namespace {

Labels merged_labels(const Labels& labels, const Group& parts, const std::string& name) {
  if (parts.empty()) throw QuantumError("merge needs at least one subsystem");
  const auto first = find_label(labels, parts.front());
  int dim = 1;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (first + k >= labels.size() || labels[first + k].name != parts[k]) {
      throw QuantumError("merged subsystems must be adjacent and in order");
    }
    dim *= labels[first + k].dim;
  }
  Labels out(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(first));
  out.push_back({name, dim});
  out.insert(out.end(), labels.begin() + static_cast<std::ptrdiff_t>(first + parts.size()), labels.end());
  check_labels(out);
  return out;
}

}  // namespace

DensityMatrix merge(const DensityMatrix& rho, const Group& parts, const std::string& name) {
  return make_unchecked(merged_labels(rho.labels(), parts, name), rho.matrix());
}

PureState merge(const PureState& psi, const Group& parts, const std::string& name) {
  return PureState(merged_labels(psi.labels(), parts, name), psi.vector());
}

DensityMatrix rename(const DensityMatrix& rho, const std::string& from, const std::string& to) {
  Labels labels = rho.labels();
  labels[find_label(labels, from)].name = to;
  return make_unchecked(std::move(labels), rho.matrix());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Group& keep) {
  std::set<std::size_t> kept;
  for (const auto& name : keep) kept.insert(find_label(rho.labels(), name));
  if (kept.size() == rho.labels().size()) return rho;

  Group order;
  Labels kept_labels;
  std::size_t dk = 1, dt = 1;
  for (std::size_t i = 0; i < rho.labels().size(); ++i) {
    if (kept.count(i)) {
      order.push_back(rho.labels()[i].name);
      kept_labels.push_back(rho.labels()[i]);
      dk *= static_cast<std::size_t>(rho.labels()[i].dim);
    }
  }
  for (std::size_t i = 0; i < rho.labels().size(); ++i) {
    if (!kept.count(i)) {
      order.push_back(rho.labels()[i].name);
      dt *= static_cast<std::size_t>(rho.labels()[i].dim);
    }
  }
  const Matrix m = permute(rho, order).matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(static_cast<Eigen::Index>(i * dt + t), static_cast<Eigen::Index>(j * dt + t));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return make_unchecked(std::move(kept_labels), std::move(out));
}

PureState purify(const DensityMatrix& rho, const std::string& env) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho.matrix()));
  const auto n = static_cast<Eigen::Index>(rho.dim());

  struct Eig {
    double value;
    Vector vec;
  };
  std::vector<Eig> eigs;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda < -kEigenClip) throw QuantumError("cannot purify: negative eigenvalue");
    if (lambda <= kEigenClip) continue;
    Vector v = es.eigenvectors().col(i);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(v(k)) > 1e-12) {
        v *= std::conj(v(k)) / std::abs(v(k));
        break;
      }
    }
    eigs.push_back({lambda, std::move(v)});
  }
  std::stable_sort(eigs.begin(), eigs.end(), [](const Eig& a, const Eig& b) {
    if (std::abs(a.value - b.value) > kEigenClip) return a.value > b.value;
    for (Eigen::Index k = 0; k < a.vec.size(); ++k) {
      const double ar = std::round(a.vec(k).real() * 1e9), br = std::round(b.vec(k).real() * 1e9);
      if (ar != br) return ar > br;
      const double ai = std::round(a.vec(k).imag() * 1e9), bi = std::round(b.vec(k).imag() * 1e9);
      if (ai != bi) return ai > bi;
    }
    return false;
  });

  const auto r = static_cast<Eigen::Index>(std::max<std::size_t>(eigs.size(), 1));
  Vector psi = Vector::Zero(n * r);
  double norm2 = 0.0;
  for (const auto& e : eigs) norm2 += e.value;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(eigs.size()); ++j) {
    const double w = std::sqrt(eigs[static_cast<std::size_t>(j)].value / norm2);
    for (Eigen::Index i = 0; i < n; ++i) psi(i * r + j) = w * eigs[static_cast<std::size_t>(j)].vec(i);
  }
  Labels labels = rho.labels();
  labels.push_back({env, static_cast<int>(r)});
  return PureState(std::move(labels), psi.normalized());
}

PureState apply_operator(const Matrix& op, const PureState& psi, const std::string& on,
                         const Labels& out_labels) {
  const auto pos = find_label(psi.labels(), on);
  if (op.cols() != psi.labels()[pos].dim || static_cast<std::size_t>(op.rows()) != total_dim(out_labels)) {
    throw QuantumError("operator shape does not match subsystem '" + on + "'");
  }
  Labels labels = replace_label(psi.labels(), pos, out_labels);
  check_cap(total_dim(labels));
  Matrix col = psi.vector();
  Vector out = apply_to_columns(op, col, dims_of(psi.labels()), pos).col(0);
  return PureState(std::move(labels), std::move(out));
}

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho, const std::string& on) {
  const auto pos = rho.index_of(on);
  if (rho.labels()[pos].dim != channel.in_dim()) {
    throw QuantumError("channel input dimension does not match subsystem '" + on + "'");
  }
  Labels labels = rho.labels();
  labels[pos].dim = channel.out_dim();
  check_cap(total_dim(labels));
  const auto dims = dims_of(rho.labels());
  const auto n = static_cast<Eigen::Index>(total_dim(labels));
  Matrix out = Matrix::Zero(n, n);
  for (const auto& k : channel.kraus()) out += conjugate_factor(k, rho.matrix(), dims, pos);
  return make_unchecked(std::move(labels), hermitize(out));
}

Isometry isometric_extension(const QuantumChannel& channel, const std::string& out, const std::string& env) {
  const auto& ks = channel.kraus();
  const auto r = static_cast<Eigen::Index>(ks.size());
  Matrix v = Matrix::Zero(channel.out_dim() * r, channel.in_dim());
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index o = 0; o < channel.out_dim(); ++o) {
      v.row(o * r + k) = ks[static_cast<std::size_t>(k)].row(o);
    }
  }
  return Isometry(channel.in_dim(), {{out, channel.out_dim()}, {env, static_cast<int>(r)}}, std::move(v));
}

DensityMatrix apply_isometry(const Isometry& v, const DensityMatrix& rho, const std::string& on) {
  const auto pos = rho.index_of(on);
  if (rho.labels()[pos].dim != v.in_dim()) throw QuantumError("isometry input dimension mismatch on '" + on + "'");
  Labels labels = replace_label(rho.labels(), pos, v.out_labels());
  check_cap(total_dim(labels));
  return make_unchecked(std::move(labels), hermitize(conjugate_factor(v.matrix(), rho.matrix(), dims_of(rho.labels()), pos)));
}

PureState apply_isometry(const Isometry& v, const PureState& psi, const std::string& on) {
  return apply_operator(v.matrix(), psi, on, v.out_labels());
}

DilatedState dilate_instrument(const Instrument& instrument, const PureState& psi, const std::string& on,
                               const InstrumentLabels& names) {
  const auto pos = find_label(psi.labels(), on);
  if (psi.labels()[pos].dim != instrument.in_dim()) {
    throw QuantumError("instrument input dimension does not match subsystem '" + on + "'");
  }
  const auto env_dim = static_cast<Eigen::Index>(instrument.max_kraus());
  const Labels out_labels{{names.output, instrument.out_dim()}, {names.env, static_cast<int>(env_dim)}};
  const Labels branch_labels = replace_label(psi.labels(), pos, out_labels);

  // Reorder so that the instrument environment sits last.
  Group order;
  Labels final_labels;
  for (const auto& s : branch_labels) {
    if (s.name != names.env) {
      order.push_back(s.name);
      final_labels.push_back(s);
    }
  }
  order.push_back(names.env);
  final_labels.push_back(out_labels[1]);

  const auto& branches = instrument.branches();
  const auto nx = static_cast<Eigen::Index>(branches.size());
  Labels sigma_labels{{names.flag, static_cast<int>(nx)}};
  sigma_labels.insert(sigma_labels.end(), final_labels.begin(), final_labels.end());
  check_labels(sigma_labels);
  check_cap(total_dim(sigma_labels));

  const auto dim = static_cast<Eigen::Index>(total_dim(final_labels));
  const auto dims = dims_of(psi.labels());
  Matrix sigma = Matrix::Zero(nx * dim, nx * dim);
  std::vector<double> probs;
  Matrix col = psi.vector();
  for (Eigen::Index x = 0; x < nx; ++x) {
    const auto& kraus = branches[static_cast<std::size_t>(x)].kraus;
    Matrix vx = Matrix::Zero(instrument.out_dim() * env_dim, instrument.in_dim());
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(kraus.size()); ++k) {
      for (Eigen::Index o = 0; o < instrument.out_dim(); ++o) {
        vx.row(o * env_dim + k) = kraus[static_cast<std::size_t>(k)].row(o);
      }
    }
    const Vector phi = apply_to_columns(vx, col, dims, pos).col(0);
    const double px = phi.squaredNorm();
    probs.push_back(px);
    if (px <= 0.0) continue;
    const PureState branch = permute(PureState(branch_labels, phi / std::sqrt(px)), order);
    sigma.block(x * dim, x * dim, dim, dim) = px * branch.vector() * branch.vector().adjoint();
  }
  return {make_unchecked(std::move(sigma_labels), hermitize(sigma)), std::move(probs)};
}

}  // namespace qst
