#include "qst/models.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "qst/entropy.hpp"
#include "qst/unit.hpp"

namespace qst {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw QuantumError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

QuantumChannel dephasing_channel(double p) {
  check_unit_interval(p, "dephasing parameter");
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return QuantumChannel(2, 2, {std::sqrt(1.0 - p / 2.0) * Matrix::Identity(2, 2), std::sqrt(p / 2.0) * z});
}

QuantumChannel erasure_channel(double eps) {
  check_unit_interval(eps, "erasure probability");
  Matrix keep = Matrix::Zero(3, 2);
  keep(0, 0) = keep(1, 1) = std::sqrt(1.0 - eps);
  Matrix lose0 = Matrix::Zero(3, 2), lose1 = Matrix::Zero(3, 2);
  lose0(2, 0) = lose1(2, 1) = std::sqrt(eps);
  return QuantumChannel(2, 3, {keep, lose0, lose1});
}

PureState bell_vector(int dim, const std::string& a, const std::string& b) {
  Vector v = Vector::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) v(i * dim + i) = 1.0 / std::sqrt(static_cast<double>(dim));
  return PureState({{a, dim}, {b, dim}}, v);
}

DensityMatrix bell_state(int dim) { return bell_vector(dim).density(); }

DensityMatrix erased_state(double eps) {
  check_unit_interval(eps, "erasure probability");
  Matrix m = Matrix::Zero(6, 6);
  // Phi+ on A(2) x B(3): |00> -> index 0, |11> -> index 4.
  m(0, 0) = m(0, 4) = m(4, 0) = m(4, 4) = (1.0 - eps) / 2.0;
  // pi^A (x) |e><e|: |0 e> -> 2, |1 e> -> 5.
  m(2, 2) = m(5, 5) = eps / 2.0;
  return DensityMatrix({{"A", 2}, {"B", 3}}, m);
}

ErasedStateReference erased_state_reference(double eps) {
  check_unit_interval(eps, "erasure probability");
  const double h = binary_entropy(eps);
  return {1.0, 1.0 - eps + h, eps + h, 1.0 - 2.0 * eps, 1.0 - eps, eps};
}

RateRegion erased_state_static_region(double eps) {
  check_unit_interval(eps, "erasure probability");
  RateRegion mother({RateTriple{}, RateTriple{0.0, -eps, 1.0 - eps}});
  return minkowski_sum(mother, unit_region());
}

double erased_state_entanglement_boundary(double eps, double consumed_cbits) {
  check_unit_interval(eps, "erasure probability");
  if (consumed_cbits < 0.0) throw GeometryError("consumed classical rate must be nonnegative");
  const double hashing = 1.0 - 2.0 * eps;
  if (hashing <= 0.0) return 0.0;
  if (consumed_cbits >= 2.0 * eps) return hashing;
  return consumed_cbits * hashing / (2.0 * eps);
}

DephasingReference dephasing_reference(double p) {
  check_unit_interval(p, "dephasing parameter");
  const double h = binary_entropy(p / 2.0);
  return {1.0 - h, h,
          "convention-dependent: Kraus set {sqrt(1-p/2) I, sqrt(p/2) Z}; p=0.2 gives capacity ~0.531"};
}

std::string Model::spec() const {
  std::string out = name;
  for (const auto& [k, v] : params) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out += ':' + k + '=' + std::string(buf, res.ptr);
  }
  return out;
}

Model parse_model(const std::string& spec) {
  Model m;
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  m.name = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("model parameter '" + parts[i] + "' is not key=value");
    const std::string key = parts[i].substr(0, eq);
    const std::string val = parts[i].substr(eq + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw std::invalid_argument("model parameter '" + key + "' has non-numeric value '" + val + "'");
    }
    if (!m.params.emplace(key, v).second) throw std::invalid_argument("model parameter '" + key + "' repeated");
  }

  auto require = [&](const std::set<std::string>& allowed) {
    for (const auto& [k, v] : m.params) {
      if (!allowed.count(k)) throw std::invalid_argument("model '" + m.name + "' has no parameter '" + k + "'");
    }
  };
  auto param = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (auto it = m.params.find(key); it != m.params.end()) return it->second;
    if (fallback) {
      m.params[key] = *fallback;
      return *fallback;
    }
    throw std::invalid_argument("model '" + m.name + "' needs parameter '" + key + "'");
  };

  if (m.name == "dephasing") {
    require({"p"});
    m.channel = dephasing_channel(param("p"));
  } else if (m.name == "erasure") {
    require({"eps"});
    m.channel = erasure_channel(param("eps"));
  } else if (m.name == "erased") {
    require({"eps"});
    m.state = erased_state(param("eps"));
  } else if (m.name == "bell") {
    require({});
    m.state = bell_state();
  } else if (m.name == "identity") {
    require({"d"});
    const double d = param("d", 2.0);
    if (d < 1 || d != std::floor(d)) throw std::invalid_argument("identity dimension must be a positive integer");
    m.channel = QuantumChannel::identity(static_cast<int>(d));
  } else {
    throw std::invalid_argument("unknown model '" + m.name + "'");
  }
  return m;
}

}  // namespace qst
