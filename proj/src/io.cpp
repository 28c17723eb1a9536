#include "qst/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qst::io {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string("expected a number for ") + what);
  return j.get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw FormatError(std::string("missing integer field ") + key);
  return j.at(key).get<int>();
}

const json& array_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    throw FormatError(std::string("missing array field ") + key);
  return j.at(key);
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw FormatError("complex entries are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Eigen::Vector3d vec3(const json& j) { return triple_from_json(j).vec(); }

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const RateTriple& x) { return json::array({x.C, x.Q, x.E}); }

RateTriple triple_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("rate triples are [C, Q, E] arrays");
  return {number(j[0], "C"), number(j[1], "Q"), number(j[2], "E")};
}

json to_json(const RateRegion& region) {
  json out;
  out["points"] = json::array();
  for (const auto& p : region.points()) out["points"].push_back(to_json(p));
  out["rays"] = json::array();
  for (const auto& r : region.rays()) out["rays"].push_back(to_json(r.direction()));
  const auto& h = region.half_spaces();
  auto facet_json = [](const Facet& f) {
    return json{{"normal", json::array({f.normal(0), f.normal(1), f.normal(2)})}, {"offset", f.offset}};
  };
  out["facets"] = json::array();
  for (const auto& f : h.facets) out["facets"].push_back(facet_json(f));
  if (!h.equalities.empty()) {
    out["equalities"] = json::array();
    for (const auto& f : h.equalities) out["equalities"].push_back(facet_json(f));
  }
  return out;
}

RateRegion region_from_json(const json& j) {
  std::vector<RateTriple> points;
  for (const auto& p : array_field(j, "points")) points.push_back(triple_from_json(p));
  if (points.empty()) throw FormatError("a region needs at least one point");
  std::vector<Ray> rays;
  if (j.contains("rays")) {
    for (const auto& r : array_field(j, "rays")) rays.emplace_back(triple_from_json(r));
  }
  if (!j.contains("facets")) return RateRegion(std::move(points), std::move(rays));
  std::vector<Facet> facets;
  for (const auto& f : array_field(j, "facets")) {
    if (!f.is_object() || !f.contains("normal") || !f.contains("offset")) throw FormatError("facet needs normal and offset");
    facets.push_back({vec3(f.at("normal")), number(f.at("offset"), "offset")});
  }
  return RateRegion(std::move(points), std::move(rays), std::move(facets));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("matrices are nonempty arrays of rows");
  const auto cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw FormatError("matrix rows must be nonempty arrays");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw FormatError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from(j[i][k]);
  }
  return m;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("vectors are nonempty arrays of [re, im]");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
  return v;
}

json to_json(const Ensemble& ensemble) {
  json entries = json::array();
  for (const auto& e : ensemble.entries()) entries.push_back({{"probability", e.probability}, {"state", to_json(e.state)}});
  return {{"dim_a", ensemble.dim_a()}, {"dim_a_prime", ensemble.dim_a_prime()}, {"entries", entries}};
}

Ensemble ensemble_from_json(const json& j) {
  std::vector<EnsembleEntry> entries;
  for (const auto& e : array_field(j, "entries")) {
    if (!e.contains("probability") || !e.contains("state")) throw FormatError("ensemble entries need probability and state");
    entries.push_back({number(e.at("probability"), "probability"), vector_from_json(e.at("state"))});
  }
  return Ensemble(integer(j, "dim_a"), integer(j, "dim_a_prime"), std::move(entries));
}

json to_json(const Instrument& instrument) {
  json branches = json::array();
  for (const auto& b : instrument.branches()) {
    json kraus = json::array();
    for (const auto& k : b.kraus) kraus.push_back(to_json(k));
    branches.push_back({{"outcome", b.outcome}, {"kraus", kraus}});
  }
  return {{"in_dim", instrument.in_dim()}, {"out_dim", instrument.out_dim()}, {"branches", branches}};
}

Instrument instrument_from_json(const json& j) {
  std::vector<InstrumentBranch> branches;
  int next = 0;
  for (const auto& b : array_field(j, "branches")) {
    InstrumentBranch branch;
    branch.outcome = b.contains("outcome") ? integer(b, "outcome") : next;
    ++next;
    for (const auto& k : array_field(b, "kraus")) branch.kraus.push_back(matrix_from_json(k));
    branches.push_back(std::move(branch));
  }
  return Instrument(integer(j, "in_dim"), integer(j, "out_dim"), std::move(branches));
}

void write_points_csv(std::ostream& out, const std::vector<OneShotPoint>& points) {
  out << "kind,k,C,Q,E,provenance\n";
  for (const auto& p : points) {
    out << to_string(p.kind) << ',' << p.k << ',' << format_double(p.triple.C) << ',' << format_double(p.triple.Q)
        << ',' << format_double(p.triple.E) << ',' << p.provenance << '\n';
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace qst::io
