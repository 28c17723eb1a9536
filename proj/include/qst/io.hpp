#pragma once

// JSON and CSV interchange: regions, ensembles, instruments, point tables.
// Complex matrices are arrays of rows, each entry a [re, im] pair; vectors
// are flat arrays of [re, im] pairs.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qst/assembly.hpp"
#include "qst/geometry.hpp"
#include "qst/quantum.hpp"
#include "qst/tradeoff.hpp"

namespace qst::io {

using nlohmann::json;

/// Raised on structurally invalid input documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const RateTriple& x);
RateTriple triple_from_json(const json& j);

/// {points, rays, facets[, equalities]}; facets are the derived H-description.
json to_json(const RateRegion& region);
RateRegion region_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// {dim_a, dim_a_prime, entries: [{probability, state}]}
json to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const json& j);

/// {in_dim, out_dim, branches: [{outcome, kraus: [matrix...]}]}
json to_json(const Instrument& instrument);
Instrument instrument_from_json(const json& j);

/// Header "kind,k,C,Q,E,provenance" then one row per point.
void write_points_csv(std::ostream& out, const std::vector<OneShotPoint>& points);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qst::io
