#pragma once

// Text and JSON encodings used by the command-line tool. Rationals are
// always strings ("3/2", "-1"); ∞ is the literal "inf"; hyperplane indices
// are written 1-based.

#include "arrangeatlas/arrangement.hpp"
#include "arrangeatlas/linalg.hpp"
#include "arrangeatlas/schubert.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arrangeatlas::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Comma-separated rationals. The empty string is the empty vector.
Vector parse_vector(std::string_view text);
/// Comma-separated rationals or "inf".
ExtendedPoint parse_point(std::string_view text);
/// Rows separated by ';', entries by ','. `source_dim` fixes the column
/// count when there are no rows.
LinearMap parse_map(std::string_view text, Index source_dim);
/// Comma-separated 1-based hyperplane indices, returned sorted and 0-based.
IndexSet parse_index_set(std::string_view text);

struct PhaInput {
  Index ambient_dim = 0;
  std::vector<Subspace> subspaces;
};

/// {"ambient_dim": d, "normals": [["1","0"], ...]}
Arrangement parse_arrangement(const Json& doc);
/// {"ambient_dim": d, "subspaces": [{"basis": [[...], ...]}, ...]}
PhaInput parse_pha(const Json& doc);

Json to_json(const Rational& q);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const Subspace& s);
Json to_json(const ExtendedPoint& x);
Json index_set_to_json(const IndexSet& s);
Json arrangement_to_json(const Arrangement& a);

}  // namespace arrangeatlas::io
