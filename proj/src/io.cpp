#include "arrangeatlas/io.hpp"

#include <algorithm>
#include <regex>
#include <string>

namespace arrangeatlas::io {

namespace {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char separator) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(separator, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Rational rational_from_json(const Json& entry) {
  if (entry.is_string()) return parse_rational(entry.get<std::string>());
  if (entry.is_number_integer()) return Rational(entry.get<long long>());
  throw ParseError("expected a rational string, got " + entry.dump());
}

Vector vector_from_json(const Json& row, Index expected, const std::string& what) {
  if (!row.is_array()) throw ParseError(what + " must be an array");
  if (static_cast<Index>(row.size()) != expected) {
    throw ParseError(what + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(expected));
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) v(i) = rational_from_json(row[static_cast<std::size_t>(i)]);
  return v;
}

Index ambient_dim_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer()) {
    throw ParseError("missing integer field \"ambient_dim\"");
  }
  const auto d = doc["ambient_dim"].get<long long>();
  if (d < 0) throw ParseError("\"ambient_dim\" must be non-negative");
  return static_cast<Index>(d);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(([+-]?[0-9]+)(?:/([0-9]+))?)");
  const std::string s = trim(text);
  std::smatch match;
  if (!std::regex_match(s, match, pattern)) throw ParseError("not a rational number: \"" + s + "\"");
  const Integer numerator(match[1].str()[0] == '+' ? match[1].str().substr(1) : match[1].str());
  const Integer denominator(match[2].matched ? match[2].str() : std::string("1"));
  if (denominator == 0) throw ParseError("zero denominator in \"" + s + "\"");
  // Division canonicalizes: reduced, positive denominator.
  return Rational(numerator) / Rational(denominator);
}

std::string format_rational(const Rational& q) {
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Vector parse_vector(std::string_view text) {
  if (trim(text).empty()) return Vector(0);
  const auto parts = split(text, ',');
  Vector v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Index>(i)) = parse_rational(parts[i]);
  return v;
}

ExtendedPoint parse_point(std::string_view text) {
  if (trim(text).empty()) return ExtendedPoint{};
  std::vector<ExtendedScalar> coords;
  for (const std::string& part : split(text, ',')) {
    coords.push_back(part == "inf" ? ExtendedScalar::infinity() : ExtendedScalar(parse_rational(part)));
  }
  return ExtendedPoint(std::move(coords));
}

LinearMap parse_map(std::string_view text, Index source_dim) {
  if (trim(text).empty()) return LinearMap::zero(source_dim, 0);
  std::vector<Vector> rows;
  for (const std::string& row : split(text, ';')) rows.push_back(parse_vector(row));
  Matrix m(static_cast<Index>(rows.size()), source_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != source_dim) {
      throw ParseError("map row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(source_dim));
    }
    m.row(static_cast<Index>(i)) = rows[i].transpose();
  }
  return LinearMap(std::move(m));
}

IndexSet parse_index_set(std::string_view text) {
  IndexSet out;
  if (trim(text).empty()) return out;
  static const std::regex positive("[1-9][0-9]*");
  for (const std::string& part : split(text, ',')) {
    if (!std::regex_match(part, positive)) throw ParseError("not a 1-based index: \"" + part + "\"");
    out.push_back(std::stoul(part) - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Arrangement parse_arrangement(const Json& doc) {
  const Index d = ambient_dim_from_json(doc);
  if (!doc.contains("normals") || !doc["normals"].is_array()) throw ParseError("missing array field \"normals\"");
  std::vector<Vector> normals;
  for (std::size_t i = 0; i < doc["normals"].size(); ++i) {
    normals.push_back(vector_from_json(doc["normals"][i], d, "normal " + std::to_string(i + 1)));
  }
  return Arrangement(d, normals);
}

PhaInput parse_pha(const Json& doc) {
  PhaInput out;
  out.ambient_dim = ambient_dim_from_json(doc);
  if (!doc.contains("subspaces") || !doc["subspaces"].is_array()) throw ParseError("missing array field \"subspaces\"");
  for (std::size_t k = 0; k < doc["subspaces"].size(); ++k) {
    const Json& entry = doc["subspaces"][k];
    if (!entry.is_object() || !entry.contains("basis") || !entry["basis"].is_array()) {
      throw ParseError("subspace " + std::to_string(k + 1) + " needs an array field \"basis\"");
    }
    const Json& basis = entry["basis"];
    Matrix rows(static_cast<Index>(basis.size()), out.ambient_dim);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      rows.row(static_cast<Index>(i)) =
          vector_from_json(basis[i], out.ambient_dim, "subspace " + std::to_string(k + 1) + " row " + std::to_string(i + 1))
              .transpose();
    }
    out.subspaces.push_back(Subspace::span(rows));
  }
  return out;
}

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json to_json(const Subspace& s) {
  Json out;
  out["rank"] = s.rank();
  out["basis"] = to_json(s.basis());
  return out;
}

Json to_json(const ExtendedPoint& x) {
  Json out = Json::array();
  for (const ExtendedScalar& c : x.coords()) out.push_back(c.is_infinite() ? std::string("inf") : format_rational(c.value()));
  return out;
}

Json index_set_to_json(const IndexSet& s) {
  Json out = Json::array();
  for (std::size_t i : s) out.push_back(i + 1);
  return out;
}

Json arrangement_to_json(const Arrangement& a) {
  Json out;
  out["ambient_dim"] = a.ambient_dim();
  out["normals"] = to_json(a.normal_matrix());
  return out;
}

}  // namespace arrangeatlas::io
