#pragma once

// Shared helpers for the unit, property and acceptance tests: fixture
// loading, random inputs, and reference implementations that avoid the
// library's own linear algebra.

#include "arrangeatlas/arrangement.hpp"
#include "arrangeatlas/io.hpp"
#include "arrangeatlas/pha.hpp"
#include "arrangeatlas/schubert.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef ARRANGEATLAS_FIXTURE_DIR
#error "ARRANGEATLAS_FIXTURE_DIR must be defined"
#endif

namespace testsupport {

using namespace arrangeatlas;

inline std::string fixture_path(const std::string& name) { return std::string(ARRANGEATLAS_FIXTURE_DIR) + "/" + name; }

inline io::Json read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return io::Json::parse(in);
}

inline Arrangement load_arrangement(const std::string& name) { return io::parse_arrangement(read_fixture(name)); }
inline io::PhaInput load_subspaces(const std::string& name) { return io::parse_pha(read_fixture(name)); }

inline PartialHyperplaneArrangement load_pha(const std::string& name) {
  const io::PhaInput in = load_subspaces(name);
  return *validate(in.ambient_dim, in.subspaces).pha;
}

inline Vector vec(std::initializer_list<long> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (long e : entries) v(i++) = Rational(e);
  return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long e : row) m(i, j++) = Rational(e);
    ++i;
  }
  return m;
}

inline Subspace span_of(std::initializer_list<std::initializer_list<long>> rows, Index d) {
  if (rows.size() == 0) return Subspace::zero(d);
  return Subspace::span(mat(rows));
}

// ---------------------------------------------------------------------------
// Reference linear algebra: plain Gaussian elimination on nested vectors.

using Rows = std::vector<std::vector<Rational>>;

inline std::size_t ref_rank(Rows rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Rational> ref_row(const Vector& v) {
  std::vector<Rational> out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Rational ref_dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

/// Index sets of flats by enumerating all 2^n subsets S and closing each
/// with rank comparisons: i is in cl(S) iff adding ℓ_i keeps the rank.
inline std::set<IndexSet> subset_enumeration_flats(const Arrangement& a) {
  const std::size_t n = a.size();
  std::set<IndexSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rows rows;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) rows.push_back(ref_row(a.normal(i)));
    const std::size_t r = ref_rank(rows);
    IndexSet closed;
    for (std::size_t i = 0; i < n; ++i) {
      Rows extended = rows;
      extended.push_back(ref_row(a.normal(i)));
      if (ref_rank(extended) == r) closed.push_back(i);
    }
    out.insert(closed);
  }
  return out;
}

/// Direct definition check: the finite support is a flat and the system
/// ℓ_i(v) = x_i over that support has a solution (rank test on the
/// augmented matrix).
inline bool reference_membership(const Arrangement& a, const std::set<IndexSet>& flat_sets, const ExtendedPoint& x) {
  IndexSet support;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].is_finite()) support.push_back(i);
  if (!flat_sets.count(support)) return false;
  Rows plain, augmented;
  for (std::size_t i : support) {
    plain.push_back(ref_row(a.normal(i)));
    augmented.push_back(ref_row(a.normal(i)));
    augmented.back().push_back(x[i].value());
  }
  return ref_rank(plain) == ref_rank(augmented);
}

/// lim_{t→∞} embed(w + t·u): coordinates where ℓ_i(u) ≠ 0 escape to ∞.
inline ExtendedPoint curve_limit(const Arrangement& a, const Vector& w, const Vector& u) {
  std::vector<ExtendedScalar> coords;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ref_dot(a.normal(i), u) != 0) {
      coords.push_back(ExtendedScalar::infinity());
    } else {
      coords.emplace_back(ref_dot(a.normal(i), w));
    }
  }
  return ExtendedPoint(std::move(coords));
}

/// Coordinatewise translation with ∞ absorbing, applied to any point.
inline ExtendedPoint raw_translate(const Arrangement& a, const Vector& v, const ExtendedPoint& x) {
  std::vector<ExtendedScalar> coords;
  for (std::size_t i = 0; i < x.size(); ++i) coords.push_back(x[i] + ref_dot(a.normal(i), v));
  return ExtendedPoint(std::move(coords));
}

// ---------------------------------------------------------------------------
// Random inputs.

inline Vector random_vector(std::mt19937_64& rng, Index d, int bound = 3) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = entry(rng);
  return v;
}

inline bool proportional(const Vector& a, const Vector& b) {
  Rows rows{ref_row(a), ref_row(b)};
  return ref_rank(rows) < 2;
}

/// Essential arrangement with d ≤ max_d, n ≤ max_n, small integer normals.
inline Arrangement random_essential_arrangement(std::mt19937_64& rng, Index max_d = 4, std::size_t max_n = 6) {
  std::uniform_int_distribution<Index> dim(1, max_d);
  while (true) {
    const Index d = dim(rng);
    std::uniform_int_distribution<std::size_t> count(static_cast<std::size_t>(d), max_n);
    const std::size_t n = count(rng);
    std::vector<Vector> normals;
    int attempts = 0;
    while (normals.size() < n && attempts++ < 200) {
      Vector v = random_vector(rng, d, 2);
      if (v.isZero()) continue;
      bool fresh = true;
      for (const Vector& w : normals) fresh = fresh && !proportional(v, w);
      if (fresh) normals.push_back(v);
    }
    if (normals.size() < n) continue;
    Rows rows;
    for (const Vector& v : normals) rows.push_back(ref_row(v));
    if (ref_rank(rows) != static_cast<std::size_t>(d)) continue;
    return Arrangement(d, normals);
  }
}

/// Random small-integer combination of the basis rows of `s`.
inline Vector random_vector_in(std::mt19937_64& rng, const Subspace& s, int bound = 3) {
  Vector v = Vector::Zero(s.ambient_dim());
  std::uniform_int_distribution<int> entry(-bound, bound);
  for (Index r = 0; r < s.rank(); ++r) v += Rational(entry(rng)) * s.basis().row(r).transpose();
  return v;
}

inline std::vector<ExtendedPoint> distinguished_points(const SchubertVariety& y) {
  std::vector<ExtendedPoint> out;
  for (const MatroidFlat& f : y.lattice()) out.push_back(distinguished_point(y, f.indices));
  return out;
}

/// Random member of Y: a translate of a random distinguished point.
inline ExtendedPoint random_member(std::mt19937_64& rng, const SchubertVariety& y) {
  std::uniform_int_distribution<std::size_t> pick(0, y.lattice().size() - 1);
  const IndexSet& f = y.lattice()[pick(rng)].indices;
  return act(y, random_vector(rng, y.dimension()), distinguished_point(y, f));
}

}  // namespace testsupport
