#pragma once

#include "arrangeatlas/linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace arrangeatlas {

/// Sorted, duplicate-free set of hyperplane indices (0-based).
using IndexSet = std::vector<std::size_t>;

/// A central hyperplane arrangement in Q^d, given by its normal covectors.
/// Normals are scaled so that their first nonzero entry is 1; zero normals
/// and proportional pairs are rejected with a DomainError
/// ("zero-normal", "duplicate-hyperplane").
class Arrangement {
 public:
  Arrangement(Index ambient_dim, const std::vector<Vector>& normals);
  /// One hyperplane per row of `normals`.
  explicit Arrangement(const Matrix& normals);

  Index ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return static_cast<std::size_t>(normals_.rows()); }

  Vector normal(std::size_t i) const { return normals_.row(static_cast<Index>(i)).transpose(); }
  /// n x d matrix whose rows are the normals; this is the coordinate
  /// embedding V -> Q^E.
  const Matrix& normal_matrix() const { return normals_; }
  Subspace hyperplane(std::size_t i) const;
  Rational evaluate(std::size_t i, const Vector& v) const;

  IndexSet all_indices() const;

 private:
  Index ambient_dim_;
  Matrix normals_;
};

bool is_essential(const Arrangement& a);

/// Indices of the hyperplanes containing ∩_{j∈s} H_j.
IndexSet closure(const Arrangement& a, const IndexSet& s);

/// ∩_{i∈s} H_i; the empty intersection is the ambient space.
Subspace flat_subspace(const Arrangement& a, const IndexSet& s);

struct MatroidFlat {
  IndexSet indices;
  Subspace subspace;
};

/// Flats ordered by cardinality, then lexicographically on index sets.
class FlatLattice {
 public:
  FlatLattice() = default;
  explicit FlatLattice(std::vector<MatroidFlat> flats);

  std::size_t size() const { return flats_.size(); }
  const MatroidFlat& operator[](std::size_t k) const { return flats_[k]; }
  const std::vector<MatroidFlat>& flats() const { return flats_; }
  auto begin() const { return flats_.begin(); }
  auto end() const { return flats_.end(); }

  std::optional<std::size_t> find(const IndexSet& indices) const;
  std::optional<std::size_t> find(const Subspace& subspace) const;
  bool contains(const IndexSet& indices) const { return find(indices).has_value(); }

 private:
  std::vector<MatroidFlat> flats_;
};

/// Canonical flat order used everywhere: (|F|, lexicographic).
bool flat_order_less(const IndexSet& a, const IndexSet& b);

FlatLattice flats(const Arrangement& a);

/// Where a parent hyperplane H_i (i outside the flat) went in the
/// restriction: ℓ_i restricted to the flat equals scale times the
/// restricted normal number `hyperplane`.
struct RestrictedIndex {
  std::size_t hyperplane;
  Rational scale;
};

/// The arrangement induced on a flat, in the coordinates given by the rows
/// of `frame` (the RREF basis of the flat's subspace).
struct Restriction {
  IndexSet flat;
  Matrix frame;
  Arrangement arrangement;
  std::vector<std::optional<RestrictedIndex>> parent_to_restricted;

  /// frame-coordinates -> ambient vector
  Vector lift(const Vector& coords) const;
  Subspace lift(const Subspace& s) const;
};

/// Throws DomainError("not-a-flat") if `flat` is not closed.
Restriction restriction(const Arrangement& a, const IndexSet& flat);
Restriction restriction(const Arrangement& a, const MatroidFlat& flat);

}  // namespace arrangeatlas
