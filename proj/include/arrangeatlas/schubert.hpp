#pragma once

#include "arrangeatlas/arrangement.hpp"
#include "arrangeatlas/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arrangeatlas {

/// A point of P^1 in the chart dichotomy: a rational z (for [z:1]) or ∞.
class ExtendedScalar {
 public:
  ExtendedScalar() = default;  // ∞
  ExtendedScalar(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  ExtendedScalar(int value) : value_(Rational(value)) {}        // NOLINT(google-explicit-constructor)

  static ExtendedScalar infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const { return *value_; }

  friend bool operator==(const ExtendedScalar&, const ExtendedScalar&) = default;

  /// z + ∞ = ∞
  friend ExtendedScalar operator+(const ExtendedScalar& x, const Rational& shift) {
    if (x.is_infinite()) return x;
    return ExtendedScalar(x.value() + shift);
  }
  friend ExtendedScalar operator*(const Rational& c, const ExtendedScalar& x) {
    if (x.is_infinite()) return x;
    return ExtendedScalar(c * x.value());
  }

 private:
  std::optional<Rational> value_;
};

/// A point of (P^1)^E.
class ExtendedPoint {
 public:
  ExtendedPoint() = default;
  explicit ExtendedPoint(std::vector<ExtendedScalar> coords) : coords_(std::move(coords)) {}
  ExtendedPoint(std::initializer_list<ExtendedScalar> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  const ExtendedScalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<ExtendedScalar>& coords() const { return coords_; }

  /// Indices of the non-infinite coordinates.
  IndexSet finite_support() const;

  friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;

 private:
  std::vector<ExtendedScalar> coords_;
};

/// The matroid Schubert variety of an essential arrangement: the closure of
/// V in (P^1)^E under v ↦ (ℓ_1(v), …, ℓ_n(v)). The flat lattice is computed
/// once at construction.
class SchubertVariety {
 public:
  /// Throws DomainError("not-essential").
  explicit SchubertVariety(Arrangement arrangement);

  const Arrangement& arrangement() const { return arrangement_; }
  const FlatLattice& lattice() const { return lattice_; }
  Index dimension() const { return arrangement_.ambient_dim(); }
  std::size_t coordinate_count() const { return arrangement_.size(); }

 private:
  Arrangement arrangement_;
  FlatLattice lattice_;
};

ExtendedPoint embed(const SchubertVariety& y, const Vector& v);

enum class MembershipReason { member, support_not_a_flat, inconsistent_coordinates };
std::string to_string(MembershipReason reason);

struct MembershipResult {
  bool member = false;
  MembershipReason reason = MembershipReason::support_not_a_flat;
};

/// x ∈ Y iff its finite support F is a flat and (x_i)_{i∈F} = (ℓ_i(v))_{i∈F}
/// is solvable for v.
MembershipResult membership(const SchubertVariety& y, const ExtendedPoint& x);
bool is_member(const SchubertVariety& y, const ExtendedPoint& x);

/// Coordinate-wise translation by (ℓ_i(v))_i. Throws DomainError
/// ("not-a-member") if x ∉ Y.
ExtendedPoint act(const SchubertVariety& y, const Vector& v, const ExtendedPoint& x);

struct OrbitDescriptor {
  IndexSet flat;
  /// π_F(V) as a subspace of Q^F
  Subspace affine_part;

  friend bool operator==(const OrbitDescriptor&, const OrbitDescriptor&) = default;
};

OrbitDescriptor orbit_descriptor(const SchubertVariety& y, const ExtendedPoint& x);

/// 0 on the flat, ∞ off it. Throws DomainError("not-a-flat").
ExtendedPoint distinguished_point(const SchubertVariety& y, const IndexSet& flat);

/// ∩_{i∈F} H_i for the support F of x.
Subspace stabilizer(const SchubertVariety& y, const ExtendedPoint& x);

/// q ∈ U_x iff supp(x) ⊆ supp(q).
bool in_minimal_neighborhood(const SchubertVariety& y, const ExtendedPoint& x, const ExtendedPoint& q);

/// q ∈ Z_x iff supp(x) ⊆ supp(q) and x, q agree on supp(x).
bool in_minimal_slice(const SchubertVariety& y, const ExtendedPoint& x, const ExtendedPoint& q);

/// The slice through the distinguished point of a flat F: the Schubert
/// variety of the restriction to F, embedded with zeros on F.
class Slice {
 public:
  Slice(const SchubertVariety& parent, const IndexSet& flat);

  const IndexSet& flat() const { return restriction_.flat; }
  const Restriction& restriction() const { return restriction_; }
  const SchubertVariety& variety() const { return variety_; }

  /// Sends a point of the restricted variety to (P^1)^E: 0 on F, and
  /// scale_i · q'_{r(i)} off F.
  ExtendedPoint inject(const ExtendedPoint& restricted_point) const;

 private:
  std::size_t parent_size_;
  Restriction restriction_;
  SchubertVariety variety_;
};

Slice slice_at(const SchubertVariety& y, const IndexSet& flat);

/// lim_{t→∞} t·v: the distinguished point of {i : ℓ_i(v) = 0}.
ExtendedPoint limit(const SchubertVariety& y, const Vector& v);

/// Extension of a hyperplane-level morphism t: V1 -> V2 to Y1 -> Y2.
/// Coordinate k of the image is 0 when t⁻¹(H_k) = V1, otherwise c·x_j where
/// H_j = t⁻¹(H_k) and ℓ_k∘t = c·ℓ_j. Throws DomainError("invalid-morphism")
/// or DomainError("not-a-member").
ExtendedPoint extend_morphism(const LinearMap& t, const SchubertVariety& y1, const SchubertVariety& y2,
                              const ExtendedPoint& x);

/// Per target hyperplane: the source index j and scalar c, or nullopt when
/// the coordinate is identically zero. Throws DomainError("invalid-morphism").
std::vector<std::optional<std::pair<std::size_t, Rational>>> morphism_coordinates(const LinearMap& t,
                                                                                  const Arrangement& a1,
                                                                                  const Arrangement& a2);

}  // namespace arrangeatlas
