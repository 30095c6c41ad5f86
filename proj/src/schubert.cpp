#include "arrangeatlas/schubert.hpp"

#include "arrangeatlas/errors.hpp"
#include "arrangeatlas/pha.hpp"

#include <algorithm>
#include <string>

namespace arrangeatlas {

namespace {

void require_size(const SchubertVariety& y, const ExtendedPoint& x) {
  if (x.size() != y.coordinate_count()) {
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(y.coordinate_count()));
  }
}

void require_member(const SchubertVariety& y, const ExtendedPoint& x) {
  if (!is_member(y, x)) throw DomainError("not-a-member", "point is not in the Schubert variety");
}

Matrix rows_of(const Matrix& m, const IndexSet& s) {
  Matrix out(static_cast<Index>(s.size()), m.cols());
  for (std::size_t k = 0; k < s.size(); ++k) out.row(static_cast<Index>(k)) = m.row(static_cast<Index>(s[k]));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

IndexSet ExtendedPoint::finite_support() const {
  IndexSet out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_finite()) out.push_back(i);
  }
  return out;
}

SchubertVariety::SchubertVariety(Arrangement arrangement) : arrangement_(std::move(arrangement)) {
  if (!is_essential(arrangement_)) throw DomainError("not-essential", "Schubert varieties need an essential arrangement");
  lattice_ = flats(arrangement_);
}

ExtendedPoint embed(const SchubertVariety& y, const Vector& v) {
  if (v.size() != y.dimension()) throw DimensionMismatch("embed: vector length differs from ambient dimension");
  const Vector values = y.arrangement().normal_matrix() * v;
  std::vector<ExtendedScalar> coords(values.begin(), values.end());
  return ExtendedPoint(std::move(coords));
}

std::string to_string(MembershipReason reason) {
  switch (reason) {
    case MembershipReason::member:
      return "member";
    case MembershipReason::support_not_a_flat:
      return "support-not-a-flat";
    case MembershipReason::inconsistent_coordinates:
      return "inconsistent-coordinates";
  }
  return "unknown";
}

MembershipResult membership(const SchubertVariety& y, const ExtendedPoint& x) {
  require_size(y, x);
  const IndexSet support = x.finite_support();
  if (!y.lattice().contains(support)) return {false, MembershipReason::support_not_a_flat};

  // One elimination of [ℓ_F | x_F]: solvable iff no pivot lands in the
  // right-hand column.
  const Matrix& normals = y.arrangement().normal_matrix();
  const auto d = normals.cols();
  Matrix augmented(static_cast<Index>(support.size()), d + 1);
  for (std::size_t k = 0; k < support.size(); ++k) {
    augmented.row(static_cast<Index>(k)).head(d) = normals.row(static_cast<Index>(support[k]));
    augmented(static_cast<Index>(k), d) = x[support[k]].value();
  }
  const auto e = echelon(augmented);
  if (!e.pivots.empty() && e.pivots.back() == d) return {false, MembershipReason::inconsistent_coordinates};
  return {true, MembershipReason::member};
}

bool is_member(const SchubertVariety& y, const ExtendedPoint& x) { return membership(y, x).member; }

ExtendedPoint act(const SchubertVariety& y, const Vector& v, const ExtendedPoint& x) {
  require_member(y, x);
  const ExtendedPoint shift = embed(y, v);
  std::vector<ExtendedScalar> coords;
  coords.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) coords.push_back(x[i] + shift[i].value());
  return ExtendedPoint(std::move(coords));
}

OrbitDescriptor orbit_descriptor(const SchubertVariety& y, const ExtendedPoint& x) {
  require_member(y, x);
  IndexSet support = x.finite_support();
  // Image of V under (ℓ_i)_{i∈F}: the column space of ℓ_F.
  const Matrix image_rows = rows_of(y.arrangement().normal_matrix(), support).transpose();
  return {std::move(support), Subspace::span(image_rows)};
}

ExtendedPoint distinguished_point(const SchubertVariety& y, const IndexSet& flat) {
  if (!y.lattice().contains(flat)) throw DomainError("not-a-flat", "index set is not a flat");
  std::vector<ExtendedScalar> coords(y.coordinate_count(), ExtendedScalar::infinity());
  for (std::size_t i : flat) coords[i] = ExtendedScalar(0);
  return ExtendedPoint(std::move(coords));
}

Subspace stabilizer(const SchubertVariety& y, const ExtendedPoint& x) {
  require_member(y, x);
  return y.lattice()[*y.lattice().find(x.finite_support())].subspace;
}

bool in_minimal_neighborhood(const SchubertVariety& y, const ExtendedPoint& x, const ExtendedPoint& q) {
  require_member(y, x);
  require_member(y, q);
  return is_subset(x.finite_support(), q.finite_support());
}

bool in_minimal_slice(const SchubertVariety& y, const ExtendedPoint& x, const ExtendedPoint& q) {
  if (!in_minimal_neighborhood(y, x, q)) return false;
  for (std::size_t i : x.finite_support()) {
    if (!(x[i] == q[i])) return false;
  }
  return true;
}

Slice::Slice(const SchubertVariety& parent, const IndexSet& flat)
    : parent_size_(parent.coordinate_count()),
      restriction_([&] {
        if (!parent.lattice().contains(flat)) throw DomainError("not-a-flat", "index set is not a flat");
        return arrangeatlas::restriction(parent.arrangement(), flat);
      }()),
      variety_(restriction_.arrangement) {}

ExtendedPoint Slice::inject(const ExtendedPoint& restricted_point) const {
  if (restricted_point.size() != variety_.coordinate_count()) {
    throw DimensionMismatch("inject: point does not live in the restricted variety");
  }
  std::vector<ExtendedScalar> coords(parent_size_, ExtendedScalar(0));
  for (std::size_t i = 0; i < parent_size_; ++i) {
    const auto& target = restriction_.parent_to_restricted[i];
    if (target) coords[i] = target->scale * restricted_point[target->hyperplane];
  }
  return ExtendedPoint(std::move(coords));
}

Slice slice_at(const SchubertVariety& y, const IndexSet& flat) { return Slice(y, flat); }

ExtendedPoint limit(const SchubertVariety& y, const Vector& v) {
  if (v.size() != y.dimension()) throw DimensionMismatch("limit: vector length differs from ambient dimension");
  std::vector<ExtendedScalar> coords;
  coords.reserve(y.coordinate_count());
  for (std::size_t i = 0; i < y.coordinate_count(); ++i) {
    // t·ℓ_i(v) diverges unless ℓ_i(v) = 0.
    coords.push_back(y.arrangement().evaluate(i, v) == 0 ? ExtendedScalar(0) : ExtendedScalar::infinity());
  }
  return ExtendedPoint(std::move(coords));
}

std::vector<std::optional<std::pair<std::size_t, Rational>>> morphism_coordinates(const LinearMap& t,
                                                                                  const Arrangement& a1,
                                                                                  const Arrangement& a2) {
  const ArrangementMorphismCheck check = check_arrangement_morphism(t, a1, a2);
  if (!check.ok) {
    std::vector<Subspace> witness;
    if (check.preimage) witness.push_back(*check.preimage);
    throw DomainError("invalid-morphism",
                      "preimage of target hyperplane " + std::to_string(*check.target_hyperplane + 1) +
                          " is neither a source hyperplane nor the whole space",
                      std::move(witness));
  }
  std::vector<Subspace> source_hyperplanes;
  for (std::size_t j = 0; j < a1.size(); ++j) source_hyperplanes.push_back(a1.hyperplane(j));

  std::vector<std::optional<std::pair<std::size_t, Rational>>> out;
  for (std::size_t k = 0; k < a2.size(); ++k) {
    const Subspace pulled = preimage(t, a2.hyperplane(k));
    if (pulled.is_full()) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const auto j = static_cast<std::size_t>(
        std::find(source_hyperplanes.begin(), source_hyperplanes.end(), pulled) - source_hyperplanes.begin());
    // Witness: the first standard basis vector outside H_j.
    const Vector normal = a1.normal(j);
    Index m = 0;
    while (normal(m) == 0) ++m;
    const Vector witness = Vector::Unit(a1.ambient_dim(), m);
    const Rational c = a2.evaluate(k, t(witness)) / a1.evaluate(j, witness);
    out.emplace_back(std::make_pair(j, c));
  }
  return out;
}

ExtendedPoint extend_morphism(const LinearMap& t, const SchubertVariety& y1, const SchubertVariety& y2,
                              const ExtendedPoint& x) {
  const auto coordinates = morphism_coordinates(t, y1.arrangement(), y2.arrangement());
  require_member(y1, x);
  std::vector<ExtendedScalar> out;
  out.reserve(coordinates.size());
  for (const auto& entry : coordinates) {
    if (!entry) {
      out.emplace_back(0);
    } else {
      out.push_back(entry->second * x[entry->first]);
    }
  }
  return ExtendedPoint(std::move(out));
}

}  // namespace arrangeatlas
