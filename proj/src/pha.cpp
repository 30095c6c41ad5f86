#include "arrangeatlas/pha.hpp"

#include "arrangeatlas/errors.hpp"
#include "arrangeatlas/parallel.hpp"

#include <algorithm>
#include <set>

namespace arrangeatlas {

std::string to_string(Axiom3Reason reason) {
  switch (reason) {
    case Axiom3Reason::not_essential_in_flat:
      return "not-essential-in-F";
    case Axiom3Reason::generated_flats_mismatch:
      return "generated-flats-mismatch";
  }
  return "unknown";
}

std::optional<std::size_t> PartialHyperplaneArrangement::find(const Subspace& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it == members_.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::vector<std::size_t> PartialHyperplaneArrangement::hyperplanes_below(std::size_t k) const {
  std::vector<std::size_t> out;
  const Subspace& f = members_[k];
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (members_[j].rank() + 1 == f.rank() && subspace_leq(members_[j], f)) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> PartialHyperplaneArrangement::down_set(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (subspace_leq(members_[j], members_[k])) out.push_back(j);
  }
  return out;
}

namespace {

// Axiom 3 at one member. `members` is sorted and deduplicated.
std::optional<Axiom3Reason> check_axiom3(const std::vector<Subspace>& members, std::size_t k) {
  const Subspace& f = members[k];
  std::vector<Subspace> hyperplanes;
  std::set<Subspace> down;
  for (const Subspace& g : members) {
    if (!subspace_leq(g, f)) continue;
    down.insert(g);
    if (g.rank() + 1 == f.rank()) hyperplanes.push_back(g);
  }

  Subspace common = f;
  for (const Subspace& h : hyperplanes) common = intersect(common, h);
  if (!common.is_zero()) return Axiom3Reason::not_essential_in_flat;

  // All intersections of subsets of the hyperplanes, grown one hyperplane
  // at a time from the empty intersection f.
  std::set<Subspace> generated{f};
  std::vector<Subspace> frontier{f};
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const Subspace& g : frontier) {
      for (const Subspace& h : hyperplanes) {
        Subspace meet = intersect(g, h);
        if (generated.insert(meet).second) next.push_back(std::move(meet));
      }
    }
    frontier = std::move(next);
  }
  if (generated != down) return Axiom3Reason::generated_flats_mismatch;
  return std::nullopt;
}

}  // namespace

ValidationResult validate(Index ambient_dim, const std::vector<Subspace>& subspaces,
                          const ExecutionOptions& options) {
  for (const Subspace& s : subspaces) {
    if (s.ambient_dim() != ambient_dim) throw DimensionMismatch("validate: subspace outside the ambient space");
  }
  std::vector<Subspace> members = subspaces;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  ValidationResult result;
  ValidationReport& report = result.report;
  report.axiom1_ok = std::binary_search(members.begin(), members.end(), Subspace::zero(ambient_dim));

  report.axiom2_ok = true;
  for (std::size_t i = 0; i < members.size() && report.axiom2_ok; ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Subspace meet = intersect(members[i], members[j]);
      if (!std::binary_search(members.begin(), members.end(), meet)) {
        report.axiom2_ok = false;
        report.axiom2_witness = std::make_pair(members[i], members[j]);
        break;
      }
    }
  }

  std::vector<std::optional<Axiom3Reason>> outcomes(members.size());
  detail::parallel_for(members.size(), options.threads,
                       [&](std::size_t k) { outcomes[k] = check_axiom3(members, k); });
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (outcomes[k]) report.axiom3_failures.push_back({members[k], *outcomes[k]});
  }

  if (report.ok()) result.pha = PartialHyperplaneArrangement(ambient_dim, std::move(members));
  return result;
}

PartialHyperplaneArrangement from_order_filter(const Arrangement& a, const std::vector<Subspace>& selected) {
  if (!is_essential(a)) throw DomainError("not-essential", "arrangement is not essential");
  const FlatLattice lattice = flats(a);
  std::set<Subspace> chosen{Subspace::zero(a.ambient_dim())};
  for (const Subspace& s : selected) {
    if (s.ambient_dim() != a.ambient_dim()) throw DimensionMismatch("from_order_filter: subspace outside the ambient space");
    if (!lattice.find(s)) throw DomainError("not-a-flat", "selected subspace is not a flat of the arrangement", {s});
    chosen.insert(s);
  }

  std::vector<Subspace> flat_subspaces;
  for (const MatroidFlat& f : lattice) flat_subspaces.push_back(f.subspace);
  std::sort(flat_subspaces.begin(), flat_subspaces.end());

  for (const Subspace& s : chosen) {
    for (const Subspace& g : flat_subspaces) {
      if (subspace_leq(g, s) && !chosen.contains(g)) {
        throw DomainError("not-an-order-filter", "a selected flat contains a flat that is not selected", {s, g});
      }
    }
  }

  ValidationResult result = validate(a.ambient_dim(), {chosen.begin(), chosen.end()});
  if (!result.pha) throw std::logic_error("order filter failed to validate as a partial hyperplane arrangement");
  return std::move(*result.pha);
}

PartialHyperplaneArrangement full_lattice(const Arrangement& a) {
  std::vector<Subspace> all;
  for (const MatroidFlat& f : flats(a)) all.push_back(f.subspace);
  return from_order_filter(a, all);
}

MorphismCheck check_morphism(const LinearMap& t, const PartialHyperplaneArrangement& src,
                             const PartialHyperplaneArrangement& dst) {
  if (t.source_dim() != src.ambient_dim() || t.target_dim() != dst.ambient_dim()) {
    throw DimensionMismatch("check_morphism: map dimensions do not match the arrangements");
  }
  MorphismCheck out;
  for (const Subspace& f1 : src.members()) {
    const Subspace img = image(t, f1);
    const bool lands = std::any_of(dst.members().begin(), dst.members().end(),
                                   [&](const Subspace& f2) { return subspace_leq(img, f2); });
    if (!lands) {
      out.ok = false;
      out.failed_condition = 1;
      out.source_flat = f1;
      return out;
    }
  }
  for (const Subspace& f1 : src.members()) {
    for (const Subspace& f2 : dst.members()) {
      Subspace pulled = intersect(preimage(t, f2), f1);
      if (!src.contains(pulled)) {
        out.ok = false;
        out.failed_condition = 2;
        out.source_flat = f1;
        out.target_flat = f2;
        out.offending = std::move(pulled);
        return out;
      }
    }
  }
  return out;
}

ArrangementMorphismCheck check_arrangement_morphism(const LinearMap& t, const Arrangement& a1,
                                                    const Arrangement& a2) {
  if (t.source_dim() != a1.ambient_dim() || t.target_dim() != a2.ambient_dim()) {
    throw DimensionMismatch("check_arrangement_morphism: map dimensions do not match the arrangements");
  }
  if (!is_essential(a1) || !is_essential(a2)) throw DomainError("not-essential", "arrangement is not essential");
  std::vector<Subspace> source_hyperplanes;
  for (std::size_t j = 0; j < a1.size(); ++j) source_hyperplanes.push_back(a1.hyperplane(j));

  ArrangementMorphismCheck out;
  for (std::size_t k = 0; k < a2.size(); ++k) {
    Subspace pulled = preimage(t, a2.hyperplane(k));
    if (pulled.is_full()) continue;
    if (std::find(source_hyperplanes.begin(), source_hyperplanes.end(), pulled) != source_hyperplanes.end()) continue;
    out.ok = false;
    out.target_hyperplane = k;
    out.preimage = std::move(pulled);
    return out;
  }
  return out;
}

std::optional<Subspace> limit_flat(const PartialHyperplaneArrangement& pha, const Vector& v) {
  if (v.size() != pha.ambient_dim()) throw DimensionMismatch("limit_flat: vector length differs from ambient dimension");
  // Members are sorted by rank, and the containing members are closed under
  // intersection, so the first hit is the smallest one.
  for (const Subspace& f : pha.members()) {
    if (f.contains(v)) return f;
  }
  return std::nullopt;
}

Vector relative_interior_sample(const PartialHyperplaneArrangement& pha, std::size_t k) {
  const Subspace& f = pha[k];
  std::vector<const Subspace*> below;
  for (const Subspace& g : pha.members()) {
    if (g.rank() < f.rank() && subspace_leq(g, f)) below.push_back(&g);
  }
  const Matrix& basis = f.basis();
  for (long t = 1;; ++t) {
    Vector coeffs(f.rank());
    Rational power(1);
    for (Index i = 0; i < f.rank(); ++i) {
      coeffs(i) = power;
      power *= t;
    }
    const Vector v = basis.transpose() * coeffs;
    if (std::none_of(below.begin(), below.end(), [&](const Subspace* g) { return g->contains(v); })) return v;
  }
}

}  // namespace arrangeatlas
