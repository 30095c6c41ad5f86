#pragma once

#include "arrangeatlas/arrangement.hpp"
#include "arrangeatlas/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arrangeatlas {

class PartialHyperplaneArrangement;
struct ValidationResult;

struct ExecutionOptions {
  unsigned threads = 1;
};

enum class Axiom3Reason { not_essential_in_flat, generated_flats_mismatch };

std::string to_string(Axiom3Reason reason);

struct Axiom3Failure {
  Subspace flat;
  Axiom3Reason reason;
};

struct ValidationReport {
  bool axiom1_ok = false;
  bool axiom2_ok = false;
  std::optional<std::pair<Subspace, Subspace>> axiom2_witness;
  std::vector<Axiom3Failure> axiom3_failures;

  bool ok() const { return axiom1_ok && axiom2_ok && axiom3_failures.empty(); }
};

/// A finite set of subspaces containing {0}, closed under intersection, and
/// whose every down-set is the lattice of flats of an essential arrangement
/// in that member. Instances only come out of validate() and
/// from_order_filter(), so holders may rely on all three axioms.
class PartialHyperplaneArrangement {
 public:
  Index ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return members_.size(); }
  /// Ordered by rank, then by basis entries.
  const std::vector<Subspace>& members() const { return members_; }
  const Subspace& operator[](std::size_t k) const { return members_[k]; }

  std::optional<std::size_t> find(const Subspace& s) const;
  bool contains(const Subspace& s) const { return find(s).has_value(); }

  /// Members strictly inside members()[k] with rank one less.
  std::vector<std::size_t> hyperplanes_below(std::size_t k) const;
  /// Members contained in members()[k], including itself.
  std::vector<std::size_t> down_set(std::size_t k) const;

 private:
  PartialHyperplaneArrangement(Index ambient_dim, std::vector<Subspace> members)
      : ambient_dim_(ambient_dim), members_(std::move(members)) {}

  friend ValidationResult validate(Index, const std::vector<Subspace>&, const ExecutionOptions&);

  Index ambient_dim_ = 0;
  std::vector<Subspace> members_;
};

struct ValidationResult {
  ValidationReport report;
  std::optional<PartialHyperplaneArrangement> pha;
};

/// Checks the three axioms. Inputs are deduplicated and sorted first;
/// witnesses name the first failure in canonical member order. Throws
/// DimensionMismatch if an input lives outside Q^d.
ValidationResult validate(Index ambient_dim, const std::vector<Subspace>& subspaces,
                          const ExecutionOptions& options = {});

/// The flat subspaces of `a` lying in `selected` ∪ {0} form a PHA provided
/// they are closed downward under ⊆ among flats. Errors: "not-essential",
/// "not-a-flat", "not-an-order-filter".
PartialHyperplaneArrangement from_order_filter(const Arrangement& a, const std::vector<Subspace>& selected);

/// Every flat subspace of an essential arrangement.
PartialHyperplaneArrangement full_lattice(const Arrangement& a);

struct MorphismCheck {
  bool ok = true;
  int failed_condition = 0;  // 0 when ok, else 1 or 2
  std::optional<Subspace> source_flat;
  std::optional<Subspace> target_flat;
  /// Condition 2 only: preimage(t, target) ∩ source, which is not a member.
  std::optional<Subspace> offending;
};

/// Morphism test between partial hyperplane arrangements:
///  (1) each source member maps into some target member;
///  (2) preimage(t, F2) ∩ F1 is a source member for all pairs.
MorphismCheck check_morphism(const LinearMap& t, const PartialHyperplaneArrangement& src,
                             const PartialHyperplaneArrangement& dst);

struct ArrangementMorphismCheck {
  bool ok = true;
  std::optional<std::size_t> target_hyperplane;
  std::optional<Subspace> preimage;
};

/// Hyperplane-level criterion: each target hyperplane pulls back to a
/// source hyperplane or to the whole source space.
ArrangementMorphismCheck check_arrangement_morphism(const LinearMap& t, const Arrangement& a1,
                                                    const Arrangement& a2);

/// Smallest member containing v, if any.
std::optional<Subspace> limit_flat(const PartialHyperplaneArrangement& pha, const Vector& v);

/// A vector of members()[k] lying in no smaller member. Deterministic: tries
/// basis combinations with coefficients (1, t, t², …) for t = 1, 2, …; a
/// proper subspace meets that curve in fewer than rank points, so the
/// search is finite.
Vector relative_interior_sample(const PartialHyperplaneArrangement& pha, std::size_t k);

}  // namespace arrangeatlas
