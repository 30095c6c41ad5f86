#pragma once

#include "arrangeatlas/arrangement.hpp"
#include "arrangeatlas/pha.hpp"
#include "arrangeatlas/schubert.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arrangeatlas {

/// Chart of the glued variety at a member F: the product of the base V/F
/// with the Schubert variety of the arrangement that the members one rank
/// below F cut out inside F.
struct Chart {
  std::size_t member = 0;                     // index into the PHA
  Subspace flat;
  std::vector<std::size_t> hyperplane_members;  // Hyp(F), as member indices
  Matrix frame;                               // rows: basis of F
  Arrangement restriction;                    // in frame coordinates
  Index fiber_dim = 0;                        // dim V/F

  /// Frame-coordinate subspace of F -> subspace of Q^d.
  Subspace lift(const Subspace& s) const;
  /// Ambient subspace contained in F -> frame coordinates.
  Subspace lower(const Subspace& s) const;
};

class Atlas {
 public:
  const PartialHyperplaneArrangement& pha() const { return pha_; }
  const std::vector<Chart>& charts() const { return charts_; }
  std::size_t size() const { return charts_.size(); }

  /// Member index of members()[i] ∩ members()[j].
  std::size_t overlap(std::size_t i, std::size_t j) const { return overlaps_[i * charts_.size() + j]; }

 private:
  Atlas(PartialHyperplaneArrangement pha, std::vector<Chart> charts, std::vector<std::size_t> overlaps)
      : pha_(std::move(pha)), charts_(std::move(charts)), overlaps_(std::move(overlaps)) {}

  friend Atlas build_atlas(const PartialHyperplaneArrangement&, const ExecutionOptions&);
  friend Atlas corrupt_for_testing(Atlas, std::size_t, std::size_t, std::size_t);

  PartialHyperplaneArrangement pha_;
  std::vector<Chart> charts_;
  std::vector<std::size_t> overlaps_;
};

/// One chart per member. Each chart's flat lattice, lifted back to Q^d, is
/// checked against the member's down-set; a mismatch is a logic_error.
Atlas build_atlas(const PartialHyperplaneArrangement& pha, const ExecutionOptions& options = {});

/// Replaces overlap(i, j) and overlap(j, i) with `member`. Only for
/// exercising the failure paths of the checks below.
Atlas corrupt_for_testing(Atlas atlas, std::size_t i, std::size_t j, std::size_t member);

struct CocycleCheck {
  bool ok = true;
  /// (F, F', F'') member indices of the first failing triple.
  std::optional<std::array<std::size_t, 3>> witness;
  /// Which part failed: "down-set-identity", "overlap-table" or
  /// "sampled-points".
  std::string failure;
};

/// For every F and every F', F'' ⊆ F:
///   down(F') ∩ down(F'') = down(F' ∩ F'').
/// Also cross-checks sampled points of each chart's Schubert variety:
/// a point lies in the sub-chart of F' iff its stabilizer is inside F'.
/// Samples are distinguished points and translates of them by vectors drawn
/// from `seed`.
CocycleCheck check_cocycle(const Atlas& atlas, std::uint64_t seed = 0);

struct SeparationCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 2>> witness;
};

/// For all F', F'': F' ∩ F'' is a member and no member below both strictly
/// contains it.
SeparationCheck separation_check(const Atlas& atlas);

struct OrbitRow {
  std::size_t member = 0;
  Index rank = 0;
  Index orbit_dim = 0;
  Subspace stabilizer;
  std::size_t chart = 0;
  ExtendedPoint distinguished_point;  // fixed point of the chart's Schubert variety
  Vector interior_sample;             // in F, outside every smaller member
};

std::vector<OrbitRow> orbit_flat_table(const Atlas& atlas);

/// Hasse diagram of the members under ⊆ in DOT. Node k is labelled
/// "F{rank}:{orbit_dim}"; one edge per covering pair, smaller -> larger.
std::string hasse_dot(const PartialHyperplaneArrangement& pha);
/// Same, for any list of subspaces of Q^d (e.g. the flats of a
/// non-essential arrangement). Nodes follow the order given.
std::string hasse_dot(const std::vector<Subspace>& members, Index ambient_dim);

}  // namespace arrangeatlas
