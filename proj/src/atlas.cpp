#include "arrangeatlas/atlas.hpp"

#include "arrangeatlas/parallel.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arrangeatlas {

Subspace Chart::lift(const Subspace& s) const {
  if (s.ambient_dim() != frame.rows()) throw DimensionMismatch("chart lift: subspace does not live in the chart frame");
  const Matrix rows = s.basis() * frame;
  return Subspace::span(rows);
}

Subspace Chart::lower(const Subspace& s) const {
  if (!subspace_leq(s, flat)) throw DimensionMismatch("chart lower: subspace is not inside the chart flat");
  Matrix rows(s.rank(), flat.rank());
  for (Index i = 0; i < s.rank(); ++i) rows.row(i) = flat.coordinates(s.basis().row(i).transpose()).transpose();
  return Subspace::span(rows);
}

namespace {

Chart make_chart(const PartialHyperplaneArrangement& pha, std::size_t k) {
  Chart chart{k, pha[k], pha.hyperplanes_below(k), pha[k].basis(), Arrangement(Matrix(0, pha[k].rank())),
              pha.ambient_dim() - pha[k].rank()};
  std::vector<Vector> normals;
  for (std::size_t h : chart.hyperplane_members) {
    const Subspace lowered = chart.lower(pha[h]);
    normals.emplace_back(annihilator(lowered).basis().row(0).transpose());
  }
  chart.restriction = Arrangement(chart.flat.rank(), normals);

  std::set<Subspace> lifted;
  for (const MatroidFlat& f : flats(chart.restriction)) lifted.insert(chart.lift(f.subspace));
  std::set<Subspace> down;
  for (std::size_t j : pha.down_set(k)) down.insert(pha[j]);
  if (lifted != down || !is_essential(chart.restriction)) {
    throw std::logic_error("chart lattice does not match the member's down-set");
  }
  return chart;
}

std::vector<std::vector<bool>> down_sets(const PartialHyperplaneArrangement& pha) {
  std::vector<std::vector<bool>> out(pha.size(), std::vector<bool>(pha.size(), false));
  for (std::size_t k = 0; k < pha.size(); ++k)
    for (std::size_t j : pha.down_set(k)) out[k][j] = true;
  return out;
}

}  // namespace

Atlas build_atlas(const PartialHyperplaneArrangement& pha, const ExecutionOptions& options) {
  const std::size_t n = pha.size();
  std::vector<std::optional<Chart>> built(n);
  detail::parallel_for(n, options.threads, [&](std::size_t k) { built[k] = make_chart(pha, k); });
  std::vector<Chart> charts;
  charts.reserve(n);
  for (auto& c : built) charts.push_back(std::move(*c));

  std::vector<std::size_t> overlaps(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto meet = pha.find(intersect(pha[i], pha[j]));
      if (!meet) throw std::logic_error("partial hyperplane arrangement not closed under intersection");
      overlaps[i * n + j] = overlaps[j * n + i] = *meet;
    }
  }
  return Atlas(pha, std::move(charts), std::move(overlaps));
}

Atlas corrupt_for_testing(Atlas atlas, std::size_t i, std::size_t j, std::size_t member) {
  const std::size_t n = atlas.size();
  atlas.overlaps_[i * n + j] = atlas.overlaps_[j * n + i] = member;
  return atlas;
}

CocycleCheck check_cocycle(const Atlas& atlas, std::uint64_t seed) {
  const PartialHyperplaneArrangement& pha = atlas.pha();
  const std::size_t n = pha.size();
  const auto down = down_sets(pha);
  CocycleCheck out;
  auto fail = [&](std::size_t f, std::size_t a, std::size_t b, const char* what) {
    out.ok = false;
    out.witness = std::array<std::size_t, 3>{f, a, b};
    out.failure = what;
    return out;
  };

  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!down[f][a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!down[f][b]) continue;
        const std::size_t meet = atlas.overlap(a, b);
        for (std::size_t g = 0; g < n; ++g) {
          if ((down[a][g] && down[b][g]) != down[meet][g]) return fail(f, a, b, "down-set-identity");
        }
        if (!(intersect(pha[a], pha[b]) == pha[meet])) return fail(f, a, b, "overlap-table");
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coefficient(-3, 3);
  for (std::size_t f = 0; f < n; ++f) {
    const Chart& chart = atlas.charts()[f];
    const SchubertVariety y(chart.restriction);

    // Distinguished point of each sub-member, found through its lifted flat.
    std::vector<std::pair<std::size_t, ExtendedPoint>> sub_points;
    for (const MatroidFlat& flat : y.lattice()) {
      const auto member = pha.find(chart.lift(flat.subspace));
      if (!member) throw std::logic_error("chart flat is not a member");
      sub_points.emplace_back(*member, distinguished_point(y, flat.indices));
    }

    std::vector<ExtendedPoint> samples;
    for (const auto& entry : sub_points) {
      samples.push_back(entry.second);
      Vector v(y.dimension());
      for (Index i = 0; i < v.size(); ++i) v(i) = coefficient(rng);
      samples.push_back(act(y, v, entry.second));
    }

    for (const ExtendedPoint& q : samples) {
      const Subspace stab = chart.lift(stabilizer(y, q));
      for (const auto& [member, x] : sub_points) {
        if (in_minimal_neighborhood(y, x, q) != subspace_leq(stab, pha[member])) {
          return fail(f, member, pha.find(stab).value_or(n), "sampled-points");
        }
      }
    }
  }
  return out;
}

SeparationCheck separation_check(const Atlas& atlas) {
  const PartialHyperplaneArrangement& pha = atlas.pha();
  SeparationCheck out;
  for (std::size_t a = 0; a < pha.size(); ++a) {
    for (std::size_t b = a; b < pha.size(); ++b) {
      const Subspace meet = intersect(pha[a], pha[b]);
      bool separated = pha.contains(meet);
      for (std::size_t g = 0; g < pha.size() && separated; ++g) {
        if (subspace_leq(pha[g], pha[a]) && subspace_leq(pha[g], pha[b]) && !subspace_leq(pha[g], meet)) {
          separated = false;
        }
      }
      if (!separated) {
        out.ok = false;
        out.witness = std::array<std::size_t, 2>{a, b};
        return out;
      }
    }
  }
  return out;
}

std::vector<OrbitRow> orbit_flat_table(const Atlas& atlas) {
  const PartialHyperplaneArrangement& pha = atlas.pha();
  std::vector<OrbitRow> rows;
  rows.reserve(pha.size());
  for (std::size_t k = 0; k < pha.size(); ++k) {
    const Chart& chart = atlas.charts()[k];
    OrbitRow row;
    row.member = k;
    row.rank = pha[k].rank();
    row.orbit_dim = pha.ambient_dim() - pha[k].rank();
    row.stabilizer = pha[k];
    row.chart = k;
    row.distinguished_point = ExtendedPoint(std::vector<ExtendedScalar>(chart.restriction.size(), ExtendedScalar(0)));
    row.interior_sample = relative_interior_sample(pha, k);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string hasse_dot(const std::vector<Subspace>& members, Index ambient_dim) {
  std::ostringstream out;
  out << "digraph hasse {\n";
  for (std::size_t k = 0; k < members.size(); ++k) {
    out << "  n" << k << " [label=\"F" << members[k].rank() << ":" << ambient_dim - members[k].rank() << "\"];\n";
  }
  for (std::size_t lo = 0; lo < members.size(); ++lo) {
    for (std::size_t hi = 0; hi < members.size(); ++hi) {
      if (lo == hi || members[lo].rank() >= members[hi].rank() || !subspace_leq(members[lo], members[hi])) continue;
      bool covers = true;
      for (std::size_t mid = 0; mid < members.size() && covers; ++mid) {
        if (mid == lo || mid == hi) continue;
        if (members[lo].rank() < members[mid].rank() && members[mid].rank() < members[hi].rank() &&
            subspace_leq(members[lo], members[mid]) && subspace_leq(members[mid], members[hi])) {
          covers = false;
        }
      }
      if (covers) out << "  n" << lo << " -> n" << hi << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string hasse_dot(const PartialHyperplaneArrangement& pha) { return hasse_dot(pha.members(), pha.ambient_dim()); }

}  // namespace arrangeatlas
