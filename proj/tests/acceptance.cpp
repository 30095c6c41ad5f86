// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "arrangeatlas/atlas.hpp"
#include "arrangeatlas/cli.hpp"
#include "arrangeatlas/io.hpp"
#include "arrangeatlas/pha.hpp"
#include "arrangeatlas/schubert.hpp"

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace arrangeatlas;
using namespace testsupport;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string key(const ExtendedPoint& x) { return io::to_json(x).dump(); }

const char* kArrangementFixtures[] = {"p1.json", "b2.json", "x3.json", "a3.json"};

// ---------------------------------------------------------------------------

/// Members of Figure-1 by name, straight from the point coordinates.
std::map<std::string, Subspace> figure1_cones() {
  const std::map<char, Vector> points{{'A', vec({0, 0, 1, 1})},
                                      {'B', vec({0, 1, 0, 1})},
                                      {'C', vec({0, 0, 0, 1})},
                                      {'D', vec({0, -1, 0, 1})},
                                      {'E', vec({1, 0, 0, 1})}};
  std::map<std::string, Subspace> out;
  out["0"] = Subspace::zero(4);
  for (const std::string name : {"A", "B", "C", "D", "E", "AB", "AC", "AD", "BE", "CE", "DE", "AE", "BCD", "ABCD", "BCDE"}) {
    Matrix rows(static_cast<Index>(name.size()), 4);
    for (std::size_t k = 0; k < name.size(); ++k) rows.row(static_cast<Index>(k)) = points.at(name[k]).transpose();
    out[name] = Subspace::span(rows);
  }
  return out;
}

/// Distinct intersections of subsets of `hyperplanes`, starting from `top`.
std::set<Subspace> subset_intersections(const Subspace& top, const std::vector<Subspace>& hyperplanes) {
  std::set<Subspace> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << hyperplanes.size()); ++mask) {
    Subspace s = top;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i)
      if (mask >> i & 1) s = intersect(s, hyperplanes[i]);
    out.insert(s);
  }
  return out;
}

Verdict figure1_counts() {
  Verdict v;
  const auto start = Clock::now();
  const io::PhaInput in = load_subspaces("fig1.json");
  const ValidationResult result = validate(in.ambient_dim, in.subspaces);
  v.require(result.report.ok(), "fig1 does not validate");
  if (!v.ok) return v;
  const PartialHyperplaneArrangement& pha = *result.pha;
  v.require(pha.size() == 16, "fig1 has " + std::to_string(pha.size()) + " members");
  const Atlas atlas = build_atlas(pha);
  const auto cones = figure1_cones();
  for (const auto& [name, member] : cones) v.require(pha.contains(member), "cone(" + name + ") missing");

  for (const std::string plane : {"ABCD", "BCDE"}) {
    const std::size_t k = *pha.find(cones.at(plane));
    const Chart& chart = atlas.charts()[k];
    const std::size_t count = flats(chart.restriction).size();
    v.require(count == 10, "chart at " + plane + " has " + std::to_string(count) + " flats");

    // Oracle: rank-(r-1) members inside the plane, all subset intersections.
    std::vector<Subspace> hyperplanes;
    for (const auto& [name, s] : cones)
      if (s.rank() == 2 && subspace_leq(s, cones.at(plane))) hyperplanes.push_back(s);
    const std::set<Subspace> oracle = subset_intersections(cones.at(plane), hyperplanes);
    v.require(oracle.size() == 10, "oracle count for " + plane + " is " + std::to_string(oracle.size()));
    std::set<Subspace> lifted;
    for (const MatroidFlat& f : flats(chart.restriction)) lifted.insert(chart.lift(f.subspace));
    v.require(lifted == oracle, "chart lattice at " + plane + " differs from the oracle");
  }
  std::set<Subspace> expected_bcde;
  for (const std::string name : {"0", "B", "C", "D", "E", "BE", "CE", "DE", "BCD", "BCDE"}) expected_bcde.insert(cones.at(name));
  const Chart& bcde = atlas.charts()[*pha.find(cones.at("BCDE"))];
  std::set<Subspace> lifted;
  for (const MatroidFlat& f : flats(bcde.restriction)) lifted.insert(bcde.lift(f.subspace));
  v.require(lifted == expected_bcde, "BCDE down-set differs from {0},B,C,D,E,BE,CE,DE,BCD,BCDE");

  const double elapsed = seconds_since(start);
  v.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  if (v.ok) v.detail = "16 members, 10 + 10 chart flats, " + std::to_string(elapsed) + " s";
  return v;
}

// ---------------------------------------------------------------------------

Verdict orbit_flat_bijection() {
  Verdict v;
  const auto start = Clock::now();
  std::vector<std::pair<Arrangement, std::optional<std::size_t>>> cases{{load_arrangement("b2.json"), 4},
                                                                        {load_arrangement("x3.json"), 5}};
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) cases.emplace_back(random_essential_arrangement(rng), std::nullopt);

  for (const auto& [a, expected] : cases) {
    const SchubertVariety y(a);
    const std::size_t flat_count = y.lattice().size();
    std::set<std::string> points;
    std::set<Subspace> stabilizers;
    for (const MatroidFlat& f : y.lattice()) {
      const ExtendedPoint x = distinguished_point(y, f.indices);
      points.insert(key(x));
      stabilizers.insert(stabilizer(y, x));
    }
    v.require(points.size() == flat_count, "distinguished point count differs from flat count");
    v.require(stabilizers.size() == flat_count, "stabilizer count differs from flat count");
    if (expected) v.require(flat_count == *expected, "fixture flat count " + std::to_string(flat_count));
    std::set<IndexSet> library;
    for (const MatroidFlat& f : y.lattice()) library.insert(f.indices);
    v.require(library == subset_enumeration_flats(a), "flats differ from the subset-enumeration oracle");
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s");
  if (v.ok) v.detail = std::to_string(cases.size()) + " arrangements, " + std::to_string(elapsed) + " s";
  return v;
}

// ---------------------------------------------------------------------------

Verdict membership_equivalence() {
  Verdict v;
  std::mt19937_64 rng(3);
  std::size_t checked = 0, members = 0;
  for (const char* name : kArrangementFixtures) {
    const Arrangement a = load_arrangement(name);
    const SchubertVariety y(a);
    const auto flat_sets = subset_enumeration_flats(a);
    const auto dist = distinguished_points(y);
    std::uniform_int_distribution<std::size_t> pick_flat(0, dist.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_coord(0, a.size() - 1);
    std::uniform_int_distribution<int> value(1, 5);

    for (int draw = 0; draw < 500; ++draw) {
      ExtendedPoint x;
      bool generated_member = false;
      switch (draw % 5) {
        case 0:
          x = embed(y, random_vector(rng, a.ambient_dim()));
          generated_member = true;
          break;
        case 1:
          x = act(y, random_vector(rng, a.ambient_dim()), dist[pick_flat(rng)]);
          generated_member = true;
          break;
        case 2:
          x = curve_limit(a, random_vector(rng, a.ambient_dim()), random_vector(rng, a.ambient_dim()));
          generated_member = true;
          break;
        case 3: {  // support corruption: toggle one coordinate between finite and ∞
          std::vector<ExtendedScalar> c = random_member(rng, y).coords();
          const std::size_t i = pick_coord(rng);
          c[i] = c[i].is_finite() ? ExtendedScalar::infinity() : ExtendedScalar(value(rng));
          x = ExtendedPoint(std::move(c));
          break;
        }
        default: {  // value corruption: shift one finite coordinate
          std::vector<ExtendedScalar> c = act(y, random_vector(rng, a.ambient_dim()), dist.back()).coords();
          const std::size_t i = pick_coord(rng);
          c[i] = c[i] + Rational(value(rng));
          x = ExtendedPoint(std::move(c));
          break;
        }
      }
      const bool got = is_member(y, x);
      v.require(got == reference_membership(a, flat_sets, x), std::string(name) + ": disagreement at " + key(x));
      if (generated_member) v.require(got, std::string(name) + ": generated point rejected " + key(x));
      ++checked;
      members += got;
    }
  }
  if (v.ok) {
    v.detail = std::to_string(checked) + " points agree (" + std::to_string(members) + " members, " +
               std::to_string(checked - members) + " non-members)";
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict limit_classification() {
  Verdict v;
  std::mt19937_64 rng(4);
  std::size_t checked = 0;
  for (const char* name : kArrangementFixtures) {
    const Arrangement a = load_arrangement(name);
    const SchubertVariety y(a);
    std::uniform_int_distribution<std::size_t> pick(0, y.lattice().size() - 1);
    for (int draw = 0; draw < 500; ++draw) {
      // Half generic, half drawn from a random flat so coordinates vanish.
      const Vector vv = draw % 2 == 0 ? random_vector(rng, a.ambient_dim())
                                      : random_vector_in(rng, y.lattice()[pick(rng)].subspace);
      IndexSet vanishing;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (ref_dot(a.normal(i), vv) == 0) vanishing.push_back(i);
      const ExtendedPoint x = limit(y, vv);
      v.require(x == distinguished_point(y, vanishing), std::string(name) + ": limit is not x_F");
      const Subspace stab = stabilizer(y, x);
      v.require(stab.contains(vv), std::string(name) + ": v outside stabilizer of its limit");
      for (const MatroidFlat& g : y.lattice()) {
        if (subspace_leq(g.subspace, stab) && !(g.subspace == stab)) {
          v.require(!g.subspace.contains(vv), std::string(name) + ": v in a smaller stabilizer");
        }
      }
      ++checked;
    }
  }
  if (v.ok) v.detail = std::to_string(checked) + " directions";
  return v;
}

// ---------------------------------------------------------------------------

/// q' with inject(q') = q, if q is in the image of the slice.
std::optional<ExtendedPoint> invert_slice(const Slice& slice, const ExtendedPoint& q) {
  const Restriction& r = slice.restriction();
  for (std::size_t i : r.flat)
    if (!(q[i] == ExtendedScalar(0))) return std::nullopt;
  std::vector<ExtendedScalar> coords(slice.variety().coordinate_count(), ExtendedScalar(0));
  std::vector<bool> seen(coords.size(), false);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto& target = r.parent_to_restricted[i];
    if (!target || seen[target->hyperplane]) continue;
    seen[target->hyperplane] = true;
    coords[target->hyperplane] = Rational(1) / target->scale * q[i];
  }
  ExtendedPoint candidate(std::move(coords));
  if (!is_member(slice.variety(), candidate) || !(slice.inject(candidate) == q)) return std::nullopt;
  return candidate;
}

void check_slices(Verdict& v, const SchubertVariety& y, const std::string& label, std::mt19937_64& rng,
                  std::size_t& probed, std::size_t& inside) {
  std::vector<ExtendedPoint> samples = distinguished_points(y);
  for (int draw = 0; draw < 100; ++draw) samples.push_back(random_member(rng, y));
  for (const MatroidFlat& f : y.lattice()) {
    const ExtendedPoint xf = distinguished_point(y, f.indices);
    const Slice slice = slice_at(y, f.indices);
    std::vector<ExtendedPoint> probes = samples;
    // Points of the slice itself, pushed through the injection.
    for (const ExtendedPoint& q : distinguished_points(slice.variety())) probes.push_back(slice.inject(q));
    for (int draw = 0; draw < 20; ++draw) probes.push_back(slice.inject(random_member(rng, slice.variety())));
    for (const ExtendedPoint& q : probes) {
      v.require(is_member(y, q), label + ": probe is not a member");
      const bool in_slice = in_minimal_slice(y, xf, q);
      const bool in_image = invert_slice(slice, q).has_value();
      v.require(in_slice == in_image, label + ": slice mismatch at " + key(q));
      ++probed;
      inside += in_slice;
    }
  }
}

Verdict slice_identity() {
  Verdict v;
  std::mt19937_64 rng(5);
  std::size_t probed = 0, inside = 0;
  check_slices(v, SchubertVariety(load_arrangement("x3.json")), "X3", rng, probed, inside);
  const PartialHyperplaneArrangement pha = load_pha("fig1.json");
  const Atlas atlas = build_atlas(pha);
  const auto cones = figure1_cones();
  for (const std::string plane : {"ABCD", "BCDE"}) {
    const Chart& chart = atlas.charts()[*pha.find(cones.at(plane))];
    check_slices(v, SchubertVariety(chart.restriction), "chart " + plane, rng, probed, inside);
  }
  if (v.ok) {
    v.detail = "X3 and both Figure-1 plane charts, " + std::to_string(probed) + " probes (" + std::to_string(inside) +
               " in the slice)";
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict cocycle_and_separation() {
  Verdict v;
  const auto start = Clock::now();
  std::size_t checked = 0;
  auto check = [&](const PartialHyperplaneArrangement& pha, const std::string& label) {
    const Atlas atlas = build_atlas(pha);
    const CocycleCheck cocycle = check_cocycle(atlas, 0);
    v.require(cocycle.ok, label + ": cocycle failure " + cocycle.failure);
    v.require(separation_check(atlas).ok, label + ": separation failure");
    ++checked;
  };
  for (const char* name : {"b2.json", "x3.json"}) {
    const Arrangement a = load_arrangement(name);
    std::vector<Subspace> all;
    for (const MatroidFlat& f : flats(a)) all.push_back(f.subspace);
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
      bool closed = true;
      std::vector<Subspace> chosen;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        chosen.push_back(all[i]);
        for (std::size_t j = 0; j < all.size(); ++j)
          if (!(mask >> j & 1) && subspace_leq(all[j], all[i])) closed = false;
      }
      if (closed) check(from_order_filter(a, chosen), std::string(name) + " filter " + std::to_string(mask));
    }
  }
  check(load_pha("fig1.json"), "fig1");
  check(load_pha("c3_line.json"), "c3");
  const double elapsed = seconds_since(start);
  v.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  if (v.ok) v.detail = std::to_string(checked) + " PHAs, " + std::to_string(elapsed) + " s";
  return v;
}

// ---------------------------------------------------------------------------

Verdict morphism_functoriality() {
  Verdict v;
  std::mt19937_64 rng(7);
  struct Case {
    const char* source;
    const char* target;
    Matrix map;
  };
  const std::vector<Case> cases{
      {"x3.json", "p1.json", mat({{1, 0}})},
      {"b2.json", "x3.json", mat({{1, 0}, {0, 0}})},
      {"x3.json", "b2.json", mat({{1, 0}, {0, 1}})},
      {"a3.json", "x3.json", mat({{1, 0, 0}, {0, 1, 0}})},
  };
  for (const Case& c : cases) {
    const std::string label = std::string(c.source) + " -> " + c.target;
    const SchubertVariety y1(load_arrangement(c.source));
    const SchubertVariety y2(load_arrangement(c.target));
    const LinearMap t(c.map);
    v.require(check_arrangement_morphism(t, y1.arrangement(), y2.arrangement()).ok, label + ": not a morphism");
    if (!v.ok) return v;
    for (int draw = 0; draw < 100; ++draw) {
      const Vector g = random_vector(rng, y1.dimension());
      const ExtendedPoint x = random_member(rng, y1);
      const ExtendedPoint image = extend_morphism(t, y1, y2, x);
      v.require(is_member(y2, image), label + ": image not a member");
      v.require(extend_morphism(t, y1, y2, act(y1, g, x)) == act(y2, t(g), image), label + ": not equivariant");
    }
  }
  const ArrangementMorphismCheck bad =
      check_arrangement_morphism(LinearMap(mat({{1, 1}})), load_arrangement("x3.json"), load_arrangement("p1.json"));
  v.require(!bad.ok, "(x,y) -> x+y accepted");
  v.require(bad.target_hyperplane == std::optional<std::size_t>(0), "wrong target hyperplane in witness");
  v.require(bad.preimage && *bad.preimage == span_of({{1, -1}}, 2), "wrong preimage in witness");
  if (v.ok) v.detail = "4 morphisms x 100 pairs, invalid map rejected";
  return v;
}

// ---------------------------------------------------------------------------

std::string repeat(const std::string& item, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) out += (k ? "," : "") + item;
  return out;
}

std::vector<std::vector<std::string>> invocations(const std::string& path) {
  Index d = 2;
  std::size_t n = 2;
  try {
    std::ifstream in(path);
    const io::Json doc = io::Json::parse(in);
    d = doc.at("ambient_dim").get<Index>();
    n = doc.contains("normals") ? doc["normals"].size() : static_cast<std::size_t>(d);
  } catch (const std::exception&) {
  }
  std::string identity;
  for (Index i = 0; i < d; ++i) {
    if (i) identity += ";";
    for (Index j = 0; j < d; ++j) identity += std::string(j ? "," : "") + (i == j ? "1" : "0");
  }
  std::string all_indices;
  for (std::size_t i = 1; i <= n; ++i) all_indices += (i > 1 ? "," : "") + std::to_string(i);
  const std::string ones = repeat("1", static_cast<std::size_t>(d));
  return {
      {"flats", path},
      {"validate-pha", path},
      {"check-morphism", path, path, "--map", identity},
      {"membership", path, "--point", repeat("inf", n)},
      {"act", path, "--vector", ones, "--point", repeat("inf", n)},
      {"limit", path, "--vector", ones},
      {"orbit-table", path},
      {"restrict", path, "--flat", all_indices},
      {"slice", path, "--flat", all_indices},
      {"atlas", path},
      {"cocycle", path},
      {"extend-morphism", path, path, "--map", identity, "--point", repeat("0", n)},
      {"hasse-dot", path},
  };
}

std::string run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Verdict cli_determinism() {
  Verdict v;
  std::vector<std::string> fixtures;
  for (const auto& entry : std::filesystem::directory_iterator(ARRANGEATLAS_FIXTURE_DIR)) {
    if (entry.path().extension() == ".json") fixtures.push_back(entry.path().string());
  }
  std::sort(fixtures.begin(), fixtures.end());
  std::size_t runs = 0;
  for (const std::string& path : fixtures) {
    for (const auto& args : invocations(path)) {
      const std::string first = run_cli(args);
      const std::string second = run_cli(args);
      std::vector<std::string> threaded{"--threads", "4"};
      threaded.insert(threaded.end(), args.begin(), args.end());
      const std::string parallel = run_cli(threaded);
      const std::string label = args[0] + " " + std::filesystem::path(path).filename().string();
      v.require(first == second, label + ": output differs between runs");
      v.require(first == parallel, label + ": output differs with --threads 4");
      runs += 3;
    }
  }
  if (v.ok) v.detail = std::to_string(fixtures.size()) + " fixtures, " + std::to_string(runs) + " runs";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"figure-1 fixture counts", figure1_counts},
      {"orbit-flat bijection", orbit_flat_bijection},
      {"membership oracle equivalence", membership_equivalence},
      {"limit classification", limit_classification},
      {"slice identity", slice_identity},
      {"cocycle and separation", cocycle_and_separation},
      {"morphism functoriality", morphism_functoriality},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << v.detail << '\n';
    failures += !v.ok;
  }
  return failures == 0 ? 0 : 1;
}
