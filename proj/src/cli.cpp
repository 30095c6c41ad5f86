#include "arrangeatlas/cli.hpp"

#include "arrangeatlas/atlas.hpp"
#include "arrangeatlas/errors.hpp"
#include "arrangeatlas/io.hpp"
#include "arrangeatlas/pha.hpp"
#include "arrangeatlas/schubert.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <regex>

namespace arrangeatlas::cli {

namespace {

using io::Json;

/// Problems with the input itself (missing file, malformed JSON, invalid
/// arrangement data). Reported with exit code 2.
class InputError : public std::runtime_error {
 public:
  InputError(std::string reason, const std::string& message)
      : std::runtime_error(message), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

struct Input {
  std::optional<Arrangement> arrangement;
  std::optional<io::PhaInput> pha;
};

Json read_json(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw InputError("file-not-found", "no such file: " + path);
  std::ifstream in(path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("parse-error", path + ": " + e.what());
  }
}

Input load(const std::string& path) {
  const Json doc = read_json(path);
  Input input;
  try {
    if (doc.is_object() && doc.contains("normals")) {
      input.arrangement = io::parse_arrangement(doc);
    } else if (doc.is_object() && doc.contains("subspaces")) {
      input.pha = io::parse_pha(doc);
    } else {
      throw InputError("parse-error", path + ": expected an arrangement (\"normals\") or a subspace list (\"subspaces\")");
    }
  } catch (const io::ParseError& e) {
    throw InputError("parse-error", path + ": " + e.what());
  } catch (const DomainError& e) {
    throw InputError(e.reason(), path + ": " + e.what());
  } catch (const DimensionMismatch& e) {
    throw InputError("parse-error", path + ": " + e.what());
  }
  return input;
}

Arrangement load_arrangement(const std::string& path) {
  Input input = load(path);
  if (!input.arrangement) throw InputError("parse-error", path + ": expected an arrangement file");
  return std::move(*input.arrangement);
}

PartialHyperplaneArrangement to_pha(const Input& input, unsigned threads) {
  if (input.arrangement) return full_lattice(*input.arrangement);
  ValidationResult result = validate(input.pha->ambient_dim, input.pha->subspaces, {threads});
  if (!result.pha) throw DomainError("invalid-pha", "subspace list is not a partial hyperplane arrangement");
  return std::move(*result.pha);
}

Index ambient_dim_of(const Input& input) {
  return input.arrangement ? input.arrangement->ambient_dim() : input.pha->ambient_dim;
}

template <typename T>
T parse_or_throw(const std::function<T()>& parse) {
  try {
    return parse();
  } catch (const io::ParseError& e) {
    throw InputError("parse-error", e.what());
  }
}

Vector parse_vector_arg(const std::string& text) {
  return parse_or_throw<Vector>([&] { return io::parse_vector(text); });
}
ExtendedPoint parse_point_arg(const std::string& text) {
  return parse_or_throw<ExtendedPoint>([&] { return io::parse_point(text); });
}
IndexSet parse_flat_arg(const std::string& text, std::size_t n) {
  IndexSet s = parse_or_throw<IndexSet>([&] { return io::parse_index_set(text); });
  if (!s.empty() && s.back() >= n) throw DimensionMismatch("hyperplane index exceeds the arrangement size");
  return s;
}

Json header(const std::string& command) {
  Json j;
  j["ok"] = true;
  j["command"] = command;
  return j;
}

Json subspaces_json(const std::vector<Subspace>& list) {
  Json out = Json::array();
  for (const Subspace& s : list) out.push_back(io::to_json(s));
  return out;
}

Json optional_json(const std::optional<Subspace>& s) { return s ? io::to_json(*s) : Json(nullptr); }

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("ARRANGEATLAS_SEED");
  if (raw == nullptr) return 0;
  const std::string text(raw);
  if (!std::regex_match(text, std::regex("[0-9]{1,19}"))) {
    throw InputError("parse-error", "ARRANGEATLAS_SEED must be a decimal integer");
  }
  return std::stoull(text);
}

// ---- subcommands -----------------------------------------------------------

std::string cmd_flats(const std::string& file) {
  const Arrangement a = load_arrangement(file);
  const FlatLattice lattice = flats(a);
  Json j = header("flats");
  j["ambient_dim"] = a.ambient_dim();
  j["hyperplane_count"] = a.size();
  j["essential"] = is_essential(a);
  j["flat_count"] = lattice.size();
  Json list = Json::array();
  for (const MatroidFlat& f : lattice) {
    Json entry;
    entry["indices"] = io::index_set_to_json(f.indices);
    entry["rank"] = f.subspace.rank();
    entry["basis"] = io::to_json(f.subspace.basis());
    list.push_back(std::move(entry));
  }
  j["flats"] = std::move(list);
  return j.dump();
}

std::string cmd_validate(const std::string& file, unsigned threads) {
  const Input input = load(file);
  io::PhaInput subspaces;
  if (input.arrangement) {
    subspaces.ambient_dim = input.arrangement->ambient_dim();
    for (const MatroidFlat& f : flats(*input.arrangement)) subspaces.subspaces.push_back(f.subspace);
  } else {
    subspaces = *input.pha;
  }
  const ValidationResult result = validate(subspaces.ambient_dim, subspaces.subspaces, {threads});
  std::vector<Subspace> members = subspaces.subspaces;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  const ValidationReport& report = result.report;
  Json j = header("validate-pha");
  j["valid"] = report.ok();
  j["member_count"] = members.size();
  j["axiom1_ok"] = report.axiom1_ok;
  j["axiom2_ok"] = report.axiom2_ok;
  j["axiom2_witness"] = report.axiom2_witness
                            ? subspaces_json({report.axiom2_witness->first, report.axiom2_witness->second})
                            : Json(nullptr);
  Json failures = Json::array();
  for (const Axiom3Failure& f : report.axiom3_failures) {
    Json entry;
    entry["flat"] = io::to_json(f.flat);
    entry["reason"] = to_string(f.reason);
    failures.push_back(std::move(entry));
  }
  j["axiom3_failures"] = std::move(failures);
  j["members"] = subspaces_json(members);
  return j.dump();
}

std::string cmd_check_morphism(const std::string& src_file, const std::string& dst_file, const std::string& map_text,
                               unsigned threads) {
  const Input src = load(src_file);
  const Input dst = load(dst_file);
  const LinearMap t = parse_or_throw<LinearMap>([&] { return io::parse_map(map_text, ambient_dim_of(src)); });
  if (t.target_dim() != ambient_dim_of(dst)) throw DimensionMismatch("map target dimension differs from the target space");

  const MorphismCheck check = check_morphism(t, to_pha(src, threads), to_pha(dst, threads));
  Json j = header("check-morphism");
  j["morphism"] = check.ok;
  j["failed_condition"] = check.ok ? Json(nullptr) : Json(check.failed_condition);
  if (check.ok) {
    j["witness"] = nullptr;
  } else {
    Json witness;
    witness["source_flat"] = optional_json(check.source_flat);
    witness["target_flat"] = optional_json(check.target_flat);
    witness["offending"] = optional_json(check.offending);
    j["witness"] = std::move(witness);
  }
  if (src.arrangement && dst.arrangement) {
    const ArrangementMorphismCheck hyper = check_arrangement_morphism(t, *src.arrangement, *dst.arrangement);
    Json criterion;
    criterion["ok"] = hyper.ok;
    criterion["target_hyperplane"] = hyper.target_hyperplane ? Json(*hyper.target_hyperplane + 1) : Json(nullptr);
    criterion["preimage"] = optional_json(hyper.preimage);
    j["hyperplane_criterion"] = std::move(criterion);
  }
  return j.dump();
}

std::string cmd_membership(const std::string& file, const std::string& point_text) {
  const SchubertVariety y(load_arrangement(file));
  const ExtendedPoint x = parse_point_arg(point_text);
  const MembershipResult result = membership(y, x);
  Json j = header("membership");
  j["member"] = result.member;
  j["reason"] = to_string(result.reason);
  j["support"] = io::index_set_to_json(x.finite_support());
  return j.dump();
}

std::string cmd_act(const std::string& file, const std::string& vector_text, const std::string& point_text) {
  const SchubertVariety y(load_arrangement(file));
  const ExtendedPoint moved = act(y, parse_vector_arg(vector_text), parse_point_arg(point_text));
  Json j = header("act");
  j["point"] = io::to_json(moved);
  j["support"] = io::index_set_to_json(moved.finite_support());
  return j.dump();
}

std::string cmd_limit(const std::string& file, const std::string& vector_text, unsigned threads) {
  const Input input = load(file);
  const Vector v = parse_vector_arg(vector_text);
  Json j = header("limit");
  if (input.arrangement) {
    const SchubertVariety y(*input.arrangement);
    const ExtendedPoint x = limit(y, v);
    j["flat"] = io::index_set_to_json(x.finite_support());
    j["point"] = io::to_json(x);
    j["stabilizer"] = io::to_json(stabilizer(y, x));
  } else {
    const auto f = limit_flat(to_pha(input, threads), v);
    j["exists"] = f.has_value();
    j["flat"] = optional_json(f);
  }
  return j.dump();
}

std::string cmd_orbit_table(const std::string& file, unsigned threads) {
  const Atlas atlas = build_atlas(to_pha(load(file), threads), {threads});
  Json j = header("orbit-table");
  j["ambient_dim"] = atlas.pha().ambient_dim();
  j["member_count"] = atlas.size();
  Json rows = Json::array();
  for (const OrbitRow& row : orbit_flat_table(atlas)) {
    Json entry;
    entry["member"] = row.member;
    entry["rank"] = row.rank;
    entry["orbit_dim"] = row.orbit_dim;
    entry["stabilizer"] = io::to_json(row.stabilizer);
    entry["chart"] = row.chart;
    entry["distinguished_point"] = io::to_json(row.distinguished_point);
    entry["interior_sample"] = io::to_json(row.interior_sample);
    rows.push_back(std::move(entry));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

Json restriction_json(const Restriction& r) {
  Json j;
  j["flat"] = io::index_set_to_json(r.flat);
  j["frame"] = io::to_json(r.frame);
  j["arrangement"] = io::arrangement_to_json(r.arrangement);
  Json index_map = Json::array();
  for (const auto& entry : r.parent_to_restricted) {
    if (!entry) {
      index_map.push_back(nullptr);
      continue;
    }
    Json e;
    e["hyperplane"] = entry->hyperplane + 1;
    e["scale"] = io::format_rational(entry->scale);
    index_map.push_back(std::move(e));
  }
  j["index_map"] = std::move(index_map);
  return j;
}

std::string cmd_restrict(const std::string& file, const std::string& flat_text) {
  const Arrangement a = load_arrangement(file);
  const Restriction r = restriction(a, parse_flat_arg(flat_text, a.size()));
  Json j = header("restrict");
  const Json body = restriction_json(r);
  for (const auto& [key, value] : body.items()) j[key] = value;
  j["essential"] = is_essential(r.arrangement);
  j["flat_count"] = flats(r.arrangement).size();
  return j.dump();
}

std::string cmd_slice(const std::string& file, const std::string& flat_text, const std::optional<std::string>& point_text) {
  const SchubertVariety y(load_arrangement(file));
  const IndexSet flat = parse_flat_arg(flat_text, y.coordinate_count());
  const Slice slice = slice_at(y, flat);
  Json j = header("slice");
  j["flat"] = io::index_set_to_json(flat);
  j["distinguished_point"] = io::to_json(distinguished_point(y, flat));
  j["restriction"] = restriction_json(slice.restriction());
  j["flat_count"] = slice.variety().lattice().size();
  Json injected = Json::array();
  for (const MatroidFlat& f : slice.variety().lattice()) {
    Json e;
    e["restricted_flat"] = io::index_set_to_json(f.indices);
    e["point"] = io::to_json(slice.inject(distinguished_point(slice.variety(), f.indices)));
    injected.push_back(std::move(e));
  }
  j["injected_distinguished_points"] = std::move(injected);
  if (point_text) {
    const ExtendedPoint q = parse_point_arg(*point_text);
    if (!is_member(slice.variety(), q)) throw DomainError("not-a-member", "point is not in the restricted Schubert variety");
    j["injected_point"] = io::to_json(slice.inject(q));
  }
  return j.dump();
}

std::string cmd_atlas(const std::string& file, unsigned threads) {
  const Atlas atlas = build_atlas(to_pha(load(file), threads), {threads});
  Json j = header("atlas");
  j["ambient_dim"] = atlas.pha().ambient_dim();
  j["member_count"] = atlas.size();
  j["members"] = subspaces_json(atlas.pha().members());
  Json charts = Json::array();
  for (const Chart& c : atlas.charts()) {
    Json e;
    e["member"] = c.member;
    e["fiber_dim"] = c.fiber_dim;
    e["hyperplanes"] = c.hyperplane_members;
    e["restriction"] = io::arrangement_to_json(c.restriction);
    e["flat_count"] = flats(c.restriction).size();
    charts.push_back(std::move(e));
  }
  j["charts"] = std::move(charts);
  Json overlaps = Json::array();
  for (std::size_t a = 0; a < atlas.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < atlas.size(); ++b) row.push_back(atlas.overlap(a, b));
    overlaps.push_back(std::move(row));
  }
  j["overlaps"] = std::move(overlaps);
  return j.dump();
}

std::string cmd_cocycle(const std::string& file, unsigned threads) {
  const std::uint64_t seed = seed_from_environment();
  const Atlas atlas = build_atlas(to_pha(load(file), threads), {threads});
  const CocycleCheck cocycle = check_cocycle(atlas, seed);
  const SeparationCheck separation = separation_check(atlas);
  Json j = header("cocycle");
  j["seed"] = seed;
  j["member_count"] = atlas.size();
  Json c;
  c["ok"] = cocycle.ok;
  c["failure"] = cocycle.ok ? Json(nullptr) : Json(cocycle.failure);
  c["witness"] = cocycle.witness ? Json(*cocycle.witness) : Json(nullptr);
  j["cocycle"] = std::move(c);
  Json s;
  s["ok"] = separation.ok;
  s["witness"] = separation.witness ? Json(*separation.witness) : Json(nullptr);
  j["separation"] = std::move(s);
  return j.dump();
}

std::string cmd_extend(const std::string& src_file, const std::string& dst_file, const std::string& map_text,
                       const std::string& point_text) {
  const SchubertVariety y1(load_arrangement(src_file));
  const SchubertVariety y2(load_arrangement(dst_file));
  const LinearMap t = parse_or_throw<LinearMap>([&] { return io::parse_map(map_text, y1.dimension()); });
  if (t.target_dim() != y2.dimension()) throw DimensionMismatch("map target dimension differs from the target space");
  const ExtendedPoint image = extend_morphism(t, y1, y2, parse_point_arg(point_text));
  Json j = header("extend-morphism");
  j["point"] = io::to_json(image);
  Json coordinates = Json::array();
  for (const auto& entry : morphism_coordinates(t, y1.arrangement(), y2.arrangement())) {
    if (!entry) {
      coordinates.push_back(nullptr);
      continue;
    }
    Json e;
    e["source_hyperplane"] = entry->first + 1;
    e["scale"] = io::format_rational(entry->second);
    coordinates.push_back(std::move(e));
  }
  j["coordinates"] = std::move(coordinates);
  return j.dump();
}

std::string cmd_hasse(const std::string& file, unsigned threads) {
  const Input input = load(file);
  if (input.arrangement) {
    std::vector<Subspace> members;
    for (const MatroidFlat& f : flats(*input.arrangement)) members.push_back(f.subspace);
    return hasse_dot(members, input.arrangement->ambient_dim());
  }
  return hasse_dot(to_pha(input, threads));
}

Json error_json(const std::string& command, const std::string& reason, const std::string& message,
                const std::vector<Subspace>& witness = {}) {
  Json j;
  j["ok"] = false;
  j["command"] = command;
  Json e;
  e["reason"] = reason;
  e["message"] = message;
  e["witness"] = subspaces_json(witness);
  j["error"] = std::move(e);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on hyperplane arrangements, matroid Schubert varieties and their atlases",
               "arrangeatlas"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for validation and atlas construction")
      ->check(CLI::Range(1U, 256U));

  std::string file;
  std::string second_file;
  std::string point;
  std::string vector;
  std::string map;
  std::string flat;
  std::optional<std::string> slice_point;
  std::string command;
  std::function<std::string()> handler;

  auto bind = [&](CLI::App* sub, std::function<std::string()> body) {
    sub->callback([&command, &handler, sub, body = std::move(body)] {
      command = sub->get_name();
      handler = body;
    });
  };

  auto* flats_cmd = app.add_subcommand("flats", "Enumerate the flats of an arrangement");
  flats_cmd->add_option("arrangement", file, "Arrangement JSON file")->required();
  bind(flats_cmd, [&] { return cmd_flats(file); });

  auto* validate_cmd = app.add_subcommand("validate-pha", "Check the partial hyperplane arrangement axioms");
  validate_cmd->add_option("file", file, "Subspace list (or arrangement) JSON file")->required();
  bind(validate_cmd, [&] { return cmd_validate(file, threads); });

  auto* morphism_cmd = app.add_subcommand("check-morphism", "Check that a linear map is a morphism");
  morphism_cmd->add_option("source", file, "Source arrangement or subspace list")->required();
  morphism_cmd->add_option("target", second_file, "Target arrangement or subspace list")->required();
  morphism_cmd->add_option("--map", map, "Matrix rows separated by ';', entries by ','")->required();
  bind(morphism_cmd, [&] { return cmd_check_morphism(file, second_file, map, threads); });

  auto* membership_cmd = app.add_subcommand("membership", "Test whether an extended point lies in the Schubert variety");
  membership_cmd->add_option("arrangement", file, "Arrangement JSON file")->required();
  membership_cmd->add_option("--point", point, "Coordinates, rationals or inf")->required();
  bind(membership_cmd, [&] { return cmd_membership(file, point); });

  auto* act_cmd = app.add_subcommand("act", "Translate a point of the Schubert variety by a vector");
  act_cmd->add_option("arrangement", file, "Arrangement JSON file")->required();
  act_cmd->add_option("--vector", vector, "Group element")->required();
  act_cmd->add_option("--point", point, "Point of the variety")->required();
  bind(act_cmd, [&] { return cmd_act(file, vector, point); });

  auto* limit_cmd = app.add_subcommand("limit", "Limit of t*v as t goes to infinity");
  limit_cmd->add_option("file", file, "Arrangement or subspace list JSON file")->required();
  limit_cmd->add_option("--vector", vector, "Direction vector")->required();
  bind(limit_cmd, [&] { return cmd_limit(file, vector, threads); });

  auto* table_cmd = app.add_subcommand("orbit-table", "Orbit, stabilizer and distinguished point per member");
  table_cmd->add_option("file", file, "Arrangement or subspace list JSON file")->required();
  bind(table_cmd, [&] { return cmd_orbit_table(file, threads); });

  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction of an arrangement to one of its flats");
  restrict_cmd->add_option("arrangement", file, "Arrangement JSON file")->required();
  restrict_cmd->add_option("--flat", flat, "1-based hyperplane indices of the flat (empty for the top)")->required();
  bind(restrict_cmd, [&] { return cmd_restrict(file, flat); });

  auto* slice_cmd = app.add_subcommand("slice", "Minimal slice through a distinguished point");
  slice_cmd->add_option("arrangement", file, "Arrangement JSON file")->required();
  slice_cmd->add_option("--flat", flat, "1-based hyperplane indices of the flat")->required();
  slice_cmd->add_option("--point", slice_point, "Point of the restricted variety to inject");
  bind(slice_cmd, [&] { return cmd_slice(file, flat, slice_point); });

  auto* atlas_cmd = app.add_subcommand("atlas", "Charts and overlaps of the glued variety");
  atlas_cmd->add_option("file", file, "Arrangement or subspace list JSON file")->required();
  bind(atlas_cmd, [&] { return cmd_atlas(file, threads); });

  auto* cocycle_cmd = app.add_subcommand("cocycle", "Verify the cocycle and separation conditions of the atlas");
  cocycle_cmd->add_option("file", file, "Arrangement or subspace list JSON file")->required();
  bind(cocycle_cmd, [&] { return cmd_cocycle(file, threads); });

  auto* extend_cmd = app.add_subcommand("extend-morphism", "Extend a linear map to the Schubert varieties");
  extend_cmd->add_option("source", file, "Source arrangement")->required();
  extend_cmd->add_option("target", second_file, "Target arrangement")->required();
  extend_cmd->add_option("--map", map, "Matrix rows separated by ';', entries by ','")->required();
  extend_cmd->add_option("--point", point, "Point of the source variety")->required();
  bind(extend_cmd, [&] { return cmd_extend(file, second_file, map, point); });

  auto* hasse_cmd = app.add_subcommand("hasse-dot", "Hasse diagram of the flats in DOT");
  hasse_cmd->add_option("file", file, "Arrangement or subspace list JSON file")->required();
  bind(hasse_cmd, [&] { return cmd_hasse(file, threads); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    const std::string text = handler();
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    return kSuccess;
  } catch (const InputError& e) {
    out << error_json(command, e.reason(), e.what()).dump() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    out << error_json(command, e.reason(), e.what(), e.witness()).dump() << '\n';
    return kDomainError;
  } catch (const DimensionMismatch& e) {
    out << error_json(command, "dimension-mismatch", e.what()).dump() << '\n';
    return kDomainError;
  }
}

}  // namespace arrangeatlas::cli
