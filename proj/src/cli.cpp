#include "blowup/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "blowup/json_io.hpp"
#include "blowup/svg.hpp"

namespace blowup::cli {

namespace {

/// Raised for bad flags or config values; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { Unsigned, Integer, Real, Text, Value };

struct Param {
  std::string key;
  Kind kind;
  Json fallback;
  std::string help;
};

using Failures = std::vector<Json>;

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  std::function<Json(const Json&, Failures&)> run;
};

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  for (auto& ch : out) ch = ch == '_' ? '-' : ch;
  return out;
}

/// Accepts plain decimals and multiples of pi such as "pi/6" or "-2*pi".
double parse_real(const std::string& raw) {
  static const std::regex pi_form(R"(^\s*([-+]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  std::smatch m;
  if (std::regex_match(raw, m, pi_form)) {
    double coeff = 1.0;
    const std::string c = m[1].str();
    if (c == "-") {
      coeff = -1.0;
    } else if (!c.empty() && c != "+") {
      coeff = std::stod(c);
    }
    const double denom = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return coeff * std::numbers::pi / denom;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + raw + "'");
  }
  if (used != raw.size()) throw UsageError("not a number: '" + raw + "'");
  return v;
}

Json convert(const Param& p, const std::string& raw) {
  switch (p.kind) {
    case Kind::Unsigned:
    case Kind::Integer: {
      const double v = parse_real(raw);
      if (v != std::floor(v) || std::abs(v) > 9.0e15) throw UsageError(flag_name(p.key) + " needs an integer");
      if (p.kind == Kind::Unsigned) {
        if (v < 0) throw UsageError(flag_name(p.key) + " needs a nonnegative integer");
        return static_cast<std::uint64_t>(v);
      }
      return static_cast<std::int64_t>(v);
    }
    case Kind::Real:
      return parse_real(raw);
    case Kind::Text:
      return raw;
    case Kind::Value: {
      Json parsed = Json::parse(raw, nullptr, false);
      if (!parsed.is_discarded()) return parsed;
      static const std::regex ident(R"(^[A-Za-z_][A-Za-z0-9_]*$)");
      if (std::regex_match(raw, ident)) return raw;
      throw UsageError("malformed JSON for " + flag_name(p.key) + ": " + raw);
    }
  }
  return nullptr;
}

/// Type check of a config file value against the parameter kind.
Json check_config_value(const Param& p, const Json& v) {
  switch (p.kind) {
    case Kind::Unsigned:
      if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        return v.get<std::uint64_t>();
      }
      break;
    case Kind::Integer:
      if (v.is_number_integer()) return v;
      if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>())) {
        return static_cast<std::int64_t>(v.get<double>());
      }
      break;
    case Kind::Real:
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return parse_real(v.get<std::string>());
      break;
    case Kind::Text:
      if (v.is_string()) return v;
      if (v.is_number()) return v.dump();
      break;
    case Kind::Value:
      return v;
  }
  throw UsageError("config key '" + p.key + "' has the wrong type");
}

std::uint64_t seed_of(const Json& cfg) { return cfg.at("seed").get<std::uint64_t>(); }

Execution exec_of(const Json& cfg) {
  const auto e = cfg.at("execution").get<std::string>();
  if (e == "parallel") return Execution::Parallel;
  if (e == "serial") return Execution::Serial;
  throw UsageError("execution must be 'parallel' or 'serial'");
}

std::size_t count_of(const Json& cfg, const char* key) {
  const auto v = cfg.at(key).get<std::int64_t>();
  if (v < 1) throw UsageError(std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

double positive(const Json& cfg, const char* key) {
  const double v = cfg.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(key) + " must be positive");
  return v;
}

MapSpec map_of(const Json& v) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    for (const auto& m : builtin_maps()) {
      if (m.name == name) return m.spec;
    }
    return map_spec_from_json(Json{{"family", name}});
  }
  return map_spec_from_json(v);
}

std::optional<Field> field_of(const Json& cfg) {
  const auto f = cfg.at("field").get<std::string>();
  if (f == "auto") return std::nullopt;
  return field_from_string(f);
}

Json failure(const std::string& check, Json detail) {
  Json f{{"check", check}};
  for (auto& [k, v] : detail.items()) f[k] = v;
  return f;
}

Json run_lift_check(const Json& cfg, Failures& failures) {
  const auto seed = seed_of(cfg);
  const auto exec = exec_of(cfg);
  const auto samples = count_of(cfg, "samples");
  const auto fsamples = count_of(cfg, "functoriality_samples");
  const double tol = positive(cfg, "tol");
  const double ftol = positive(cfg, "functoriality_tol");

  std::vector<NamedMap> maps;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (cfg.at("map").is_null()) {
    if (!cfg.at("map2").is_null()) throw UsageError("--map2 needs --map");
    maps = builtin_maps();
    for (std::size_t a = 0; a < maps.size(); ++a) {
      for (std::size_t b = 0; b < maps.size(); ++b) {
        const auto& g = maps[a].spec;
        const auto& h = maps[b].spec;
        if (a != b && g.field() == h.field() && g.dim() == h.dim()) pairs.emplace_back(a, b);
      }
    }
  } else {
    maps.push_back({"map", map_of(cfg.at("map"))});
    if (cfg.at("map2").is_null()) {
      pairs.emplace_back(0, 0);
    } else {
      maps.push_back({"map2", map_of(cfg.at("map2"))});
      pairs.emplace_back(0, 1);
    }
  }

  Json commutation = Json::array();
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto r = check_commutation(maps[k].spec, samples, tol, seed + k, exec);
    commutation.push_back(Json{{"map", maps[k].name},
                               {"family", std::string(maps[k].spec.family_name())},
                               {"report", to_json(r)}});
    if (!r.passed) {
      failures.push_back(failure("commutation", {{"map", maps[k].name}, {"max_residual", number(r.max_residual)}}));
    }
  }
  Json functoriality = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [a, b] = pairs[k];
    const auto r = check_functoriality(maps[a].spec, maps[b].spec, fsamples, ftol, seed + 1000 + k, exec);
    functoriality.push_back(Json{{"g", maps[a].name}, {"h", maps[b].name}, {"report", to_json(r)}});
    if (!r.passed) {
      failures.push_back(failure("functoriality", {{"g", maps[a].name},
                                                   {"h", maps[b].name},
                                                   {"max_residual", number(r.max_residual)}}));
    }
  }
  return Json{{"commutation", std::move(commutation)}, {"functoriality", std::move(functoriality)}};
}

Json run_fixed_set(const Json& cfg, Failures& failures) {
  if (cfg.at("matrix").is_null()) throw UsageError("fixed-set needs --matrix");
  const Matrix d0 = matrix_from_json(cfg.at("matrix"), field_of(cfg));
  const double tol = positive(cfg, "tol");
  const auto fixed = fixed_set_on_sigma(d0, tol);
  Json result = to_json(fixed);
  if (d0.field() == Field::Real && (d0.dim() == 2 || d0.dim() == 3)) {
    const SigmaMap f(d0);
    const auto resolution = static_cast<int>(count_of(cfg, "resolution"));
    const auto scan =
        brute_force_fixed_scan([&](const ProjPoint& p) { return f(p); }, d0.dim(), resolution,
                               positive(cfg, "scan_tol"), exec_of(cfg));
    const double match_tol = positive(cfg, "match_tol");
    const auto cmp = compare_with_scan(fixed, scan, match_tol);
    result["scan"] = to_json(scan);
    result["oracle"] = Json{{"components", cmp.components},
                            {"clusters", cmp.clusters},
                            {"max_location_error", number(cmp.max_location_error)},
                            {"match_tol", match_tol},
                            {"matched", cmp.matched}};
    if (!cmp.matched) {
      failures.push_back(failure("oracle_equivalence", {{"components", cmp.components}, {"clusters", cmp.clusters}}));
    }
  }
  if (d0.field() == Field::Complex && fixed.components.empty()) {
    failures.push_back(failure("complex_nonempty", Json::object()));
  }
  return result;
}

BlowupPoint point_of(const Json& j, Field field) {
  if (!j.is_object() || !j.contains("x")) throw UsageError("orbit start needs an object with \"x\"");
  const Vector x = vector_from_json(j.at("x"));
  if (!j.contains("y")) {
    if (x.norm() == 0.0) throw UsageError("a start on Sigma needs \"y\"");
    return lift_point(x, field);
  }
  BlowupPoint p{x, proj_point_from_json(j.at("y"), field)};
  if (!is_incident(p)) throw std::domain_error("orbit start is not on the blowup (incidence violated)");
  return p;
}

void write_csv(const std::string& path, const std::vector<Orbit<BlowupPoint>>& orbits, Field field, int n) {
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot open " + path + " for writing");
  csv.precision(17);
  csv << "orbit,step";
  for (const char* part : {"x", "y"}) {
    for (int i = 1; i <= n; ++i) {
      if (field == Field::Real) {
        csv << ',' << part << i;
      } else {
        csv << ',' << part << i << "_re," << part << i << "_im";
      }
    }
  }
  csv << '\n';
  auto emit = [&](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      csv << ',' << v(i).real();
      if (field == Field::Complex) csv << ',' << v(i).imag();
    }
  };
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    for (std::size_t s = 0; s < orbits[k].points.size(); ++s) {
      const auto& p = orbits[k].points[s];
      csv << k << ',' << s;
      emit(p.x);
      emit(p.y.homog());
      csv << '\n';
    }
  }
  if (!csv) throw std::runtime_error("failed writing " + path);
}

Json run_orbit(const Json& cfg, Failures& failures) {
  const bool has_map = !cfg.at("map").is_null();
  const bool has_matrix = !cfg.at("matrix").is_null();
  if (has_map == has_matrix) throw UsageError("orbit needs exactly one of --map and --matrix");
  const MapSpec spec = has_map ? map_of(cfg.at("map")) : MapSpec::linear(matrix_from_json(cfg.at("matrix")));
  const LiftedMap lift(spec);
  const auto steps = count_of(cfg, "steps");

  std::vector<BlowupPoint> starts;
  const Json& start = cfg.at("start");
  if (start.is_null()) {
    const auto count = count_of(cfg, "count");
    starts = sample_blowup_points(spec.field(), spec.dim(), count, seed_of(cfg));
  } else if (start.is_array()) {
    for (const auto& s : start) starts.push_back(point_of(s, spec.field()));
  } else {
    starts.push_back(point_of(start, spec.field()));
  }

  std::vector<Orbit<BlowupPoint>> orbits;
  Json finals = Json::array();
  for (std::size_t k = 0; k < starts.size(); ++k) {
    try {
      orbits.push_back(iterate_orbit(lift, starts[k], steps));
      finals.push_back(to_json(orbits.back().points.back()));
    } catch (const OrbitError& e) {
      failures.push_back(failure("orbit", {{"orbit", k}, {"step", e.step()}, {"message", e.what()}}));
    }
  }
  const std::string csv = cfg.at("csv").get<std::string>();
  if (!csv.empty()) write_csv(csv, orbits, spec.field(), spec.dim());
  const std::string svg = cfg.at("svg").get<std::string>();
  const auto fixed = fixed_set_on_sigma(spec.derivative());
  if (!svg.empty()) {
    SvgOptions options;
    options.title = std::string(spec.family_name()) + " orbits";
    emit_svg(orbits, &fixed, svg, options);
  }
  return Json{{"map", to_json(spec)},
              {"orbits", orbits.size()},
              {"steps", steps},
              {"final_points", std::move(finals)},
              {"fixed_set", to_json(fixed)}};
}

Json run_regularity(const Json& cfg, Failures& failures) {
  const MapSpec spec = map_of(cfg.at("map"));
  const LiftedMap lift(spec);
  const double m = cfg.at("m").get<double>();
  const SigmaCurve curve(m);
  const std::string chart_text = cfg.at("chart").get<std::string>();
  int chart = 0;
  if (chart_text == "auto") {
    chart = auto_chart(lift, curve);
  } else {
    chart = static_cast<int>(parse_real(chart_text)) - 1;
    if (chart < 0 || chart >= spec.dim() || std::to_string(chart + 1) != chart_text) {
      throw UsageError("--chart must be 'auto' or an index in 1.." + std::to_string(spec.dim()));
    }
  }
  const auto steps = default_steps();
  const auto report = one_sided_derivatives(lift, curve, chart, steps);
  Json result = to_json(report);
  double max_jump = 0.0;
  for (double j : report.jump) max_jump = std::max(max_jump, j);
  result["max_jump"] = number(max_jump);

  const double jump_tol = positive(cfg, "jump_tol");
  const auto* kink = std::get_if<KinkShearFamily>(&spec.family());
  if (kink != nullptr && kink->order == 1 && chart == 1) {
    const double expected = 2.0 / std::abs(m);
    result["expected_jump"] = expected;
    if (!(std::abs(report.jump.front() - expected) <= jump_tol)) {
      failures.push_back(failure("jump", {{"measured", number(report.jump.front())}, {"expected", expected}}));
    }
  }
  if (std::holds_alternative<LinearFamily>(spec.family())) {
    result["expected_jump"] = 0.0;
    if (!(max_jump <= positive(cfg, "linear_tol"))) {
      failures.push_back(failure("linear_jump", {{"measured", number(max_jump)}}));
    }
  }
  const auto max_order = cfg.at("max_order").get<std::int64_t>();
  if (max_order > 0) {
    const auto smooth = smoothness_probe(lift, curve, chart, static_cast<int>(max_order));
    result["order_estimate"] = smooth.order;
    result["smoothness"] = to_json(smooth);
  }
  return result;
}

Json run_variant_demo(const Json& cfg, Failures& failures) {
  const double lambda = cfg.at("lambda").get<double>();
  const double theta = cfg.at("theta").get<double>();
  const MapSpec h0 = MapSpec::rotation_scaling(lambda, theta);
  const MapSpec h1 = MapSpec::linear(Matrix::identity(Field::Real, 2).scaled(lambda));
  const double tol = positive(cfg, "tol");
  const auto result =
      variant_blowup(h0, h1, spiral_conjugacy(lambda, theta), count_of(cfg, "samples"), tol, seed_of(cfg),
                     exec_of(cfg));
  const auto& r = result.report;
  if (!r.classical.components.empty()) {
    failures.push_back(failure("classical_fixed_set_empty", {{"components", r.classical.components.size()}}));
  }
  const bool all_sigma = r.variant.components.size() == 1 && r.variant.components.front().proj_dim == 1;
  if (!all_sigma) failures.push_back(failure("variant_fixed_set_is_sigma", Json::object()));
  if (!r.passed) failures.push_back(failure("diagram", {{"diagram_residual", number(r.diagram_residual)}}));

  const std::string svg = cfg.at("svg").get<std::string>();
  if (!svg.empty()) {
    const auto starts = sample_blowup_points(Field::Real, 2, 8, seed_of(cfg), SampleMix::OffSigmaOnly);
    std::vector<Orbit<BlowupPoint>> orbits;
    for (const auto& s : starts) orbits.push_back(iterate_orbit(result.blowup.lifted_map(), s, 6));
    SvgOptions options;
    options.title = "variant blowup";
    emit_svg(orbits, &r.variant, svg, options);
  }
  Json out = to_json(r);
  out["classical_kind"] = r.classical.components.empty() ? "empty" : "nonempty";
  out["variant_kind"] = all_sigma ? "sigma" : "other";
  return out;
}

Json run_no_lift_demo(const Json& cfg, Failures& failures) {
  const auto x = proj_point_from_json(cfg.at("x"), Field::Real);
  const auto y = proj_point_from_json(cfg.at("y"), Field::Real);
  const auto count = static_cast<int>(count_of(cfg, "count"));
  const double tol = positive(cfg, "tol");
  const auto witness = no_lift_witness(x, y, geometric_schedule(cfg.at("ratio").get<double>(), count), tol);
  const auto& r = witness.report;
  if (r.verdict != "no_continuous_lift") failures.push_back(failure("verdict", {{"verdict", r.verdict}}));
  if (!(r.max_knot_error <= positive(cfg, "knot_tol"))) {
    failures.push_back(failure("knots", {{"max_knot_error", number(r.max_knot_error)}}));
  }
  if (!(r.max_roundtrip_error <= tol)) {
    failures.push_back(failure("roundtrip", {{"max_roundtrip_error", number(r.max_roundtrip_error)}}));
  }
  return to_json(r);
}

Json run_euler(const Json& cfg, Failures&) {
  const Field field = field_from_string(cfg.at("field").get<std::string>());
  const auto n = static_cast<int>(cfg.at("n").get<std::int64_t>());
  const auto chi = static_cast<int>(cfg.at("chi").get<std::int64_t>());
  Json out{{"euler", euler_blowup(chi, n, field)}};
  const Json topology = to_json(blowup_topology(chi, n, field));
  for (auto& [k, v] : topology.items()) out[k] = v;
  if (field == Field::Complex) out["chern"] = chern_to_json(chern_constants(n));
  return out;
}

std::vector<Param> common_params() {
  return {{"seed", Kind::Unsigned, 1, "RNG seed"},
          {"execution", Kind::Text, "parallel", "parallel | serial"},
          {"out", Kind::Text, "", "write the JSON report here instead of stdout"}};
}

std::vector<Command> commands() {
  const Json null = nullptr;
  return {
      {"lift-check",
       "Commutation q o lift(h) = h o q and functoriality of the lift. Without --map, runs the built-in catalog.",
       {{"map", Kind::Value, null, "map spec JSON, catalog name or family name"},
        {"map2", Kind::Value, null, "second map; checks lift(map o map2) against lift(map) o lift(map2)"},
        {"samples", Kind::Integer, 10000, "commutation samples per map"},
        {"functoriality_samples", Kind::Integer, 1000, "samples per functoriality pair"},
        {"tol", Kind::Real, 1e-10, "commutation tolerance"},
        {"functoriality_tol", Kind::Real, 1e-9, "functoriality tolerance"}},
       run_lift_check},
      {"fixed-set",
       "Fixed set of P(D) on Sigma from geometric eigenspaces, checked against a projective grid scan over R^2, R^3.",
       {{"matrix", Kind::Value, null, "row-major JSON matrix; complex entries as [re, im]"},
        {"field", Kind::Text, "auto", "auto | R | C"},
        {"tol", Kind::Real, kDefaultTol, "eigenvalue and kernel tolerance"},
        {"resolution", Kind::Integer, 10000, "scan samples"},
        {"scan_tol", Kind::Real, 1e-6, "displacement accepted as fixed by the scan"},
        {"match_tol", Kind::Real, 1e-3, "location tolerance for the oracle match"}},
       run_fixed_set},
      {"orbit",
       "Orbits of the lifted map. CSV columns: orbit, step, x1..xn, y1..yn (base point, then unit homogeneous fiber "
       "coordinates); over C each coordinate is split into _re and _im columns.",
       {{"map", Kind::Value, null, "map spec JSON, catalog name or family name"},
        {"matrix", Kind::Value, null, "shorthand for a linear map"},
        {"start", Kind::Value, null, "{\"x\": [...], \"y\": [...]} or a list of them; random if omitted"},
        {"count", Kind::Integer, 8, "random starts when --start is omitted"},
        {"steps", Kind::Integer, 20, "iterations per orbit"},
        {"csv", Kind::Text, "", "CSV output path"},
        {"svg", Kind::Text, "", "SVG portrait path (real planar maps)"}},
       run_orbit},
      {"regularity",
       "One-sided chart derivatives of the lift along (t, m t) through Sigma.",
       {{"m", Kind::Real, 1.0, "slope of the curve"},
        {"chart", Kind::Text, "2", "auto, or a 1-based chart index"},
        {"map", Kind::Value, "paper_example_c1", "map spec JSON, catalog name or family name"},
        {"max_order", Kind::Integer, 0, "also estimate the smoothness order up to this derivative"},
        {"jump_tol", Kind::Real, 1e-3, "tolerance against the closed-form jump 2/|m|"},
        {"linear_tol", Kind::Real, 1e-6, "largest jump accepted for a linear map"}},
       run_regularity},
      {"variant-demo",
       "Classical blowup of lambda * rotation(theta) against the variant induced by a spiral conjugacy to lambda * I.",
       {{"lambda", Kind::Real, 2.0, "scaling, > 1"},
        {"theta", Kind::Real, std::numbers::pi / 6, "rotation angle; accepts forms like pi/6"},
        {"samples", Kind::Integer, 10000, "diagram samples"},
        {"tol", Kind::Real, 1e-9, "conjugacy and diagram tolerance"},
        {"svg", Kind::Text, "", "SVG portrait of the variant"}},
       run_variant_demo},
      {"no-lift-demo",
       "Witness that a planar homeomorphism fixing 0 need not lift continuously to the blowup.",
       {{"x", Kind::Value, Json::array({1.0, 0.0}), "first target direction"},
        {"y", Kind::Value, Json::array({0.0, 1.0}), "second target direction"},
        {"count", Kind::Integer, 20, "sequence length"},
        {"ratio", Kind::Real, 0.5, "radii r_i = ratio^i"},
        {"tol", Kind::Real, 1e-9, "round-trip tolerance"},
        {"knot_tol", Kind::Real, 1e-12, "knot interpolation tolerance"}},
       run_no_lift_demo},
      {"euler",
       "Euler characteristic after blowing up a point of a manifold with Euler characteristic chi.",
       {{"field", Kind::Text, "R", "R | C"},
        {"n", Kind::Integer, 2, "dimension over the field"},
        {"chi", Kind::Integer, 2, "Euler characteristic before the blowup"}},
       run_euler},
  };
}

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw UsageError("malformed JSON in config " + path);
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  if (j.contains("schema") && j.contains("config")) {
    Json cfg = j.at("config");
    if (j.contains("command") && !cfg.contains("command")) cfg["command"] = j.at("command");
    return cfg;
  }
  return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blowups of F^n at the origin: lifted maps, dynamics on Sigma, and experiments", "blowup"};
  app.set_version_flag("--version", BLOWUP_VERSION);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config (or a previous report); its keys override flags");
  app.require_subcommand(0, 1);

  const auto cmds = commands();
  const auto globals = common_params();
  std::map<std::string, std::string> global_raw;
  std::map<std::string, CLI::Option*> global_opts;
  for (const auto& p : globals) {
    global_opts[p.key] = app.add_option(flag_name(p.key), global_raw[p.key], p.help);
  }
  std::vector<std::map<std::string, std::string>> raw(cmds.size());
  std::vector<std::map<std::string, CLI::Option*>> opts(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t c = 0; c < cmds.size(); ++c) {
    auto* sub = app.add_subcommand(cmds[c].name, cmds[c].help);
    sub->fallthrough();
    for (const auto& p : cmds[c].params) {
      std::string help = p.help;
      if (!p.fallback.is_null()) help += " (default " + p.fallback.dump() + ")";
      opts[c][p.key] = sub->add_option(flag_name(p.key), raw[c][p.key], help);
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Json report;
  try {
    Json file_cfg = config_path.empty() ? Json::object() : read_config(config_path);
    std::size_t which = cmds.size();
    for (std::size_t c = 0; c < cmds.size(); ++c) {
      if (subs[c]->parsed()) which = c;
    }
    if (file_cfg.contains("command")) {
      const auto name = file_cfg.at("command").get<std::string>();
      std::size_t named = cmds.size();
      for (std::size_t c = 0; c < cmds.size(); ++c) {
        if (cmds[c].name == name) named = c;
      }
      if (named == cmds.size()) throw UsageError("unknown command in config: " + name);
      if (which != cmds.size() && which != named) throw UsageError("config is for '" + name + "'");
      which = named;
      file_cfg.erase("command");
    }
    if (which == cmds.size()) {
      err << app.help();
      return kExitUsage;
    }
    const Command& cmd = cmds[which];

    Json cfg = Json::object();
    auto apply = [&](const Param& p, CLI::Option* opt, const std::string& value) {
      cfg[p.key] = opt->count() > 0 ? convert(p, value) : p.fallback;
    };
    for (const auto& p : cmd.params) apply(p, opts[which][p.key], raw[which][p.key]);
    for (const auto& p : globals) apply(p, global_opts[p.key], global_raw[p.key]);
    for (auto& [key, value] : file_cfg.items()) {
      const Param* match = nullptr;
      for (const auto* list : {&cmd.params, &globals}) {
        for (const auto& p : *list) {
          if (p.key == key) match = &p;
        }
      }
      if (match == nullptr) throw UsageError("unknown config key '" + key + "' for " + cmd.name);
      cfg[key] = check_config_value(*match, value);
    }

    Failures failures;
    Json result = cmd.run(cfg, failures);
    Json effective{{"command", cmd.name}};
    for (auto& [k, v] : cfg.items()) effective[k] = v;
    report = Json{{"schema", 1},
                  {"version", BLOWUP_VERSION},
                  {"command", cmd.name},
                  {"seed", cfg.at("seed")},
                  {"config", std::move(effective)},
                  {"result", std::move(result)},
                  {"failures", failures},
                  {"passed", failures.empty()}};

    const std::string text = report.dump(2) + "\n";
    const std::string out_path = cfg.at("out").get<std::string>();
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file || !(file << text)) throw std::runtime_error("cannot write " + out_path);
    }
    return failures.empty() ? kExitPass : kExitPropertyFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"blowup"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace blowup::cli
