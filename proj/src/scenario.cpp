#include "copula_order/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "copula_order/csv.hpp"
#include "copula_order/grid.hpp"

namespace copord {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw UsageError("scenario " + where + ": " + what);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
}

const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Generator parse_generator(const json& j, const std::string& where) {
  only_keys(j, where, {"family", "gamma"});
  const Family f = parse_family(text(need(j, where, "family"), where + ".family"));
  if (f == Family::Independence) {
    if (j.contains("gamma")) fail(where, "independence takes no gamma");
    return {};
  }
  return {f, number(need(j, where, "gamma"), where + ".gamma")};
}

Transform parse_transform(const json& j, const std::string& where) {
  only_keys(j, where, {"model", "theta"});
  Transform t;
  t.model = parse_model(text(need(j, where, "model"), where + ".model"));
  if (j.contains("theta")) t.theta = number(j.at("theta"), where + ".theta");
  t.validate();
  return t;
}

Baseline parse_baseline(const json& j, const std::string& where, const std::filesystem::path& base_dir) {
  if (!j.is_object()) fail(where, "expected an object");
  const std::string fam = text(need(j, where, "family"), where + ".family");
  if (fam == "std_exponential") {
    only_keys(j, where, {"family"});
    return Baseline::std_exponential();
  }
  if (fam == "exponential") {
    only_keys(j, where, {"family", "rate"});
    return Baseline::exponential(number(need(j, where, "rate"), where + ".rate"));
  }
  if (fam == "weibull") {
    only_keys(j, where, {"family", "shape", "scale"});
    return Baseline::weibull(number(need(j, where, "shape"), where + ".shape"),
                             number(need(j, where, "scale"), where + ".scale"));
  }
  if (fam == "uniform01") {
    only_keys(j, where, {"family"});
    return Baseline::uniform01();
  }
  if (fam == "tabulated") {
    only_keys(j, where, {"family", "file", "points"});
    if (j.contains("file") == j.contains("points")) fail(where, "tabulated baseline needs exactly one of file, points");
    if (j.contains("file")) {
      std::filesystem::path p = text(j.at("file"), where + ".file");
      if (p.is_relative()) p = base_dir / p;
      return load_tabulated_csv(p);
    }
    const json& pts = j.at("points");
    if (!pts.is_array()) fail(where + ".points", "expected an array of [x, F] pairs");
    std::vector<double> xs;
    std::vector<double> Fs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string w = where + ".points[" + std::to_string(i) + "]";
      const std::vector<double> row = numbers(pts[i], w);
      if (row.size() != 2) fail(w, "expected [x, F]");
      xs.push_back(row[0]);
      Fs.push_back(row[1]);
    }
    return Baseline::tabulated(std::move(xs), std::move(Fs));
  }
  fail(where + ".family", "unknown baseline '" + fam + "'");
}

SystemSpec parse_system(const json& j, const std::string& where, const std::filesystem::path& base_dir) {
  only_keys(j, where, {"n", "k", "generator", "transform", "baseline", "params"});
  SystemSpec s;
  s.params = numbers(need(j, where, "params"), where + ".params");
  if (j.contains("n") && integer(j.at("n"), where + ".n") != static_cast<std::int64_t>(s.params.size())) {
    fail(where + ".n", "does not match the number of params");
  }
  s.k = j.contains("k") ? static_cast<int>(integer(j.at("k"), where + ".k")) : 0;
  s.gen = parse_generator(need(j, where, "generator"), where + ".generator");
  s.transform = parse_transform(need(j, where, "transform"), where + ".transform");
  s.baseline = parse_baseline(need(j, where, "baseline"), where + ".baseline", base_dir);
  s.validate();
  return s;
}

GridPolicy parse_grid(const json& j) {
  const std::string where = "grid";
  if (!j.is_object()) fail(where, "expected an object");
  GridPolicy g;
  const std::string policy = j.contains("policy") ? text(j.at("policy"), where + ".policy") : "quantile";
  if (policy == "quantile") {
    only_keys(j, where, {"policy", "points"});
    g.kind = GridPolicy::Kind::Quantile;
    if (j.contains("points")) g.points = static_cast<int>(integer(j.at("points"), where + ".points"));
  } else if (policy == "uniform") {
    only_keys(j, where, {"policy", "points", "min", "max"});
    g.kind = GridPolicy::Kind::Uniform;
    if (j.contains("points")) g.points = static_cast<int>(integer(j.at("points"), where + ".points"));
    g.min = number(need(j, where, "min"), where + ".min");
    g.max = number(need(j, where, "max"), where + ".max");
    if (!(g.min < g.max)) fail(where, "uniform grid needs min < max");
  } else if (policy == "explicit") {
    only_keys(j, where, {"policy", "x"});
    g.kind = GridPolicy::Kind::Explicit;
    g.x = numbers(need(j, where, "x"), where + ".x");
    if (g.x.empty()) fail(where + ".x", "must not be empty");
    g.points = static_cast<int>(g.x.size());
  } else {
    fail(where + ".policy", "unknown policy '" + policy + "'");
  }
  if (g.points < 1) fail(where + ".points", "must be positive");
  return g;
}

ScenarioOptions parse_options(const json& j) {
  only_keys(j, "options", {"samples", "seed", "z"});
  ScenarioOptions o;
  if (j.contains("samples")) {
    const auto v = integer(j.at("samples"), "options.samples");
    if (v <= 0) fail("options.samples", "must be positive");
    o.samples = static_cast<std::size_t>(v);
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) fail("options.seed", "expected a nonnegative integer");
    o.seed = s.get<std::uint64_t>();
  }
  if (j.contains("z")) {
    o.z = number(j.at("z"), "options.z");
    if (!(*o.z > 0.0)) fail("options.z", "must be positive");
  }
  return o;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Scenario parse_scenario(std::string_view text_in, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    throw UsageError("scenario parse error at line " + std::to_string(line_of(text_in, e.byte > 0 ? e.byte - 1 : 0)) +
                     ": " + e.what());
  }
  only_keys(doc, "document", {"schema", "system", "systems", "grid", "options"});
  const std::int64_t schema = integer(need(doc, "document", "schema"), "schema");
  if (schema != kScenarioSchema) fail("schema", "unsupported version " + std::to_string(schema));
  Scenario s;
  if (doc.contains("system") == doc.contains("systems")) fail("document", "needs exactly one of system, systems");
  if (doc.contains("system")) {
    s.systems.push_back(parse_system(doc.at("system"), "system", base_dir));
  } else {
    const json& arr = doc.at("systems");
    if (!arr.is_array() || arr.empty() || arr.size() > 2) fail("systems", "expected an array of one or two systems");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      s.systems.push_back(parse_system(arr[i], "systems[" + std::to_string(i) + "]", base_dir));
    }
  }
  if (doc.contains("grid")) s.grid = parse_grid(doc.at("grid"));
  if (doc.contains("options")) s.options = parse_options(doc.at("options"));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

namespace {

json baseline_json(const Baseline& b) {
  json j{{"family", baseline_name(b.family())}};
  switch (b.family()) {
    case BaselineFamily::Exponential: j["rate"] = b.rate(); break;
    case BaselineFamily::Weibull:
      j["shape"] = b.shape();
      j["scale"] = b.scale();
      break;
    case BaselineFamily::Tabulated: {
      json pts = json::array();
      for (std::size_t i = 0; i < b.table_x().size(); ++i) pts.push_back({b.table_x()[i], b.table_F()[i]});
      j["points"] = pts;
      break;
    }
    default: break;
  }
  return j;
}

}  // namespace

json to_json(const Scenario& s) {
  json systems = json::array();
  for (const SystemSpec& sp : s.systems) {
    json gen{{"family", family_name(sp.gen.family())}};
    if (sp.gen.family() != Family::Independence) gen["gamma"] = sp.gen.gamma();
    systems.push_back({{"n", sp.n()},
                       {"k", sp.k},
                       {"generator", gen},
                       {"transform", {{"model", model_name(sp.transform.model)}, {"theta", sp.transform.theta}}},
                       {"baseline", baseline_json(sp.baseline)},
                       {"params", sp.params}});
  }
  json grid;
  switch (s.grid.kind) {
    case GridPolicy::Kind::Quantile: grid = {{"policy", "quantile"}, {"points", s.grid.points}}; break;
    case GridPolicy::Kind::Uniform:
      grid = {{"policy", "uniform"}, {"points", s.grid.points}, {"min", s.grid.min}, {"max", s.grid.max}};
      break;
    case GridPolicy::Kind::Explicit: grid = {{"policy", "explicit"}, {"x", s.grid.x}}; break;
  }
  json doc{{"schema", kScenarioSchema}, {"systems", systems}, {"grid", grid}};
  json opts = json::object();
  if (s.options.samples) opts["samples"] = *s.options.samples;
  if (s.options.seed) opts["seed"] = *s.options.seed;
  if (s.options.z) opts["z"] = *s.options.z;
  if (!opts.empty()) doc["options"] = opts;
  return doc;
}

std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

std::vector<double> resolve_grid(const Scenario& s, std::optional<int> points_override) {
  const int points = points_override.value_or(s.grid.points);
  switch (s.grid.kind) {
    case GridPolicy::Kind::Quantile: return quantile_grid(s.systems, points);
    case GridPolicy::Kind::Uniform: return uniform_grid(s.grid.min, s.grid.max, points);
    case GridPolicy::Kind::Explicit: return s.grid.x;
  }
  return {};
}

}  // namespace copord
