#include "copula_order/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "copula_order/csv.hpp"
#include "copula_order/kernels.hpp"
#include "copula_order/mc.hpp"
#include "copula_order/ordering.hpp"
#include "copula_order/scenario.hpp"

namespace copord {

SystemSpec fig1_spec() {
  SystemSpec s;
  s.k = 1;
  s.gen = Generator::clayton(1.0);
  s.transform = Transform::phr();
  s.baseline = Baseline::std_exponential();
  s.params = {1.0, 2.5, 4.0};
  return s;
}

std::vector<double> fig1_grid(int points) {
  if (points < 1) throw RangeError("grid-points must be positive, got " + std::to_string(points));
  std::vector<double> xs;
  for (int j = 1; j <= points; ++j) xs.push_back(10.0 * j / points);
  return xs;
}

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::optional<int> grid_points;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> z;
  std::string batch_out;
  std::string gen1;
  std::string gen2;
  double grid_max = 20.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int n = 0;
};

void emit(const Options& o, std::ostream& out, const std::string& body) {
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + o.out + "'");
  f << body;
  if (!f) throw UsageError("failed writing output file '" + o.out + "'");
}

std::string json_body(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Scenario need_scenario(const Options& o, std::size_t systems) {
  if (o.scenario.empty()) throw UsageError("--scenario is required");
  Scenario s = load_scenario(o.scenario);
  if (s.systems.size() != systems) {
    throw UsageError("this command needs a scenario with " + std::to_string(systems) + " system(s), got " +
                     std::to_string(s.systems.size()));
  }
  return s;
}

std::string cmd_curve(const Options& o, EvalMode mode) {
  const Scenario s = need_scenario(o, 1);
  const std::vector<double> xs = resolve_grid(s, o.grid_points);
  const std::vector<std::vector<double>> cols{xs, kernels::cdf_grid_parallel(s.systems[0], xs, mode)};
  const std::vector<std::string> header{"x", "cdf"};
  std::ostringstream os;
  write_columns(os, header, cols);
  return os.str();
}

std::string cmd_compare(const Options& o) {
  const Scenario s = need_scenario(o, 2);
  const std::vector<double> xs = resolve_grid(s, o.grid_points);
  return json_body(to_json(dominance(s.systems[0], s.systems[1], xs)));
}

std::string cmd_fig1(const Options& o, EvalMode mode) {
  const SystemSpec spec = fig1_spec();
  const std::vector<double> xs = fig1_grid(o.grid_points.value_or(400));
  const std::vector<std::vector<double>> cols{xs, schur_scan(spec, xs, 0, 1, mode).d,
                                              schur_scan(spec, xs, 0, 2, mode).d, schur_scan(spec, xs, 1, 2, mode).d};
  const std::vector<std::string> header{"x", "D12", "D13", "D23"};
  std::ostringstream os;
  write_columns(os, header, cols);
  return os.str();
}

std::string cmd_superadd(const Options& o) {
  const Generator g1 = Generator::parse(o.gen1);
  const Generator g2 = Generator::parse(o.gen2);
  const int points = o.grid_points.value_or(200);
  if (points < 1) throw RangeError("grid-points must be positive, got " + std::to_string(points));
  if (!(o.grid_max > 0.0)) throw RangeError("grid-max must be positive");
  std::vector<double> grid;
  for (int j = 1; j <= points; ++j) grid.push_back(o.grid_max * j / points);
  nlohmann::json j = to_json(check_superadditive(g1, g2, grid));
  j["gen1"] = g1.to_string();
  j["gen2"] = g2.to_string();
  return json_body(j);
}

std::string cmd_validate(const Options& o) {
  const Scenario s = need_scenario(o, 1);
  const std::size_t rows = o.samples.value_or(s.options.samples.value_or(200000));
  const std::uint64_t seed = o.seed.value_or(s.options.seed.value_or(20240101));
  const double z = o.z.value_or(s.options.z.value_or(4.0));
  if (rows == 0) throw RangeError("samples must be positive");
  if (!o.batch_out.empty()) {
    const SampleBatch batch = sample_system(s.systems[0], rows, seed);
    std::ofstream f(o.batch_out, std::ios::binary);
    if (!f) throw UsageError("cannot open batch output file '" + o.batch_out + "'");
    write_batch_csv(f, batch);
  }
  return json_body(to_json(validate_closed_form(s.systems[0], rows, seed, z)));
}

std::string cmd_extremal(const Options& o) {
  return json_body(to_json(extremal_config(BoxConstraint{o.a, o.b, o.c, o.n})));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic ordering of k-out-of-n systems with Archimedean copulas", "copula-order"};
  app.require_subcommand(1);
  Options o;

  const auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the report to this file"); };
  const auto add_scenario = [&](CLI::App* c) {
    c->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  };
  const auto add_points = [&](CLI::App* c) { c->add_option("--grid-points", o.grid_points, "Number of grid points"); };

  CLI::App* curve = app.add_subcommand("curve", "System CDF on the scenario grid (CSV x,cdf)");
  add_scenario(curve);
  add_out(curve);
  add_points(curve);

  CLI::App* compare = app.add_subcommand("compare", "Stochastic dominance verdict between two systems (JSON)");
  add_scenario(compare);
  add_out(compare);
  add_points(compare);

  CLI::App* fig1 = app.add_subcommand("fig1", "Schur differences of the 2-out-of-3 Clayton reference system (CSV)");
  add_out(fig1);
  add_points(fig1);

  CLI::App* superadd = app.add_subcommand("superadd", "Grid check that phi2(psi1(t)) is super-additive (JSON)");
  superadd->add_option("--gen1", o.gen1, "Inner generator psi1, e.g. clayton:1")->required();
  superadd->add_option("--gen2", o.gen2, "Outer generator phi2, e.g. clayton:2")->required();
  superadd->add_option("--grid-max", o.grid_max, "Upper end of the grid (default 20)");
  add_out(superadd);
  add_points(superadd);

  CLI::App* validate = app.add_subcommand("validate", "Monte Carlo check of the closed-form CDF (JSON)");
  add_scenario(validate);
  add_out(validate);
  validate->add_option("--samples", o.samples, "Number of sampled systems");
  validate->add_option("--seed", o.seed, "RNG seed");
  validate->add_option("--z", o.z, "z-score threshold");
  validate->add_option("--batch-out", o.batch_out, "Also write the sampled lifetimes as CSV");

  CLI::App* extremal = app.add_subcommand("extremal", "Extreme parameter vectors of a box constraint (JSON)");
  extremal->add_option("--a", o.a, "Lower bound of each parameter")->required();
  extremal->add_option("--b", o.b, "Upper bound of each parameter")->required();
  extremal->add_option("--c", o.c, "Sum of the parameters")->required();
  extremal->add_option("--n", o.n, "Number of parameters")->required();
  add_out(extremal);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const EvalMode mode = eval_mode_from_env();
    std::string body;
    if (curve->parsed()) {
      body = cmd_curve(o, mode);
    } else if (compare->parsed()) {
      body = cmd_compare(o);
    } else if (fig1->parsed()) {
      body = cmd_fig1(o, mode);
    } else if (superadd->parsed()) {
      body = cmd_superadd(o);
    } else if (validate->parsed()) {
      body = cmd_validate(o);
    } else if (extremal->parsed()) {
      body = cmd_extremal(o);
    }
    emit(o, out, body);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedSampler& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace copord
