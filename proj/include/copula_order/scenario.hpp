#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "copula_order/system.hpp"

namespace copord {

struct GridPolicy {
  enum class Kind { Quantile, Uniform, Explicit };
  Kind kind = Kind::Quantile;
  int points = 400;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> x;

  friend bool operator==(const GridPolicy&, const GridPolicy&) = default;
};

struct ScenarioOptions {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> z;

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

/// A scenario document: one or two systems, a grid policy and options.
struct Scenario {
  std::vector<SystemSpec> systems;
  GridPolicy grid;
  ScenarioOptions options;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline constexpr int kScenarioSchema = 1;

/// Parses a scenario document. Relative tabulated-baseline files are resolved
/// against `base_dir`. Unknown keys are rejected; JSON syntax errors report a
/// line number.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const Scenario& s);
std::string serialize_scenario(const Scenario& s);

/// Evaluation grid for the scenario; `points_override` replaces the point
/// count of quantile and uniform policies.
std::vector<double> resolve_grid(const Scenario& s, std::optional<int> points_override = std::nullopt);

}  // namespace copord
