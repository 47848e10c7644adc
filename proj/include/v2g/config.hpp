#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "v2g/baselines.hpp"
#include "v2g/cost_models.hpp"
#include "v2g/fleet.hpp"
#include "v2g/orchestrator.hpp"

namespace v2g {

inline constexpr int kConfigSchemaVersion = 1;

/// A departure event in the config. Either an explicit id list or
/// `keep_first`: every EV with id >= keep_first departs.
struct EventConfig {
  double t_h = 0.0;
  std::vector<std::size_t> depart;
  std::optional<std::size_t> keep_first;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;

  std::size_t ev_count = 100;
  FleetConfig fleet;
  double km_per_kwh = 8.26;
  DistanceBasis distance_basis = DistanceBasis::soc_min;

  CostConfig cost;

  OptimizationParams optimizer;

  double dt_h = 0.1;
  double horizon_h = 6.0;
  std::vector<EventConfig> events;

  std::size_t baseline_population = 30;
  std::size_t baseline_k_max = 300;
  PenaltyConfig penalty;

  std::size_t runs = 100;
  std::size_t threads = 1;

  std::string output_dir = "out";

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Parses JSON text. Unknown keys and a wrong schema_version are rejected;
/// missing keys keep their defaults, so "" and "{}" both give the default
/// scenario. Throws ConfigError.
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a file. Throws ConfigError if it cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Serializes every field, defaults included. parse_config inverts it.
std::string dump_config(const ScenarioConfig& config);

/// Everything a run needs, sampled from the config seed.
struct Scenario {
  Fleet fleet;
  CostModel costs;
  ScenarioParams params;
};

/// Fleet and cost model are sampled from independent streams of `seed`
/// (defaults to config.seed).
Scenario build_scenario(const ScenarioConfig& config, std::optional<std::uint64_t> seed = {});

}  // namespace v2g
