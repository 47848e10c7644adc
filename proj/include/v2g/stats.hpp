#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "v2g/config.hpp"

namespace v2g {

enum class SweepAxis { k_max, whales };

std::string to_string(SweepAxis axis);

/// One independent optimization run of a sweep.
struct RunSample {
  std::size_t value = 0;  ///< sweep point (k_max or M)
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double rate_kw = 0.0;
  double total = 0.0;  ///< ECN-side total at the returned rate
  double time_s = 0.0;
};

struct StatsRow {
  SweepAxis axis = SweepAxis::k_max;
  std::size_t value = 0;
  double mean_rate_kw = 0.0;
  double std_rate_kw = 0.0;  ///< sample standard deviation (n - 1)
  double mean_time_s = 0.0;
  std::size_t runs = 0;
};

struct StatsResult {
  std::vector<StatsRow> rows;       ///< in sweep order
  std::vector<RunSample> samples;   ///< grouped by sweep point, then run index
};

/// Seed of run `run`: depends on the base seed and the run index only, so
/// every sweep point sees the same R algorithm seeds.
std::uint64_t run_seed(std::uint64_t base, std::size_t run);

/// Mean, sample std and mean time of `samples`, summed in run order.
/// Throws DomainError on fewer than two samples.
StatsRow summarize(SweepAxis axis, std::size_t value, std::span<const RunSample> samples);

/// For each sweep value, R independent single-epoch runs on the scenario
/// sampled from config.seed (same fleet and costs for every run). Runs may be
/// spread over `threads` workers; results do not depend on scheduling.
/// Throws DomainError if runs < 2 or `values` is empty.
StatsResult stats_harness(const ScenarioConfig& config, SweepAxis axis,
                          std::span<const std::size_t> values, std::size_t runs,
                          std::size_t threads = 1);

/// "# v2g-stats v1" then "axis,value,mean_rate_kw,std_rate_kw,mean_time_s,runs".
void write_stats_csv(std::ostream& out, std::span<const StatsRow> rows);
/// "# v2g-samples v1" then "value,run,seed,rate_kw,total,time_s".
void write_samples_csv(std::ostream& out, std::span<const RunSample> samples);
std::vector<RunSample> read_samples_csv(std::istream& in);

}  // namespace v2g
