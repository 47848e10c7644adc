#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "v2g/fixed_cost.hpp"

namespace v2g {

/// State after update iteration k (1..k_max) of one optimization epoch.
struct IterationRow {
  std::size_t epoch = 0;
  std::size_t k = 0;
  std::size_t selected_index = 0;  ///< ECN argmin over the evaluated pool
  double selected_rate_kw = 0.0;
  FixedCost selected_total;        ///< masked total the ECN saw for it
  double best_rate_kw = 0.0;       ///< elitist leader after this iteration
  FixedCost best_total;
  std::size_t available = 0;
  std::uint64_t oracle_calls = 0;  ///< cumulative over the run
  double wall_ms = 0.0;            ///< 0 unless timing is recorded

  bool operator==(const IterationRow&) const = default;
};

/// Fleet state at the start of one simulation step and the rate applied
/// over [t, t + dt).
struct TimestepRow {
  std::size_t step = 0;
  std::size_t epoch = 0;
  double t_h = 0.0;
  double rate_kw = 0.0;
  double grid_kw = 0.0;
  std::size_t available = 0;
  std::vector<double> soc;  ///< one entry per EV, by id

  bool operator==(const TimestepRow&) const = default;
};

struct RunRecord {
  std::vector<IterationRow> iterations;
  std::vector<TimestepRow> timesteps;
  bool empty_fleet = false;  ///< optimization requested with no available EV

  bool operator==(const RunRecord&) const = default;
};

/// First line of every run-record CSV.
inline constexpr const char* kRunRecordSchema = "# v2g-run-record v1";

/// CSV with a schema line, a header, then one row per iteration ("iter")
/// and per timestep ("step"), or a single "empty" row for an empty-fleet
/// run. Columns:
///   kind,epoch,k,selected_index,selected_rate_kw,selected_total,
///   best_rate_kw,best_total,available,oracle_calls,wall_ms,
///   step,t_h,rate_kw,grid_kw,soc
/// Cells that do not apply to a row kind are empty; soc is a
/// ';'-separated list. Doubles use the shortest round-trip form and totals
/// are exact fixed-point decimals, so read_run_csv(write_run_csv(r)) == r.
void write_run_csv(std::ostream& out, const RunRecord& record);
RunRecord read_run_csv(std::istream& in);

/// File variants. export_run throws std::runtime_error if the path cannot
/// be written.
void export_run(const RunRecord& record, const std::filesystem::path& path);
RunRecord import_run(const std::filesystem::path& path);

}  // namespace v2g
