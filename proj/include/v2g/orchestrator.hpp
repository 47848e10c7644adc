#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "v2g/cost_models.hpp"
#include "v2g/dwoa.hpp"
#include "v2g/fixed_cost.hpp"
#include "v2g/fleet.hpp"
#include "v2g/grid_oracle.hpp"
#include "v2g/run_record.hpp"
#include "v2g/shuffle.hpp"
#include "v2g/topology.hpp"

namespace v2g {

struct OptimizationParams {
  std::size_t whales = 1;  ///< M
  std::size_t k_max = 150;
  bool shuffle = true;     ///< false: agents report true values to the ECN
  Range split_fraction{0.0, 1.0};
  TopologyPolicy topology = TopologyPolicy::one_random_neighbor;
  std::vector<Edge> custom_edges;
  bool dynamic_topology = false;  ///< rebuild the sharing graph every iteration
  LinkModel link;
  bool warm_start = false;  ///< later epochs start from the previous final pool
  bool record_timing = false;
};

/// Index of the smallest total; ties go to the lowest index. Throws
/// ProtocolError on an empty list.
std::size_t ecn_select_best(std::span<const FixedCost> totals);

/// Common-rate box for the available EVs: [max rate_min, min rate_max].
/// Throws DomainError if the set is empty or the box is empty.
std::pair<double, double> consensus_bounds(const Fleet& fleet);

/// Grid-search ground truth over the available EVs of `fleet`.
GridOptimum fleet_grid_oracle(const Fleet& fleet, const CostModel& costs, double step = 1e-4);

/// Outcome of one optimization epoch.
struct EpochResult {
  double best_rate_kw = 0.0;
  FixedCost best_total;
  bool empty = false;  ///< no available EV; rate forced to 0
  /// ECN selection in every evaluation round, k = 0..k_max.
  std::vector<std::size_t> selections;
  std::vector<double> final_positions;
};

/// The EVs, the aggregator and the ECN of one run. Owns the evaluate-only
/// cost oracles, the sharing topology and the random streams, and carries
/// them across epochs.
class V2gNetwork {
 public:
  V2gNetwork(const CostModel& costs, OptimizationParams params, std::uint64_t seed);
  ~V2gNetwork();
  V2gNetwork(V2gNetwork&&) noexcept;
  V2gNetwork& operator=(V2gNetwork&&) noexcept;

  /// Runs one optimization to k_max over the available EVs of `fleet`: broadcast,
  /// local evaluation, shuffle, ECN aggregation and selection, whale update.
  /// Appends one IterationRow per update iteration to `record`.
  EpochResult optimize(const Fleet& fleet, std::size_t epoch, RunRecord& record);

  /// Total oracle evaluations by all agents so far.
  std::uint64_t oracle_calls() const;
  const std::optional<NeighborMap>& topology() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct OptimizationResult {
  double best_rate_kw = 0.0;
  FixedCost best_total;
  EpochResult epoch;
  RunRecord record;
  std::uint64_t oracle_calls = 0;
};

/// One epoch on the given fleet. With no available EV the result is rate 0
/// and a record flagged empty_fleet. Identical seeds give identical output.
OptimizationResult run_optimization(const Fleet& fleet, const CostModel& costs,
                                    const OptimizationParams& params, std::uint64_t seed);

struct FleetEvent {
  double t_h = 0.0;
  std::vector<std::size_t> depart_ids;
};

struct ScenarioParams {
  OptimizationParams optimization;
  double dt_h = 0.1;
  double horizon_h = 6.0;
  std::vector<FleetEvent> events;
};

struct ScenarioOutputs {
  std::ostream* fleet_snapshots = nullptr;  ///< long-format SOC rows per step
  std::ostream* topology_edges = nullptr;   ///< edge list of the first epoch
};

/// Time loop. At each step: apply due events, re-optimize from scratch (or
/// warm) if the available set changed, record grid power for the current
/// rate, then discharge the available EVs by rate*dt.
RunRecord run_scenario(Fleet fleet, const CostModel& costs, const ScenarioParams& params,
                       std::uint64_t seed, const ScenarioOutputs& outputs = {});

}  // namespace v2g
