#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "v2g/cost_models.hpp"
#include "v2g/fleet.hpp"
#include "v2g/grid_oracle.hpp"
#include "v2g/orchestrator.hpp"

namespace v2g {

/// Consensus penalty for the centralized baselines. A vector whose spread
/// (max - min) exceeds `tolerance_kw` pays cap * min(1, spread / scale),
/// where scale defaults to the width of the rate box.
struct PenaltyConfig {
  double cap = 10.0;
  double tolerance_kw = 1e-6;
  double spread_scale_kw = 0.0;  ///< <= 0 selects the rate-box width
};

/// Axis-aligned search box shared by every coordinate.
struct Box {
  std::size_t dim = 1;
  double lower = 0.0;
  double upper = 0.0;
};

/// Total net cost of a per-EV rate vector plus the consensus penalty. Unlike
/// the decentralized protocol this sees every private cost function.
class PenaltyFitness {
 public:
  PenaltyFitness(std::vector<EvCostParams> evs, AggCostParams agg, PenaltyConfig config,
                 double lower, double upper);

  /// Restricts the cost model to the available EVs of `fleet`.
  static PenaltyFitness for_fleet(const Fleet& fleet, const CostModel& costs,
                                  PenaltyConfig config = {});

  std::size_t dim() const { return evs_.size(); }
  Box box() const { return {dim(), lower_, upper_}; }

  /// Sum of EV net costs plus the aggregator's. Throws DomainError on a
  /// length mismatch.
  double true_objective(std::span<const double> rates) const;
  double penalty(std::span<const double> rates) const;
  double operator()(std::span<const double> rates) const;

 private:
  std::vector<EvCostParams> evs_;
  AggCostParams agg_;
  PenaltyConfig config_;
  double lower_;
  double upper_;
};

using Objective = std::function<double(std::span<const double>)>;

struct BaselineResult {
  std::vector<double> best;
  double best_fitness = 0.0;
  std::vector<double> trace;  ///< best fitness after each of the k_max iterations
  std::vector<double> trace_mean_kw;    ///< mean coordinate of that best vector
  std::vector<double> trace_spread_kw;  ///< its max - min
  std::uint64_t evaluations = 0;
};

/// Centralized whale optimization over the full box. A and C are drawn per
/// dimension (random vectors, as in the original method); l, p and the
/// random whale per agent. The leader is the best position ever evaluated.
BaselineResult cwoa_solve(const Box& box, const Objective& fitness, std::size_t whales,
                          std::size_t k_max, std::uint64_t seed);

/// Grey wolf optimizer: each wolf moves to the mean of three pulls towards
/// the alpha, beta and delta leaders (the three best positions seen so far),
/// with a decreasing linearly from 2 to 0. pack_size >= 3.
BaselineResult gwo_solve(const Box& box, const Objective& fitness, std::size_t pack_size,
                         std::size_t k_max, std::uint64_t seed);

/// One row of an overlayable convergence trace.
struct TraceRow {
  std::string method;
  std::size_t k = 0;
  double mean_rate_kw = 0.0;
  double spread_kw = 0.0;
  double best_value = 0.0;
};

/// "method,k,mean_rate_kw,spread_kw,best_value" with header.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

struct MethodOutcome {
  std::string method;
  double mean_rate_kw = 0.0;
  double spread_kw = 0.0;
  double true_objective = 0.0;
  double penalized_objective = 0.0;
  std::vector<TraceRow> trace;
};

struct Comparison {
  GridOptimum oracle;
  MethodOutcome dwoa;
  MethodOutcome cwoa;
  MethodOutcome gwo;
};

/// DWOA, CWOA and GWO on the available EVs of one fleet, all for `k_max`
/// iterations. DWOA uses `dwoa` (k_max overridden); the baselines use
/// `population` agents and the penalized fitness. DWOA's trace reports the
/// true objective at its best-so-far rate.
Comparison compare_methods(const Fleet& fleet, const CostModel& costs, OptimizationParams dwoa,
                           std::size_t population, std::size_t k_max,
                           const PenaltyConfig& penalty, std::uint64_t seed);

}  // namespace v2g
