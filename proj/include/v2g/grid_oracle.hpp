#pragma once

#include <span>
#include <vector>

#include "v2g/cost_models.hpp"

namespace v2g {

struct GridOptimum {
  double rate = 0.0;       ///< kW
  double objective = 0.0;  ///< total net cost at that rate
  std::size_t points = 0;  ///< grid points evaluated
};

/// Total net cost of all listed EVs plus the aggregator when every EV draws
/// the same rate. `agg.eta` must have one entry per EV in `evs`.
double consensus_objective(double rate, std::span<const EvCostParams> evs,
                           const AggCostParams& agg);

/// Brute-force minimum of consensus_objective over lower, lower+step, ...,
/// upper (upper always included). Ties keep the lowest rate. This is the
/// ground truth every convergence check compares against; it reads the
/// closed-form costs directly and shares no code with the whale search.
GridOptimum grid_search_consensus(std::span<const EvCostParams> evs, const AggCostParams& agg,
                                  double lower, double upper, double step = 1e-4);

}  // namespace v2g
