#include "v2g/grid_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "v2g/errors.hpp"

namespace v2g {

double consensus_objective(double rate, std::span<const EvCostParams> evs,
                           const AggCostParams& agg) {
  if (agg.eta.size() != evs.size()) {
    throw DomainError("consensus_objective: efficiency list does not match EV count");
  }
  double total = 0.0;
  for (const auto& ev : evs) total += ev_net_cost(rate, ev);
  const std::vector<double> rates(evs.size(), rate);
  return total + agg_net_cost(rates, agg);
}

GridOptimum grid_search_consensus(std::span<const EvCostParams> evs, const AggCostParams& agg,
                                  double lower, double upper, double step) {
  if (!(step > 0.0)) throw DomainError("grid_search_consensus: step must be > 0");
  if (lower > upper) throw DomainError("grid_search_consensus: lower > upper");

  // Integer index keeps grid points free of accumulated drift.
  const auto intervals = static_cast<std::size_t>(std::floor((upper - lower) / step + 1e-9));
  GridOptimum best;
  best.objective = consensus_objective(lower, evs, agg);
  best.rate = lower;
  best.points = 1;
  auto consider = [&](double rate) {
    const double value = consensus_objective(rate, evs, agg);
    ++best.points;
    if (value < best.objective) {
      best.objective = value;
      best.rate = rate;
    }
  };
  for (std::size_t i = 1; i <= intervals; ++i) {
    consider(std::min(upper, lower + static_cast<double>(i) * step));
  }
  if (lower + static_cast<double>(intervals) * step < upper - 1e-12) consider(upper);
  return best;
}

}  // namespace v2g
