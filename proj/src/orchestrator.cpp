#include "v2g/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "v2g/errors.hpp"

namespace v2g {

std::size_t ecn_select_best(std::span<const FixedCost> totals) {
  if (totals.empty()) throw ProtocolError("ecn_select_best: no candidate totals");
  std::size_t best = 0;
  for (std::size_t h = 1; h < totals.size(); ++h) {
    if (totals[h] < totals[best]) best = h;
  }
  return best;
}

std::pair<double, double> consensus_bounds(const Fleet& fleet) {
  double lower = 0.0;
  double upper = 0.0;
  bool any = false;
  for (const auto& ev : fleet.evs) {
    if (!ev.available()) continue;
    lower = any ? std::max(lower, ev.rate_min_kw) : ev.rate_min_kw;
    upper = any ? std::min(upper, ev.rate_max_kw) : ev.rate_max_kw;
    any = true;
  }
  if (!any) throw DomainError("consensus_bounds: no available EV");
  if (lower > upper) throw DomainError("consensus_bounds: no common rate satisfies every EV");
  return {lower, upper};
}

GridOptimum fleet_grid_oracle(const Fleet& fleet, const CostModel& costs, double step) {
  const auto [lower, upper] = consensus_bounds(fleet);
  std::vector<EvCostParams> evs;
  AggCostParams agg = costs.aggregator;
  agg.eta.clear();
  for (std::size_t id : available_set(fleet)) {
    evs.push_back(costs.evs.at(id));
    agg.eta.push_back(costs.aggregator.eta.at(id));
  }
  return grid_search_consensus(evs, agg, lower, upper, step);
}

struct V2gNetwork::State {
  OptimizationParams params;
  std::uint64_t seed = 0;
  std::vector<EvCostOracle> ev_oracles;
  AggCostOracle agg_oracle;
  std::optional<NeighborMap> topology;
  Rng topology_rng;
  std::vector<double> last_positions;

  State(const CostModel& costs, OptimizationParams p, std::uint64_t s)
      : params(std::move(p)),
        seed(s),
        agg_oracle(costs.aggregator),
        topology_rng(derive_seed(s, 0x7090)) {
    ev_oracles.reserve(costs.evs.size());
    for (const auto& ev : costs.evs) ev_oracles.emplace_back(ev);
  }
};

V2gNetwork::V2gNetwork(const CostModel& costs, OptimizationParams params, std::uint64_t seed) {
  if (costs.evs.size() != costs.aggregator.eta.size()) {
    throw DomainError("V2gNetwork: cost model has " + std::to_string(costs.evs.size()) +
                      " EVs but " + std::to_string(costs.aggregator.eta.size()) +
                      " efficiencies");
  }
  if (params.whales == 0) throw DomainError("V2gNetwork: at least one whale required");
  state_ = std::make_unique<State>(costs, std::move(params), seed);
}

V2gNetwork::~V2gNetwork() = default;
V2gNetwork::V2gNetwork(V2gNetwork&&) noexcept = default;
V2gNetwork& V2gNetwork::operator=(V2gNetwork&&) noexcept = default;

std::uint64_t V2gNetwork::oracle_calls() const {
  std::uint64_t calls = state_->agg_oracle.call_count();
  for (const auto& o : state_->ev_oracles) calls += o.call_count();
  return calls;
}

const std::optional<NeighborMap>& V2gNetwork::topology() const { return state_->topology; }

EpochResult V2gNetwork::optimize(const Fleet& fleet, std::size_t epoch, RunRecord& record) {
  auto& s = *state_;
  if (fleet.evs.size() != s.ev_oracles.size()) {
    throw DomainError("V2gNetwork::optimize: fleet size does not match the cost model");
  }
  EpochResult result;
  const auto ids = available_set(fleet);
  if (ids.empty()) {
    result.empty = true;
    return result;
  }
  const auto [lower, upper] = consensus_bounds(fleet);
  const OptimizationParams& p = s.params;

  // Separate streams: the ECN's draws must not depend on whether shuffling
  // is on, so paired runs see the same whale trajectory.
  const std::uint64_t epoch_seed = derive_seed(s.seed, epoch);
  Rng ecn_rng(derive_seed(epoch_seed, 1));
  Rng split_rng(derive_seed(epoch_seed, 2));
  Rng route_rng(derive_seed(epoch_seed, 3));
  const SplitFn splitter = random_splitter(split_rng, p.split_fraction);

  if (p.shuffle) {
    s.topology = s.topology ? reroute(*s.topology, ids, s.topology_rng)
                            : build_topology(ids, p.topology, s.topology_rng, p.custom_edges);
  }

  WhalePool pool = WhalePool::initialize(p.whales, lower, upper, p.k_max, ecn_rng);
  if (p.warm_start && s.last_positions.size() == p.whales) {
    for (std::size_t h = 0; h < p.whales; ++h) {
      pool.positions[h] = clamp_to_bounds(s.last_positions[h], lower, upper);
    }
  }

  std::vector<double> rates(fleet.evs.size(), 0.0);
  auto evaluate_round = [&] {
    if (p.shuffle && p.dynamic_topology && pool.k > 0) {
      s.topology = build_topology(ids, p.topology, s.topology_rng, p.custom_edges);
    }
    Holdings holdings;
    for (std::size_t id : ids) {
      auto& seq = holdings[AgentId::ev(id)];
      seq.reserve(pool.size());
      for (std::size_t h = 0; h < pool.size(); ++h) {
        const double c = pool.positions[h];
        seq.push_back({h, c, FixedCost::from_double(s.ev_oracles[id].evaluate(c))});
      }
    }
    auto& agg_seq = holdings[AgentId::aggregator()];
    for (std::size_t h = 0; h < pool.size(); ++h) {
      const double c = pool.positions[h];
      for (std::size_t id : ids) rates[id] = c;
      agg_seq.push_back({h, c, FixedCost::from_double(s.agg_oracle.evaluate(rates))});
    }

    std::vector<FixedCost> totals;
    if (p.shuffle) {
      ShuffleOptions opts;
      opts.link = p.link;
      totals = candidate_totals(shuffle_round(holdings, *s.topology, splitter, route_rng, opts).masked);
    } else {
      totals = candidate_totals(holdings);
    }
    const std::size_t selected = ecn_select_best(totals);
    pool.record_selection(selected, totals[selected]);
    result.selections.push_back(selected);
    return totals[selected];
  };

  evaluate_round();
  while (!pool.finished()) {
    const auto started = std::chrono::steady_clock::now();
    advance(pool, ecn_rng);
    const FixedCost selected_total = evaluate_round();
    IterationRow row;
    row.epoch = epoch;
    row.k = pool.k;
    row.selected_index = pool.selected_index;
    row.selected_rate_kw = pool.positions[pool.selected_index];
    row.selected_total = selected_total;
    row.best_rate_kw = *pool.leader_rate;
    row.best_total = pool.leader_total;
    row.available = ids.size();
    row.oracle_calls = oracle_calls();
    if (p.record_timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started)
                        .count();
    }
    record.iterations.push_back(row);
  }

  result.best_rate_kw = *pool.leader_rate;
  result.best_total = pool.leader_total;
  result.final_positions = pool.positions;
  s.last_positions = pool.positions;
  return result;
}

OptimizationResult run_optimization(const Fleet& fleet, const CostModel& costs,
                                    const OptimizationParams& params, std::uint64_t seed) {
  V2gNetwork network(costs, params, seed);
  OptimizationResult out;
  out.epoch = network.optimize(fleet, 0, out.record);
  out.record.empty_fleet = out.epoch.empty;
  out.best_rate_kw = out.epoch.best_rate_kw;
  out.best_total = out.epoch.best_total;
  out.oracle_calls = network.oracle_calls();
  return out;
}

RunRecord run_scenario(Fleet fleet, const CostModel& costs, const ScenarioParams& params,
                       std::uint64_t seed, const ScenarioOutputs& outputs) {
  if (!(params.horizon_h > 0.0)) throw DomainError("run_scenario: horizon must be > 0");
  if (!(params.dt_h > 0.0)) throw DomainError("run_scenario: dt must be > 0");
  const auto steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.horizon_h / params.dt_h)));

  V2gNetwork network(costs, params.optimization, seed);
  RunRecord record;
  std::vector<bool> event_done(params.events.size(), false);
  std::vector<std::size_t> last_available;
  bool first = true;
  std::size_t epoch = 0;
  double rate = 0.0;

  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * params.dt_h;
    fleet.time_h = t;
    for (std::size_t e = 0; e < params.events.size(); ++e) {
      if (!event_done[e] && params.events[e].t_h <= t + 1e-9) {
        depart(fleet, params.events[e].depart_ids);
        event_done[e] = true;
      }
    }

    const auto available = available_set(fleet);
    if (first || available != last_available) {
      if (!first) ++epoch;
      const EpochResult res = network.optimize(fleet, epoch, record);
      rate = res.empty ? 0.0 : res.best_rate_kw;
      if (first && res.empty) record.empty_fleet = true;
      if (first && outputs.topology_edges && network.topology()) {
        write_edges_csv(*outputs.topology_edges, *network.topology());
      }
      last_available = available;
      first = false;
    }

    TimestepRow row;
    row.step = step;
    row.epoch = epoch;
    row.t_h = t;
    row.rate_kw = rate;
    row.grid_kw = grid_power(fleet, rate);
    row.available = available.size();
    row.soc.reserve(fleet.evs.size());
    for (const auto& ev : fleet.evs) row.soc.push_back(ev.soc);
    record.timesteps.push_back(std::move(row));
    if (outputs.fleet_snapshots) write_fleet_snapshot(*outputs.fleet_snapshots, step, fleet);

    if (!available.empty()) fleet = apply_discharge(fleet, rate, params.dt_h);
  }
  return record;
}

}  // namespace v2g
