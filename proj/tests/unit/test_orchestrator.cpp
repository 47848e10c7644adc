#include <doctest.h>

#include <cmath>

#include "v2g/errors.hpp"
#include "v2g/orchestrator.hpp"

using namespace v2g;

namespace {

struct Setup {
  Fleet fleet;
  CostModel costs;
};

Setup default_setup(std::size_t n, std::uint64_t seed) {
  Setup s;
  s.fleet = sample_fleet(n, seed);
  std::vector<double> eta;
  for (const auto& ev : s.fleet.evs) eta.push_back(ev.eta);
  s.costs = sample_cost_model(eta, CostConfig{}, seed + 1);
  return s;
}

}  // namespace

TEST_CASE("ECN selection") {
  const std::vector<FixedCost> worked{FixedCost::from_units(12), FixedCost::from_units(30)};
  CHECK(ecn_select_best(worked) == 0);
  const std::vector<FixedCost> single{FixedCost::from_units(-4)};
  CHECK(ecn_select_best(single) == 0);
  const std::vector<FixedCost> tie{FixedCost::from_units(3), FixedCost::from_units(1),
                                   FixedCost::from_units(1)};
  CHECK(ecn_select_best(tie) == 1);
  CHECK_THROWS_AS(ecn_select_best({}), ProtocolError);
}

TEST_CASE("default scenario converges to the grid oracle") {
  const Setup s = default_setup(100, 21);
  const GridOptimum opt = fleet_grid_oracle(s.fleet, s.costs);
  OptimizationParams p;  // M = 1, k_max = 150
  const OptimizationResult r = run_optimization(s.fleet, s.costs, p, 4);
  CHECK(std::fabs(r.best_rate_kw - opt.rate) <= 1e-2);
  CHECK(r.record.iterations.size() == 150);
  CHECK(r.epoch.selections.size() == 151);
  // Each evaluation round: 100 EVs plus the aggregator, one whale.
  CHECK(r.oracle_calls == 151 * 101);
  for (std::size_t k = 1; k < r.record.iterations.size(); ++k) {
    CHECK(r.record.iterations[k].best_total <= r.record.iterations[k - 1].best_total);
  }
}

TEST_CASE("k_max = 0 returns the best of the initial pool") {
  const Setup s = default_setup(10, 3);
  OptimizationParams p;
  p.whales = 6;
  p.k_max = 0;
  p.shuffle = false;
  const OptimizationResult r = run_optimization(s.fleet, s.costs, p, 9);
  CHECK(r.record.iterations.empty());
  REQUIRE(r.epoch.final_positions.size() == 6);
  double best_value = 1e300;
  double best_rate = 0.0;
  for (double x : r.epoch.final_positions) {
    const double v = consensus_objective(x, s.costs.evs, s.costs.aggregator);
    if (v < best_value) {
      best_value = v;
      best_rate = x;
    }
  }
  CHECK(r.best_rate_kw == best_rate);
}

TEST_CASE("shuffling never changes the ECN's choice") {
  const Setup s = default_setup(30, 5);
  OptimizationParams on;
  on.whales = 8;
  on.k_max = 40;
  OptimizationParams off = on;
  off.shuffle = false;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = run_optimization(s.fleet, s.costs, on, seed);
    const auto b = run_optimization(s.fleet, s.costs, off, seed);
    CHECK(a.epoch.selections == b.epoch.selections);
    CHECK(a.best_rate_kw == b.best_rate_kw);
  }
}

TEST_CASE("empty fleet gives rate zero and a flagged record") {
  Setup s = default_setup(4, 1);
  for (auto& ev : s.fleet.evs) ev.departed = true;
  const auto r = run_optimization(s.fleet, s.costs, OptimizationParams{}, 1);
  CHECK(r.best_rate_kw == 0.0);
  CHECK(r.record.empty_fleet);
  CHECK(r.record.iterations.empty());
}

TEST_CASE("fleet size must match the cost model") {
  const Setup s = default_setup(4, 1);
  const Fleet other = sample_fleet(5, 1);
  CHECK_THROWS_AS(run_optimization(other, s.costs, OptimizationParams{}, 1), DomainError);
}

TEST_CASE("drop from 100 to 50 EVs re-optimizes to the new oracle") {
  const Setup s = default_setup(100, 21);
  ScenarioParams p;
  p.horizon_h = 0.3;
  FleetEvent drop;
  drop.t_h = 0.1;
  for (std::size_t id = 50; id < 100; ++id) drop.depart_ids.push_back(id);
  p.events = {drop};
  const RunRecord rec = run_scenario(s.fleet, s.costs, p, 6);
  REQUIRE(rec.timesteps.size() == 3);
  CHECK(rec.timesteps[0].epoch == 0);
  CHECK(rec.timesteps[1].epoch == 1);
  CHECK(rec.timesteps[1].available == 50);

  Fleet half = s.fleet;
  depart(half, drop.depart_ids);
  const GridOptimum opt = fleet_grid_oracle(half, s.costs);
  CHECK(std::fabs(rec.timesteps[1].rate_kw - opt.rate) <= 1e-2);
  CHECK(rec.timesteps[1].rate_kw != rec.timesteps[0].rate_kw);
  CHECK(rec.timesteps[1].rate_kw > rec.timesteps[0].rate_kw);
}

TEST_CASE("no events and no depletion keep a single epoch") {
  const Setup s = default_setup(20, 2);
  ScenarioParams p;
  p.horizon_h = 0.5;
  const RunRecord rec = run_scenario(s.fleet, s.costs, p, 3);
  for (const auto& row : rec.timesteps) {
    CHECK(row.epoch == 0);
    CHECK(row.rate_kw == rec.timesteps[0].rate_kw);
  }
}

TEST_CASE("full-horizon traces") {
  const Setup s = default_setup(100, 21);
  ScenarioParams p;
  p.optimization.k_max = 60;
  p.optimization.whales = 5;
  const RunRecord rec = run_scenario(s.fleet, s.costs, p, 1);
  CHECK(rec.timesteps.size() == 60);
  std::vector<bool> dropped(100, false);
  for (std::size_t t = 0; t < rec.timesteps.size(); ++t) {
    const auto& row = rec.timesteps[t];
    CHECK(row.grid_kw == row.rate_kw * static_cast<double>(row.available));
    if (t > 0) {
      const auto& prev = rec.timesteps[t - 1];
      CHECK(row.grid_kw <= prev.grid_kw + 1e-9);
      CHECK(row.available <= prev.available);
      for (std::size_t i = 0; i < 100; ++i) {
        CHECK(row.soc[i] <= prev.soc[i]);
        if (dropped[i]) CHECK(row.soc[i] == prev.soc[i]);
      }
    }
    for (std::size_t i = 0; i < 100; ++i) {
      if (row.soc[i] < s.fleet.evs[i].soc_min) dropped[i] = true;
    }
  }
  CHECK(rec.timesteps.back().available < 100);
}
