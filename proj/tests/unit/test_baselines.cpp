#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "v2g/baselines.hpp"
#include "v2g/errors.hpp"

using namespace v2g;

namespace {

struct Setup {
  Fleet fleet;
  CostModel costs;
};

Setup setup(std::size_t n, std::uint64_t seed) {
  Setup s;
  s.fleet = sample_fleet(n, seed);
  std::vector<double> eta;
  for (const auto& ev : s.fleet.evs) eta.push_back(ev.eta);
  s.costs = sample_cost_model(eta, CostConfig{}, seed + 1);
  return s;
}

}  // namespace

TEST_CASE("penalty") {
  const Setup s = setup(10, 1);
  const PenaltyFitness f = PenaltyFitness::for_fleet(s.fleet, s.costs);
  CHECK(f.dim() == 10);

  const std::vector<double> consensus(10, 3.0);
  CHECK(f.penalty(consensus) == 0.0);
  CHECK(f(consensus) == f.true_objective(consensus));
  CHECK(f.true_objective(consensus) ==
        doctest::Approx(consensus_objective(3.0, s.costs.evs, s.costs.aggregator)).epsilon(1e-14));

  std::vector<double> extreme(10, 0.0);
  extreme[3] = 6.6;
  CHECK(f.penalty(extreme) == 10.0);

  std::vector<double> half(10, 1.0);
  half[0] = 1.0 + 3.3;
  CHECK(f.penalty(half) == doctest::Approx(5.0));

  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(10);
    for (auto& v : x) v = rng.uniform(0.0, 6.6);
    CHECK(f(x) >= f.true_objective(x));
  }
  const std::vector<double> wrong(3, 1.0);
  CHECK_THROWS_AS(f(wrong), DomainError);
}

TEST_CASE("one-dimensional baselines find the grid optimum") {
  const Setup s = setup(1, 4);
  const PenaltyFitness f = PenaltyFitness::for_fleet(s.fleet, s.costs);
  const GridOptimum opt = fleet_grid_oracle(s.fleet, s.costs);
  const Objective obj = [&](std::span<const double> x) { return f(x); };

  const BaselineResult c = cwoa_solve(f.box(), obj, 30, 300, 1);
  CHECK(std::fabs(c.best[0] - opt.rate) <= 1e-2);
  const BaselineResult g = gwo_solve(f.box(), obj, 30, 300, 1);
  CHECK(std::fabs(g.best[0] - opt.rate) <= 1e-2);
  CHECK(c.trace.size() == 300);
  CHECK(c.evaluations == 30 * 301);
}

TEST_CASE("baselines are reproducible and monotone") {
  const Setup s = setup(20, 5);
  const PenaltyFitness f = PenaltyFitness::for_fleet(s.fleet, s.costs);
  const Objective obj = [&](std::span<const double> x) { return f(x); };
  for (auto solve : {&cwoa_solve, &gwo_solve}) {
    const BaselineResult a = solve(f.box(), obj, 10, 50, 3);
    const BaselineResult b = solve(f.box(), obj, 10, 50, 3);
    CHECK(a.trace == b.trace);
    CHECK(a.best == b.best);
    CHECK(std::is_sorted(a.trace.rbegin(), a.trace.rend()));
    for (double x : a.best) {
      CHECK(x >= 0.0);
      CHECK(x <= 6.6);
    }
  }
  CHECK_THROWS_AS(gwo_solve(f.box(), obj, 2, 10, 1), DomainError);
  CHECK_THROWS_AS(cwoa_solve(f.box(), obj, 0, 10, 1), DomainError);
}

TEST_CASE("hundred-dimensional baselines miss the consensus optimum") {
  const Setup s = setup(100, 21);
  const PenaltyFitness f = PenaltyFitness::for_fleet(s.fleet, s.costs);
  const GridOptimum opt = fleet_grid_oracle(s.fleet, s.costs);
  const Objective obj = [&](std::span<const double> x) { return f(x); };
  for (auto solve : {&cwoa_solve, &gwo_solve}) {
    const BaselineResult r = solve(f.box(), obj, 30, 300, 2);
    const auto [lo, hi] = std::minmax_element(r.best.begin(), r.best.end());
    const bool spread = *hi - *lo > 1e-6;
    const bool off = std::fabs(*lo - opt.rate) > 0.05 * opt.rate;
    CHECK((spread || off));
  }
}

TEST_CASE("comparison and trace csv") {
  const Setup s = setup(30, 2);
  OptimizationParams p;
  const Comparison cmp = compare_methods(s.fleet, s.costs, p, 10, 40, PenaltyConfig{}, 1);
  CHECK(cmp.dwoa.trace.size() == 40);
  CHECK(cmp.cwoa.trace.size() == 40);
  CHECK(cmp.gwo.trace.size() == 40);
  CHECK(cmp.dwoa.true_objective >= cmp.oracle.objective - 1e-9);

  std::ostringstream out;
  write_trace_csv(out, cmp.gwo.trace);
  CHECK(out.str().rfind("method,k,mean_rate_kw,spread_kw,best_value\ngwo,1,", 0) == 0);
}
