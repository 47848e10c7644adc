#include "v2g/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "v2g/dwoa.hpp"
#include "v2g/errors.hpp"
#include "v2g/format.hpp"
#include "v2g/orchestrator.hpp"
#include "v2g/rng.hpp"

namespace v2g {

PenaltyFitness::PenaltyFitness(std::vector<EvCostParams> evs, AggCostParams agg,
                               PenaltyConfig config, double lower, double upper)
    : evs_(std::move(evs)), agg_(std::move(agg)), config_(config), lower_(lower), upper_(upper) {
  if (evs_.size() != agg_.eta.size()) {
    throw DomainError("PenaltyFitness: EV count does not match efficiency list");
  }
  if (!(config_.cap > 0.0)) throw DomainError("PenaltyFitness: penalty cap must be > 0");
  if (lower_ > upper_) throw DomainError("PenaltyFitness: lower > upper");
}

PenaltyFitness PenaltyFitness::for_fleet(const Fleet& fleet, const CostModel& costs,
                                         PenaltyConfig config) {
  const auto [lower, upper] = consensus_bounds(fleet);
  std::vector<EvCostParams> evs;
  AggCostParams agg = costs.aggregator;
  agg.eta.clear();
  for (std::size_t id : available_set(fleet)) {
    evs.push_back(costs.evs.at(id));
    agg.eta.push_back(costs.aggregator.eta.at(id));
  }
  return PenaltyFitness(std::move(evs), std::move(agg), config, lower, upper);
}

double PenaltyFitness::true_objective(std::span<const double> rates) const {
  if (rates.size() != evs_.size()) {
    throw DomainError("PenaltyFitness: vector length " + std::to_string(rates.size()) +
                      " does not match " + std::to_string(evs_.size()) + " EVs");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) total += ev_net_cost(rates[i], evs_[i]);
  return total + agg_net_cost(rates, agg_);
}

double PenaltyFitness::penalty(std::span<const double> rates) const {
  if (rates.size() != evs_.size()) throw DomainError("PenaltyFitness: vector length mismatch");
  if (rates.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  const double spread = *hi - *lo;
  if (spread <= config_.tolerance_kw) return 0.0;
  const double scale = config_.spread_scale_kw > 0.0 ? config_.spread_scale_kw : upper_ - lower_;
  if (!(scale > 0.0)) return config_.cap;
  return config_.cap * std::min(1.0, spread / scale);
}

double PenaltyFitness::operator()(std::span<const double> rates) const {
  return true_objective(rates) + penalty(rates);
}

namespace {

void check_box(const Box& box) {
  if (box.dim == 0) throw DomainError("baseline: dim must be >= 1");
  if (box.lower > box.upper) throw DomainError("baseline: lower > upper");
}

std::vector<double> random_point(const Box& box, Rng& rng) {
  std::vector<double> x(box.dim);
  for (auto& v : x) v = rng.uniform(box.lower, box.upper);
  return x;
}

void clamp(std::vector<double>& x, const Box& box) {
  for (auto& v : x) v = clamp_to_bounds(v, box.lower, box.upper);
}

void push_trace(BaselineResult& out, double fitness, const std::vector<double>& best) {
  const auto [lo, hi] = std::minmax_element(best.begin(), best.end());
  double sum = 0.0;
  for (double v : best) sum += v;
  out.trace.push_back(fitness);
  out.trace_mean_kw.push_back(sum / static_cast<double>(best.size()));
  out.trace_spread_kw.push_back(*hi - *lo);
}

}  // namespace

BaselineResult cwoa_solve(const Box& box, const Objective& fitness, std::size_t whales,
                          std::size_t k_max, std::uint64_t seed) {
  check_box(box);
  if (whales == 0) throw DomainError("cwoa_solve: at least one whale required");
  Rng rng(seed);
  BaselineResult out;

  std::vector<std::vector<double>> pos(whales);
  for (auto& x : pos) x = random_point(box, rng);
  out.best_fitness = std::numeric_limits<double>::infinity();
  auto evaluate_all = [&] {
    for (const auto& x : pos) {
      const double f = fitness(x);
      ++out.evaluations;
      if (f < out.best_fitness) {
        out.best_fitness = f;
        out.best = x;
      }
    }
  };
  evaluate_all();

  std::vector<double> a(box.dim);
  std::vector<double> c(box.dim);
  for (std::size_t k = 0; k < k_max; ++k) {
    const double alpha = alpha_schedule(k, k_max);
    const auto& leader = out.best;
    auto next = pos;
    for (std::size_t i = 0; i < whales; ++i) {
      for (std::size_t j = 0; j < box.dim; ++j) {
        a[j] = 2.0 * alpha * rng.uniform() - alpha;
        c[j] = 2.0 * rng.uniform();
      }
      const double l = rng.uniform(-1.0, 1.0);
      const double p = rng.uniform();
      const auto& other = pos[rng.index(whales)];
      auto& x = next[i];
      if (p < 0.5) {
        for (std::size_t j = 0; j < box.dim; ++j) {
          const double anchor = std::fabs(a[j]) < 1.0 ? leader[j] : other[j];
          x[j] = anchor - a[j] * std::fabs(c[j] * anchor - pos[i][j]);
        }
      } else {
        const double shape = std::exp(l) * std::cos(2.0 * std::numbers::pi * l);
        for (std::size_t j = 0; j < box.dim; ++j) {
          x[j] = std::fabs(leader[j] - pos[i][j]) * shape + leader[j];
        }
      }
      clamp(x, box);
    }
    pos = std::move(next);
    evaluate_all();
    push_trace(out, out.best_fitness, out.best);
  }
  return out;
}

BaselineResult gwo_solve(const Box& box, const Objective& fitness, std::size_t pack_size,
                         std::size_t k_max, std::uint64_t seed) {
  check_box(box);
  if (pack_size < 3) throw DomainError("gwo_solve: pack_size must be >= 3");
  Rng rng(seed);
  BaselineResult out;

  struct Leader {
    double fitness = std::numeric_limits<double>::infinity();
    std::vector<double> pos;
  };
  std::array<Leader, 3> leaders;  // alpha, beta, delta

  std::vector<std::vector<double>> pos(pack_size);
  for (auto& x : pos) x = random_point(box, rng);
  auto evaluate_all = [&] {
    for (const auto& x : pos) {
      const double f = fitness(x);
      ++out.evaluations;
      for (std::size_t r = 0; r < leaders.size(); ++r) {
        if (f < leaders[r].fitness) {
          for (std::size_t s = leaders.size() - 1; s > r; --s) leaders[s] = leaders[s - 1];
          leaders[r] = {f, x};
          break;
        }
      }
    }
  };
  evaluate_all();

  for (std::size_t k = 0; k < k_max; ++k) {
    const double a = alpha_schedule(k, k_max);
    for (auto& x : pos) {
      std::vector<double> next(box.dim, 0.0);
      for (const auto& leader : leaders) {
        for (std::size_t j = 0; j < box.dim; ++j) {
          const double big_a = 2.0 * a * rng.uniform() - a;
          const double big_c = 2.0 * rng.uniform();
          const double d = std::fabs(big_c * leader.pos[j] - x[j]);
          next[j] += (leader.pos[j] - big_a * d) / 3.0;
        }
      }
      clamp(next, box);
      x = std::move(next);
    }
    evaluate_all();
    push_trace(out, leaders[0].fitness, leaders[0].pos);
  }
  out.best = leaders[0].pos;
  out.best_fitness = leaders[0].fitness;
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "method,k,mean_rate_kw,spread_kw,best_value\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.k << ',' << format_double(r.mean_rate_kw) << ','
        << format_double(r.spread_kw) << ',' << format_double(r.best_value) << '\n';
  }
}

namespace {

MethodOutcome baseline_outcome(std::string method, const BaselineResult& r,
                               const PenaltyFitness& fitness) {
  MethodOutcome out;
  out.method = std::move(method);
  out.mean_rate_kw = r.trace_mean_kw.empty() ? 0.0 : r.trace_mean_kw.back();
  out.spread_kw = r.trace_spread_kw.empty() ? 0.0 : r.trace_spread_kw.back();
  out.true_objective = fitness.true_objective(r.best);
  out.penalized_objective = r.best_fitness;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    out.trace.push_back(
        {out.method, k + 1, r.trace_mean_kw[k], r.trace_spread_kw[k], r.trace[k]});
  }
  return out;
}

}  // namespace

Comparison compare_methods(const Fleet& fleet, const CostModel& costs, OptimizationParams dwoa,
                           std::size_t population, std::size_t k_max,
                           const PenaltyConfig& penalty, std::uint64_t seed) {
  const PenaltyFitness fitness = PenaltyFitness::for_fleet(fleet, costs, penalty);
  const Box box = fitness.box();
  auto consensus = [&](double rate) { return fitness(std::vector<double>(box.dim, rate)); };

  Comparison out;
  out.oracle = fleet_grid_oracle(fleet, costs);

  dwoa.k_max = k_max;
  const OptimizationResult d = run_optimization(fleet, costs, dwoa, seed);
  out.dwoa.method = "dwoa";
  out.dwoa.mean_rate_kw = d.best_rate_kw;
  out.dwoa.true_objective = consensus(d.best_rate_kw);
  out.dwoa.penalized_objective = out.dwoa.true_objective;
  for (const auto& row : d.record.iterations) {
    out.dwoa.trace.push_back({"dwoa", row.k, row.best_rate_kw, 0.0, consensus(row.best_rate_kw)});
  }

  const Objective objective = [&](std::span<const double> x) { return fitness(x); };
  out.cwoa = baseline_outcome(
      "cwoa", cwoa_solve(box, objective, population, k_max, derive_seed(seed, 0xC30A)), fitness);
  out.gwo = baseline_outcome(
      "gwo", gwo_solve(box, objective, population, k_max, derive_seed(seed, 0x6320)), fitness);
  return out;
}

}  // namespace v2g
