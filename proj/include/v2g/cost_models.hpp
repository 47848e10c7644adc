#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "v2g/range.hpp"

namespace v2g {

/// Coefficients of one EV's net cost: quadratic degradation, lumped
/// operational cost and the unit price paid for V2G power.
struct EvCostParams {
  double alpha_deg = 0.0015;  ///< cost/kW^2, strictly positive
  double beta_deg = 0.005;    ///< cost/kW
  double gamma_deg = 0.02;    ///< cost
  double other_ops = 0.01;    ///< lumped o_i, >= 0
  double price = 0.02;        ///< unit price p, >= 0

  /// Throws DomainError if alpha_deg <= 0, other_ops < 0 or price < 0.
  void validate() const;
};

/// Aggregator net cost: quadratic generation cost on efficiency-scaled power
/// minus logarithmic utility on raw power.
struct AggCostParams {
  double gen_a = 2e-6;
  double gen_b = 0.0;
  double gen_c = 0.5;
  double omega = 0.07;
  std::vector<double> eta;  ///< one DC->AC efficiency per EV, each in (0, 1]

  void validate() const;
};

/// alpha*r^2 + beta*r + gamma + o - p*r. Throws DomainError for rate < 0.
double ev_net_cost(double rate, const EvCostParams& params);

/// a*(sum eta_i r_i)^2 + b*(sum eta_i r_i) + c - omega*ln(sum r_i + 1).
/// The utility term sums raw rates, the generation term efficiency-scaled
/// ones. Throws DomainError on length mismatch or a negative rate.
double agg_net_cost(std::span<const double> rates, const AggCostParams& params);

/// Thread-safe evaluation counter shared by the oracle wrappers.
class CallCounter {
 public:
  CallCounter() = default;
  CallCounter(const CallCounter& other) : calls_(other.count()) {}
  CallCounter& operator=(const CallCounter& other) {
    calls_.store(other.count(), std::memory_order_relaxed);
    return *this;
  }

  void bump() { calls_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t count() const { return calls_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> calls_{0};
};

/// Evaluate-only view of an EV's private cost function. Coefficients cannot
/// be read back; every evaluation is counted.
class EvCostOracle {
 public:
  explicit EvCostOracle(EvCostParams params);

  double evaluate(double rate);
  std::uint64_t call_count() const { return counter_.count(); }

 private:
  EvCostParams params_;
  CallCounter counter_;
};

/// Evaluate-only view of the aggregator's private cost function.
class AggCostOracle {
 public:
  explicit AggCostOracle(AggCostParams params);

  double evaluate(std::span<const double> rates);
  std::size_t fleet_size() const { return params_.eta.size(); }
  std::uint64_t call_count() const { return counter_.count(); }

 private:
  AggCostParams params_;
  CallCounter counter_;
};

/// Coefficient distributions of a scenario. Per-EV coefficients are drawn
/// uniformly from the ranges; the aggregator's are fixed. The defaults put
/// the consensus optimum of a 100-EV default fleet near 4.4 kW, inside the
/// [0, 6.6] kW rate box, and move it up when the fleet halves.
struct CostConfig {
  Range alpha{0.001, 0.002};
  Range beta{0.004, 0.006};
  Range gamma{0.01, 0.03};
  Range other{0.005, 0.015};
  double price = 0.02;
  double gen_a = 2e-6;
  double gen_b = 0.0;
  double gen_c = 0.5;
  double omega = 0.07;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Private cost coefficients of every EV in a fleet (indexed by EV id) and
/// of the aggregator. `aggregator.eta` has one entry per EV.
struct CostModel {
  std::vector<EvCostParams> evs;
  AggCostParams aggregator;
};

/// Draws one EvCostParams per efficiency in `eta`. Deterministic per seed.
CostModel sample_cost_model(std::span<const double> eta, const CostConfig& config,
                            std::uint64_t seed);

}  // namespace v2g
