#include "v2g/cost_models.hpp"

#include <cmath>
#include <string>

#include "v2g/errors.hpp"
#include "v2g/rng.hpp"

namespace v2g {

void EvCostParams::validate() const {
  if (!(alpha_deg > 0.0)) throw DomainError("EvCostParams: alpha_deg must be > 0");
  if (other_ops < 0.0) throw DomainError("EvCostParams: other_ops must be >= 0");
  if (price < 0.0) throw DomainError("EvCostParams: price must be >= 0");
}

void AggCostParams::validate() const {
  if (!(gen_a > 0.0)) throw DomainError("AggCostParams: gen_a must be > 0");
  if (omega < 0.0) throw DomainError("AggCostParams: omega must be >= 0");
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!(eta[i] > 0.0 && eta[i] <= 1.0)) {
      throw DomainError("AggCostParams: eta[" + std::to_string(i) + "] outside (0, 1]");
    }
  }
}

double ev_net_cost(double rate, const EvCostParams& p) {
  if (rate < 0.0) throw DomainError("ev_net_cost: negative rate");
  const double degradation = p.alpha_deg * rate * rate + p.beta_deg * rate + p.gamma_deg;
  const double revenue = p.price * rate;
  return degradation + p.other_ops - revenue;
}

double agg_net_cost(std::span<const double> rates, const AggCostParams& p) {
  if (rates.size() != p.eta.size()) {
    throw DomainError("agg_net_cost: " + std::to_string(rates.size()) + " rates for " +
                      std::to_string(p.eta.size()) + " efficiencies");
  }
  double delivered = 0.0;
  double drawn = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 0.0) throw DomainError("agg_net_cost: negative rate");
    delivered += p.eta[i] * rates[i];
    drawn += rates[i];
  }
  const double generation = p.gen_a * delivered * delivered + p.gen_b * delivered + p.gen_c;
  const double utility = p.omega * std::log(drawn + 1.0);
  return generation - utility;
}

EvCostOracle::EvCostOracle(EvCostParams params) : params_(params) { params_.validate(); }

double EvCostOracle::evaluate(double rate) {
  counter_.bump();
  return ev_net_cost(rate, params_);
}

AggCostOracle::AggCostOracle(AggCostParams params) : params_(std::move(params)) {
  params_.validate();
}

double AggCostOracle::evaluate(std::span<const double> rates) {
  counter_.bump();
  return agg_net_cost(rates, params_);
}

namespace {

void check_range(const Range& r, const std::string& key) {
  if (r.lo > r.hi) throw ConfigError(key + ": lower bound exceeds upper bound");
}

}  // namespace

void CostConfig::validate() const {
  check_range(alpha, "cost.ev.alpha");
  check_range(beta, "cost.ev.beta");
  check_range(gamma, "cost.ev.gamma");
  check_range(other, "cost.ev.other");
  if (!(alpha.lo > 0.0)) throw ConfigError("cost.ev.alpha: must be > 0");
  if (other.lo < 0.0) throw ConfigError("cost.ev.other: must be >= 0");
  if (price < 0.0) throw ConfigError("cost.price: must be >= 0");
  if (!(gen_a > 0.0)) throw ConfigError("cost.aggregator.a: must be > 0");
  if (omega < 0.0) throw ConfigError("cost.aggregator.omega: must be >= 0");
}

CostModel sample_cost_model(std::span<const double> eta, const CostConfig& config,
                            std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  CostModel model;
  model.evs.reserve(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    EvCostParams p;
    p.alpha_deg = rng.uniform(config.alpha.lo, config.alpha.hi);
    p.beta_deg = rng.uniform(config.beta.lo, config.beta.hi);
    p.gamma_deg = rng.uniform(config.gamma.lo, config.gamma.hi);
    p.other_ops = rng.uniform(config.other.lo, config.other.hi);
    p.price = config.price;
    model.evs.push_back(p);
  }
  model.aggregator.gen_a = config.gen_a;
  model.aggregator.gen_b = config.gen_b;
  model.aggregator.gen_c = config.gen_c;
  model.aggregator.omega = config.omega;
  model.aggregator.eta.assign(eta.begin(), eta.end());
  model.aggregator.validate();
  return model;
}

}  // namespace v2g
