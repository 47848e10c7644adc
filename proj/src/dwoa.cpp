#include "v2g/dwoa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "v2g/errors.hpp"

namespace v2g {

double alpha_schedule(std::size_t k, std::size_t k_max) {
  if (k_max == 0) throw DomainError("alpha_schedule: k_max must be >= 1");
  if (k > k_max) throw DomainError("alpha_schedule: k exceeds k_max");
  return 2.0 * (1.0 - static_cast<double>(k) / static_cast<double>(k_max));
}

double clamp_to_bounds(double rate, double lower, double upper) {
  if (lower > upper) throw DomainError("clamp_to_bounds: lower > upper");
  return std::min(std::max(rate, lower), upper);
}

WoaCoefficients WoaCoefficients::from(double alpha, double r, double l, double p_rand) {
  WoaCoefficients co;
  co.alpha = alpha;
  co.r = r;
  co.a = 2.0 * alpha * r - alpha;
  co.c = 2.0 * r;
  co.l = l;
  co.p_rand = p_rand;
  return co;
}

WoaCoefficients WoaCoefficients::draw(double alpha, Rng& rng) {
  const double r = rng.uniform();
  const double l = rng.uniform(-1.0, 1.0);
  const double p = rng.uniform();
  return from(alpha, r, l, p);
}

WhaleMove select_move(const WoaCoefficients& co) {
  if (co.p_rand >= 0.5) return WhaleMove::spiral;
  return std::fabs(co.a) < 1.0 ? WhaleMove::encircle : WhaleMove::search;
}

WhalePool WhalePool::initialize(std::size_t whales, double lower, double upper,
                                std::size_t k_max, Rng& rng) {
  if (whales == 0) throw DomainError("WhalePool: at least one whale required");
  if (lower > upper) throw DomainError("WhalePool: lower > upper");
  WhalePool pool;
  pool.lower = lower;
  pool.upper = upper;
  pool.k_max = k_max;
  pool.positions.reserve(whales);
  for (std::size_t h = 0; h < whales; ++h) pool.positions.push_back(rng.uniform(lower, upper));
  return pool;
}

void WhalePool::record_selection(std::size_t index, FixedCost total) {
  if (index >= positions.size()) throw DomainError("WhalePool: selected index out of range");
  selected_index = index;
  if (!leader_rate || total < leader_total) {
    leader_rate = positions[index];
    leader_total = total;
  }
}

double update_position(std::size_t h, const WhalePool& pool, const WoaCoefficients& co,
                       std::size_t random_index) {
  if (h >= pool.size() || random_index >= pool.size()) {
    throw DomainError("update_position: whale index out of range");
  }
  if (!pool.leader_rate) throw DomainError("update_position: pool has no leader yet");
  const double leader = *pool.leader_rate;
  const double current = pool.positions[h];

  double next = current;
  switch (select_move(co)) {
    case WhaleMove::encircle:
      next = leader - co.a * std::fabs(co.c * leader - current);
      break;
    case WhaleMove::search: {
      const double other = pool.positions[random_index];
      next = other - co.a * std::fabs(co.c * other - current);
      break;
    }
    case WhaleMove::spiral: {
      const double distance = std::fabs(leader - current);
      next = distance * std::exp(co.l) * std::cos(2.0 * std::numbers::pi * co.l) + leader;
      break;
    }
  }
  return clamp_to_bounds(next, pool.lower, pool.upper);
}

double update_position(std::size_t h, const WhalePool& pool, const WoaCoefficients& co,
                       Rng& rng) {
  const std::size_t other = select_move(co) == WhaleMove::search ? rng.index(pool.size()) : h;
  return update_position(h, pool, co, other);
}

void advance(WhalePool& pool, Rng& rng) {
  if (pool.finished()) throw DomainError("advance: pool already at k_max");
  const double alpha = alpha_schedule(pool.k, pool.k_max);
  std::vector<double> next(pool.size());
  for (std::size_t h = 0; h < pool.size(); ++h) {
    const auto co = WoaCoefficients::draw(alpha, rng);
    next[h] = update_position(h, pool, co, rng);
  }
  pool.positions = std::move(next);
  ++pool.k;
}

}  // namespace v2g
