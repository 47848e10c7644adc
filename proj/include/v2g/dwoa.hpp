#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "v2g/fixed_cost.hpp"
#include "v2g/rng.hpp"

namespace v2g {

/// 2 * (1 - k / k_max). Throws DomainError if k > k_max or k_max == 0.
double alpha_schedule(std::size_t k, std::size_t k_max);

/// min(max(rate, lower), upper). Throws DomainError if lower > upper.
double clamp_to_bounds(double rate, double lower, double upper);

/// Random coefficients for one whale at one iteration. A and C share the
/// same r.
struct WoaCoefficients {
  double alpha = 0.0;
  double a = 0.0;       ///< 2*alpha*r - alpha
  double c = 0.0;       ///< 2*r
  double l = 0.0;       ///< spiral parameter in [-1, 1]
  double p_rand = 0.0;  ///< branch selector in [0, 1]
  double r = 0.0;

  static WoaCoefficients from(double alpha, double r, double l, double p_rand);
  /// Draws r, l, p_rand in that order.
  static WoaCoefficients draw(double alpha, Rng& rng);
};

enum class WhaleMove { encircle, search, spiral };

/// p_rand < 0.5 picks encircle (|A| < 1) or search (|A| >= 1); otherwise spiral.
WhaleMove select_move(const WoaCoefficients& co);

/// The ECN-side candidate pool. One pool serves every EV: the broadcast makes
/// all EVs' sequences identical, so the per-EV index is notation only.
struct WhalePool {
  std::vector<double> positions;  ///< kW, within [lower, upper]
  double lower = 0.0;
  double upper = 0.0;
  std::size_t k = 0;
  std::size_t k_max = 0;

  /// Index the ECN selected in the latest evaluation round.
  std::size_t selected_index = 0;
  /// Best candidate ever evaluated. The whales are steered towards this
  /// leader; it is also the reported answer.
  std::optional<double> leader_rate;
  FixedCost leader_total;

  /// M positions uniform on [lower, upper].
  static WhalePool initialize(std::size_t whales, double lower, double upper,
                              std::size_t k_max, Rng& rng);

  std::size_t size() const { return positions.size(); }
  bool finished() const { return k >= k_max; }

  /// Records the ECN's pick for the current positions. The leader changes
  /// only on a strictly lower total (first-evaluated wins ties).
  void record_selection(std::size_t index, FixedCost total);
};

/// New position of whale h, clamped to the pool bounds. `random_index` is
/// the whale h~ consulted by the search branch (ignored otherwise).
/// Requires a leader.
double update_position(std::size_t h, const WhalePool& pool, const WoaCoefficients& co,
                       std::size_t random_index);

/// As above; h~ is drawn from `rng` only when the search branch applies.
double update_position(std::size_t h, const WhalePool& pool, const WoaCoefficients& co,
                       Rng& rng);

/// One iteration over h = 0..M-1: every whale reads the positions as they
/// were at the start of the iteration. Increments k. Throws DomainError if
/// the pool is finished or has no leader.
void advance(WhalePool& pool, Rng& rng);

}  // namespace v2g
