#include <doctest.h>

#include <cmath>
#include <numbers>

#include "v2g/dwoa.hpp"
#include "v2g/errors.hpp"

using namespace v2g;

TEST_CASE("alpha schedule") {
  CHECK(alpha_schedule(0, 100) == 2.0);
  CHECK(alpha_schedule(100, 100) == 0.0);
  CHECK(alpha_schedule(50, 100) == 1.0);
  CHECK_THROWS_AS(alpha_schedule(101, 100), DomainError);
  CHECK_THROWS_AS(alpha_schedule(0, 0), DomainError);
}

TEST_CASE("clamp to bounds") {
  CHECK(clamp_to_bounds(7.1, 0.0, 6.6) == 6.6);
  CHECK(clamp_to_bounds(-0.3, 0.0, 6.6) == 0.0);
  CHECK(clamp_to_bounds(3.3, 0.0, 6.6) == 3.3);
  CHECK_THROWS_AS(clamp_to_bounds(1.0, 2.0, 1.0), DomainError);
}

namespace {

WhalePool pool_of(std::vector<double> positions, double leader) {
  WhalePool p;
  p.positions = std::move(positions);
  p.lower = 0.0;
  p.upper = 6.6;
  p.k_max = 10;
  p.leader_rate = leader;
  return p;
}

// Scalar restatement of the three moves, kept apart from the library code.
double reference_move(double x, double best, double other, double alpha, double r, double l,
                      double p) {
  const double a = 2 * alpha * r - alpha;
  const double c = 2 * r;
  double next;
  if (p < 0.5) {
    const double anchor = std::fabs(a) < 1 ? best : other;
    next = anchor - a * std::fabs(c * anchor - x);
  } else {
    next = std::fabs(best - x) * std::exp(l) * std::cos(2 * std::numbers::pi * l) + best;
  }
  return std::min(6.6, std::max(0.0, next));
}

}  // namespace

TEST_CASE("coefficients and branch selection") {
  const auto co = WoaCoefficients::from(2.0, 0.5, 0.0, 0.1);
  CHECK(co.a == 0.0);
  CHECK(co.c == 1.0);
  CHECK(select_move(co) == WhaleMove::encircle);
  CHECK(select_move(WoaCoefficients::from(2.0, 1.0, 0.0, 0.1)) == WhaleMove::search);
  CHECK(select_move(WoaCoefficients::from(2.0, 0.5, 0.0, 0.5)) == WhaleMove::spiral);

  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto d = WoaCoefficients::draw(1.3, rng);
    CHECK(d.l >= -1.0);
    CHECK(d.l <= 1.0);
    CHECK(d.p_rand >= 0.0);
    CHECK(d.p_rand < 1.0);
    CHECK(std::fabs(d.a) <= 1.3);
  }
}

TEST_CASE("encircle with A = 0 lands on the leader") {
  const WhalePool p = pool_of({1.0, 5.0}, 3.0);
  const auto co = WoaCoefficients::from(2.0, 0.5, 0.3, 0.2);
  CHECK(update_position(0, p, co, 1) == 3.0);
  CHECK(update_position(1, p, co, 0) == 3.0);
}

TEST_CASE("spiral from the leader stays on it") {
  const WhalePool p = pool_of({3.0}, 3.0);
  const auto co = WoaCoefficients::from(1.0, 0.3, -0.7, 0.9);
  CHECK(update_position(0, p, co, 0) == 3.0);
}

TEST_CASE("update matches a scalar restatement on random draws") {
  Rng rng(123);
  for (int i = 0; i < 100; ++i) {
    const WhalePool p =
        pool_of({rng.uniform(0, 6.6), rng.uniform(0, 6.6), rng.uniform(0, 6.6)}, rng.uniform(0, 6.6));
    const double alpha = rng.uniform(0.0, 2.0);
    const double r = rng.uniform();
    const double l = rng.uniform(-1.0, 1.0);
    const double prand = rng.uniform();
    const std::size_t other = rng.index(3);
    const auto co = WoaCoefficients::from(alpha, r, l, prand);
    const double got = update_position(0, p, co, other);
    const double want =
        reference_move(p.positions[0], *p.leader_rate, p.positions[other], alpha, r, l, prand);
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
  }

  // Search branch with hand-picked values: A = 2*2*1 - 2 = 2, C = 2.
  const WhalePool p = pool_of({1.0, 2.0}, 4.0);
  const auto co = WoaCoefficients::from(2.0, 1.0, 0.0, 0.0);
  REQUIRE(select_move(co) == WhaleMove::search);
  // 2 - 2*|2*2 - 1| = -4, clamped to 0.
  CHECK(update_position(0, p, co, 1) == 0.0);
  // 1 - 2*|2*1 - 2| = 1.
  CHECK(update_position(1, p, co, 0) == 1.0);
}

TEST_CASE("pool bookkeeping") {
  Rng rng(1);
  WhalePool p = WhalePool::initialize(5, 0.0, 6.6, 3, rng);
  CHECK(p.size() == 5);
  for (double x : p.positions) {
    CHECK(x >= 0.0);
    CHECK(x <= 6.6);
  }
  CHECK_THROWS_AS(advance(p, rng), DomainError);  // no leader yet

  p.record_selection(2, FixedCost::from_units(3));
  CHECK(*p.leader_rate == p.positions[2]);
  const double first = *p.leader_rate;
  p.record_selection(4, FixedCost::from_units(3));  // tie keeps the incumbent
  CHECK(*p.leader_rate == first);
  p.record_selection(1, FixedCost::from_units(2));
  CHECK(*p.leader_rate == p.positions[1]);

  for (int i = 0; i < 3; ++i) advance(p, rng);
  CHECK(p.finished());
  CHECK(p.k == 3);
  CHECK_THROWS_AS(advance(p, rng), DomainError);
  for (double x : p.positions) {
    CHECK(x >= 0.0);
    CHECK(x <= 6.6);
  }
}
