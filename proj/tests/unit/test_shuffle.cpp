#include <doctest.h>

#include <numeric>

#include "v2g/errors.hpp"
#include "v2g/shuffle.hpp"

using namespace v2g;

namespace {

FixedCost units(std::int64_t v) { return FixedCost::from_units(v); }

// EV i = ev:0 and EV j = ev:1, neighbours of each other.
NeighborMap pair_topology() {
  NeighborMap m;
  m.out_edges[AgentId::ev(0)] = {AgentId::ev(1)};
  m.out_edges[AgentId::ev(1)] = {AgentId::ev(0)};
  return m;
}

Holdings worked_example() {
  Holdings h;
  h[AgentId::ev(0)] = {{0, 1.0, units(5)}, {1, 2.0, units(10)}};
  h[AgentId::ev(1)] = {{0, 1.0, units(7)}, {1, 2.0, units(20)}};
  return h;
}

}  // namespace

TEST_CASE("fixed-fraction split") {
  const SplitShares s = split_value(units(5), 0.4);
  CHECK(s.keep == units(2));
  CHECK(s.send == units(3));
  const SplitShares id = split_value(units(5), 1.0);
  CHECK(id.keep == units(5));
  CHECK(id.send == FixedCost{});
  CHECK_THROWS_AS(split_value(units(5), 1.5), DomainError);
}

TEST_CASE("random splits sum back exactly") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const FixedCost v = FixedCost::from_double(rng.uniform(-5.0, 5.0));
    const SplitShares s = split_value(v, rng);
    CHECK((s.keep + s.send - v).ticks() == 0);
  }
}

TEST_CASE("worked example under forced splits") {
  // keep shares: i keeps 2 of 5 and 7 of 10; j keeps 2 of 7 and 5 of 20.
  const SplitFn forced = [](AgentId agent, const CandidateMapping& m) {
    const std::int64_t keep = agent == AgentId::ev(0) ? (m.index == 0 ? 2 : 7)
                                                      : (m.index == 0 ? 2 : 5);
    return SplitShares{units(keep), m.value - units(keep)};
  };
  Rng route(1);
  const Holdings before = worked_example();
  ShuffleOptions opts;
  opts.audit = true;
  const ShuffleOutcome out = shuffle_round(before, pair_topology(), forced, route, opts);

  const auto& i = out.masked.at(AgentId::ev(0));
  const auto& j = out.masked.at(AgentId::ev(1));
  CHECK(i[0].value == units(7));
  CHECK(i[1].value == units(22));
  CHECK(j[0].value == units(5));
  CHECK(j[1].value == units(8));
  CHECK(i[0].rate == 1.0);
  CHECK(j[1].rate == 2.0);

  const auto pre = candidate_totals(before);
  const auto post = candidate_totals(out.masked);
  CHECK(pre[0] == units(12));
  CHECK(post[0] == units(12));
  CHECK(pre[1] == units(30));
  CHECK(post[1] == units(30));

  CHECK(masking_check(before.at(AgentId::ev(0))[0], i[0]));
  CHECK(out.messages_sent == 2);
  CHECK(out.messages_delivered == 2);
  CHECK(out.audit.size() == 4);
}

TEST_CASE("degenerate splits leave values unmasked") {
  const SplitFn keep_all = [](AgentId, const CandidateMapping& m) {
    return SplitShares{m.value, FixedCost{}};
  };
  Rng route(1);
  const Holdings before = worked_example();
  const ShuffleOutcome out = shuffle_round(before, pair_topology(), keep_all, route);
  for (const auto& [agent, seq] : before) {
    for (std::size_t h = 0; h < seq.size(); ++h) {
      CHECK(out.masked.at(agent)[h].value == seq[h].value);
      CHECK_FALSE(masking_check(seq[h], out.masked.at(agent)[h]));
    }
  }
}

TEST_CASE("random rounds conserve totals and mask nearly everything") {
  Rng rng(99);
  Rng topo_rng(5);
  std::vector<std::size_t> avail(20);
  std::iota(avail.begin(), avail.end(), 0);
  std::size_t values = 0;
  std::size_t unmasked = 0;
  for (int round = 0; round < 1000; ++round) {
    const NeighborMap topo = build_topology(avail, TopologyPolicy::one_random_neighbor, topo_rng);
    Holdings h;
    for (std::size_t id : avail) {
      for (std::size_t k = 0; k < 3; ++k) {
        h[AgentId::ev(id)].push_back(
            {k, static_cast<double>(k), FixedCost::from_double(rng.uniform(-1.0, 1.0))});
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      h[AgentId::aggregator()].push_back(
          {k, static_cast<double>(k), FixedCost::from_double(rng.uniform(0.0, 1.0))});
    }
    const SplitFn split = random_splitter(rng);
    const ShuffleOutcome out = shuffle_round(h, topo, split, rng);
    const auto pre = candidate_totals(h);
    const auto post = candidate_totals(out.masked);
    for (std::size_t k = 0; k < 3; ++k) CHECK((post[k] - pre[k]).ticks() == 0);
    for (const auto& [agent, seq] : h) {
      for (std::size_t k = 0; k < seq.size(); ++k) {
        ++values;
        if (!masking_check(seq[k], out.masked.at(agent)[k])) ++unmasked;
      }
    }
  }
  CHECK(static_cast<double>(unmasked) / static_cast<double>(values) < 1e-3);
}

TEST_CASE("protocol violations are rejected") {
  Holdings h = worked_example();
  h[AgentId::ev(1)].pop_back();
  Rng rng(1);
  const SplitFn split = random_splitter(rng);
  CHECK_THROWS_AS(shuffle_round(h, pair_topology(), split, rng), ProtocolError);
  CHECK_THROWS_AS(candidate_totals(h), ProtocolError);

  Holdings shifted = worked_example();
  shifted[AgentId::ev(1)][1].index = 5;
  CHECK_THROWS_AS(candidate_totals(shifted), ProtocolError);
}
