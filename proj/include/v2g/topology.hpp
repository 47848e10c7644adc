#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "v2g/errors.hpp"
#include "v2g/rng.hpp"

namespace v2g {

enum class AgentKind { ev, aggregator, ecn };

struct AgentId {
  AgentKind kind = AgentKind::ev;
  std::size_t index = 0;

  static constexpr AgentId ev(std::size_t i) { return {AgentKind::ev, i}; }
  static constexpr AgentId aggregator() { return {AgentKind::aggregator, 0}; }
  static constexpr AgentId ecn() { return {AgentKind::ecn, 0}; }

  constexpr auto operator<=>(const AgentId&) const = default;
};

/// "ev:12", "aggregator", "ecn".
std::string to_string(AgentId id);
/// Inverse of to_string. Throws TopologyError on malformed text.
AgentId parse_agent_id(const std::string& text);

enum class TopologyPolicy { one_random_neighbor, ring, custom };

struct Edge {
  AgentId from;
  AgentId to;
};

/// Out-neighbour sets of the EVs and the aggregator. The ECN has no
/// out-edges; it only receives.
struct NeighborMap {
  std::map<AgentId, std::vector<AgentId>> out_edges;

  const std::vector<AgentId>& neighbors(AgentId agent) const;
  std::vector<Edge> edges() const;
};

/// Builds the sharing graph over the available EVs plus the aggregator.
///
///  - one_random_neighbor: every EV picks one target uniformly among the
///    other available EVs and the aggregator; the aggregator picks one
///    available EV.
///  - ring: EVs in ascending id order each point at the next, the last at
///    the aggregator, and the aggregator at the first EV.
///  - custom: `custom_edges`, restricted to available agents; every agent
///    must keep at least one out-edge.
///
/// Throws TopologyError when no EV is available (the aggregator would have
/// no valid target) or a custom graph leaves an agent without out-edges.
NeighborMap build_topology(std::span<const std::size_t> available, TopologyPolicy policy,
                           Rng& rng, std::span<const Edge> custom_edges = {});

/// Drops edges to agents no longer present and reassigns each orphaned
/// agent uniformly among the remaining valid targets.
NeighborMap reroute(const NeighborMap& map, std::span<const std::size_t> available, Rng& rng);

/// "from,to" rows with a header.
void write_edges_csv(std::ostream& out, const NeighborMap& map);

/// Lossless by default; a positive drop probability discards envelopes
/// independently (shares are then lost and totals no longer conserved).
struct LinkModel {
  double drop_probability = 0.0;
};

template <class Payload>
struct Envelope {
  AgentId from;
  AgentId to;
  Payload payload;
};

template <class Payload>
using Inboxes = std::map<AgentId, std::vector<Envelope<Payload>>>;

template <class Payload>
struct DeliveryReport {
  Inboxes<Payload> inboxes;
  std::size_t sent = 0;
  std::size_t delivered = 0;
  std::size_t dropped = 0;
};

/// One synchronous round: every envelope is routed before any inbox is
/// read. Each agent in `agents` gets an inbox (possibly empty). Inboxes are
/// ordered by sender, and each sender's envelopes keep their send order, so
/// the result does not depend on the order envelopes were queued in.
/// Throws RoutingError on a target outside `agents`.
template <class Payload>
DeliveryReport<Payload> deliver_round(std::vector<Envelope<Payload>> envelopes,
                                      std::span<const AgentId> agents, const LinkModel& link = {},
                                      Rng* rng = nullptr) {
  DeliveryReport<Payload> report;
  for (AgentId a : agents) report.inboxes[a];
  report.sent = envelopes.size();
  for (auto& env : envelopes) {
    auto it = report.inboxes.find(env.to);
    if (it == report.inboxes.end()) {
      throw RoutingError("deliver_round: unknown target " + to_string(env.to));
    }
    if (link.drop_probability > 0.0) {
      if (rng == nullptr) throw RoutingError("deliver_round: lossy link needs an Rng");
      if (rng->uniform() < link.drop_probability) {
        ++report.dropped;
        continue;
      }
    }
    it->second.push_back(std::move(env));
    ++report.delivered;
  }
  for (auto& [agent, inbox] : report.inboxes) {
    std::stable_sort(inbox.begin(), inbox.end(),
                     [](const auto& a, const auto& b) { return a.from < b.from; });
  }
  return report;
}

}  // namespace v2g
