#include "v2g/topology.hpp"

#include <ostream>

namespace v2g {

std::string to_string(AgentId id) {
  switch (id.kind) {
    case AgentKind::ev:
      return "ev:" + std::to_string(id.index);
    case AgentKind::aggregator:
      return "aggregator";
    case AgentKind::ecn:
      return "ecn";
  }
  return "?";
}

AgentId parse_agent_id(const std::string& text) {
  if (text == "aggregator") return AgentId::aggregator();
  if (text == "ecn") return AgentId::ecn();
  if (text.rfind("ev:", 0) == 0 && text.size() > 3) {
    std::size_t used = 0;
    try {
      const unsigned long long v = std::stoull(text.substr(3), &used);
      if (used == text.size() - 3) return AgentId::ev(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  throw TopologyError("malformed agent id '" + text + "'");
}

const std::vector<AgentId>& NeighborMap::neighbors(AgentId agent) const {
  auto it = out_edges.find(agent);
  if (it == out_edges.end()) throw TopologyError("no out-edges for " + to_string(agent));
  return it->second;
}

std::vector<Edge> NeighborMap::edges() const {
  std::vector<Edge> out;
  for (const auto& [from, targets] : out_edges) {
    for (AgentId to : targets) out.push_back({from, to});
  }
  return out;
}

namespace {

/// Valid targets for `agent`: the aggregator and every other available EV
/// for an EV; every available EV for the aggregator.
std::vector<AgentId> valid_targets(AgentId agent, std::span<const std::size_t> available) {
  std::vector<AgentId> targets;
  for (std::size_t id : available) {
    if (!(agent.kind == AgentKind::ev && agent.index == id)) targets.push_back(AgentId::ev(id));
  }
  if (agent.kind == AgentKind::ev) targets.push_back(AgentId::aggregator());
  return targets;
}

std::set<AgentId> participants(std::span<const std::size_t> available) {
  std::set<AgentId> out{AgentId::aggregator()};
  for (std::size_t id : available) out.insert(AgentId::ev(id));
  return out;
}

}  // namespace

NeighborMap build_topology(std::span<const std::size_t> available, TopologyPolicy policy,
                           Rng& rng, std::span<const Edge> custom_edges) {
  if (available.empty()) {
    throw TopologyError("build_topology: no available EV, aggregator has no valid target");
  }
  std::vector<std::size_t> ids(available.begin(), available.end());
  std::sort(ids.begin(), ids.end());
  NeighborMap map;

  switch (policy) {
    case TopologyPolicy::one_random_neighbor: {
      for (std::size_t id : ids) {
        const auto targets = valid_targets(AgentId::ev(id), ids);
        map.out_edges[AgentId::ev(id)] = {targets[rng.index(targets.size())]};
      }
      const auto targets = valid_targets(AgentId::aggregator(), ids);
      map.out_edges[AgentId::aggregator()] = {targets[rng.index(targets.size())]};
      break;
    }
    case TopologyPolicy::ring: {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        map.out_edges[AgentId::ev(ids[i])] = {
            i + 1 < ids.size() ? AgentId::ev(ids[i + 1]) : AgentId::aggregator()};
      }
      map.out_edges[AgentId::aggregator()] = {AgentId::ev(ids.front())};
      break;
    }
    case TopologyPolicy::custom: {
      const auto present = participants(ids);
      for (const auto& e : custom_edges) {
        if (e.from == e.to) throw TopologyError("custom topology: self loop at " + to_string(e.from));
        if (e.from.kind == AgentKind::ecn || e.to.kind == AgentKind::ecn) {
          throw TopologyError("custom topology: the ECN does not take part in sharing");
        }
        if (present.count(e.from) && present.count(e.to)) map.out_edges[e.from].push_back(e.to);
      }
      for (AgentId a : present) {
        if (map.out_edges[a].empty()) {
          throw TopologyError("custom topology: " + to_string(a) + " has no out-edge");
        }
      }
      break;
    }
  }
  return map;
}

NeighborMap reroute(const NeighborMap& map, std::span<const std::size_t> available, Rng& rng) {
  if (available.empty()) throw TopologyError("reroute: no available EV");
  std::vector<std::size_t> ids(available.begin(), available.end());
  std::sort(ids.begin(), ids.end());
  const auto present = participants(ids);

  NeighborMap next;
  for (AgentId agent : present) {
    std::vector<AgentId> kept;
    if (auto it = map.out_edges.find(agent); it != map.out_edges.end()) {
      for (AgentId to : it->second) {
        if (present.count(to) && to != agent) kept.push_back(to);
      }
    }
    if (kept.empty()) {
      const auto targets = valid_targets(agent, ids);
      kept.push_back(targets[rng.index(targets.size())]);
    }
    next.out_edges[agent] = std::move(kept);
  }
  return next;
}

void write_edges_csv(std::ostream& out, const NeighborMap& map) {
  out << "from,to\n";
  for (const auto& e : map.edges()) out << to_string(e.from) << ',' << to_string(e.to) << '\n';
}

}  // namespace v2g
