#include "v2g/shuffle.hpp"

#include <cmath>

#include "v2g/errors.hpp"

namespace v2g {

SplitShares split_value(FixedCost value, double keep_fraction) {
  if (!(keep_fraction >= 0.0 && keep_fraction <= 1.0)) {
    throw DomainError("split_value: keep fraction outside [0, 1]");
  }
  const auto keep_ticks =
      static_cast<std::int64_t>(std::llround(keep_fraction * static_cast<double>(value.ticks())));
  const FixedCost keep = FixedCost::from_ticks(keep_ticks);
  return {keep, value - keep};
}

SplitShares split_value(FixedCost value, Rng& rng, Range fraction) {
  return split_value(value, rng.uniform(fraction.lo, fraction.hi));
}

SplitFn random_splitter(Rng& rng, Range fraction) {
  if (fraction.lo > fraction.hi || fraction.lo < 0.0 || fraction.hi > 1.0) {
    throw DomainError("random_splitter: fraction range must be ordered within [0, 1]");
  }
  return [&rng, fraction](AgentId, const CandidateMapping& m) {
    return split_value(m.value, rng, fraction);
  };
}

namespace {

using Shares = std::vector<CandidateMapping>;

bool same_keys(const std::vector<CandidateMapping>& a, const std::vector<CandidateMapping>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (a[h].index != b[h].index || a[h].rate != b[h].rate) return false;
  }
  return true;
}

void check_sequence(AgentId agent, const std::vector<CandidateMapping>& seq) {
  for (std::size_t h = 0; h < seq.size(); ++h) {
    if (seq[h].index != h) {
      throw ProtocolError("agent " + to_string(agent) + " holds candidate " +
                          std::to_string(seq[h].index) + " at position " + std::to_string(h));
    }
  }
}

}  // namespace

ShuffleOutcome shuffle_round(const Holdings& holdings, const NeighborMap& topology,
                             const SplitFn& split, Rng& route_rng,
                             const ShuffleOptions& options) {
  ShuffleOutcome out;
  if (holdings.empty()) return out;

  const auto& reference = holdings.begin()->second;
  std::vector<AgentId> agents;
  for (const auto& [agent, seq] : holdings) {
    check_sequence(agent, seq);
    if (!same_keys(seq, reference)) {
      throw ProtocolError("agent " + to_string(agent) + " holds a different broadcast sequence");
    }
    agents.push_back(agent);
  }

  // Phase 1: split everything, queue the outgoing shares.
  std::vector<Envelope<Shares>> envelopes;
  for (const auto& [agent, seq] : holdings) {
    const auto& targets = topology.neighbors(agent);
    if (targets.empty()) throw TopologyError(to_string(agent) + " has no neighbour");
    const AgentId target =
        targets.size() == 1 ? targets.front() : targets[route_rng.index(targets.size())];

    Shares kept;
    Shares sent;
    kept.reserve(seq.size());
    sent.reserve(seq.size());
    for (const auto& m : seq) {
      const SplitShares s = split(agent, m);
      if (s.keep + s.send != m.value) {
        throw ProtocolError("split of " + to_string(agent) + " does not sum to its value");
      }
      kept.push_back({m.index, m.rate, s.keep});
      sent.push_back({m.index, m.rate, s.send});
    }
    out.masked[agent] = std::move(kept);
    envelopes.push_back({agent, target, std::move(sent)});
  }

  // Phase 2: deliver, then aggregate.
  auto report = deliver_round(std::move(envelopes), agents, options.link, &route_rng);
  out.messages_sent = report.sent;
  out.messages_delivered = report.delivered;
  for (auto& [agent, inbox] : report.inboxes) {
    auto& mine = out.masked.at(agent);
    for (const auto& env : inbox) {
      if (!same_keys(env.payload, mine)) {
        throw ProtocolError("share from " + to_string(env.from) + " to " + to_string(agent) +
                            " does not match the receiver's candidates");
      }
      for (std::size_t h = 0; h < mine.size(); ++h) mine[h].value += env.payload[h].value;
    }
  }

  if (options.audit) {
    for (const auto& [agent, seq] : holdings) {
      const auto& masked = out.masked.at(agent);
      for (std::size_t h = 0; h < seq.size(); ++h) {
        out.audit.push_back({agent, h, seq[h].value, masked[h].value});
      }
    }
  }
  return out;
}

bool masking_check(const CandidateMapping& original, const CandidateMapping& masked) {
  return original.value != masked.value;
}

std::vector<FixedCost> candidate_totals(const Holdings& holdings) {
  if (holdings.empty()) throw ProtocolError("candidate_totals: no agent reported");
  const auto& reference = holdings.begin()->second;
  if (reference.empty()) throw ProtocolError("candidate_totals: empty candidate sequence");
  std::vector<FixedCost> totals(reference.size());
  for (const auto& [agent, seq] : holdings) {
    check_sequence(agent, seq);
    if (!same_keys(seq, reference)) {
      throw ProtocolError("candidate_totals: incomplete or mismatched report from " +
                          to_string(agent));
    }
    for (std::size_t h = 0; h < seq.size(); ++h) totals[h] += seq[h].value;
  }
  return totals;
}

}  // namespace v2g
