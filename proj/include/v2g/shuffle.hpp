#pragma once

#include <functional>
#include <map>
#include <vector>

#include "v2g/fixed_cost.hpp"
#include "v2g/fleet.hpp"
#include "v2g/rng.hpp"
#include "v2g/topology.hpp"

namespace v2g {

/// One (candidate rate, cost) pair. `index` is the candidate's position in
/// the ECN broadcast sequence.
struct CandidateMapping {
  std::size_t index = 0;
  double rate = 0.0;
  FixedCost value;
};

struct SplitShares {
  FixedCost keep;
  FixedCost send;
};

/// keep = round(keep_fraction * value), send = value - keep. The shares sum
/// back to `value` exactly. keep_fraction == 1 gives (value, 0).
SplitShares split_value(FixedCost value, double keep_fraction);

/// Same, with keep_fraction drawn uniformly from `fraction`.
SplitShares split_value(FixedCost value, Rng& rng, Range fraction = {0.0, 1.0});

/// Every agent's mappings for the current broadcast, keyed by agent.
using Holdings = std::map<AgentId, std::vector<CandidateMapping>>;

/// Chooses the split of one agent's mapping.
using SplitFn = std::function<SplitShares(AgentId, const CandidateMapping&)>;

/// Random splitter drawing keep fractions from `fraction`.
SplitFn random_splitter(Rng& rng, Range fraction = {0.0, 1.0});

struct AuditEntry {
  AgentId agent;
  std::size_t index = 0;
  FixedCost original;
  FixedCost masked;
};

struct ShuffleOutcome {
  Holdings masked;
  std::size_t messages_sent = 0;
  std::size_t messages_delivered = 0;
  std::vector<AuditEntry> audit;  ///< filled only when requested
};

struct ShuffleOptions {
  LinkModel link;
  bool audit = false;
};

/// Additive split, one-copy exchange and local aggregation.
///
/// Phase 1: every agent splits each of its M mappings and sends the "send"
/// shares, as one envelope, to one of its out-neighbours (chosen with
/// `route_rng` when it has several). Phase 2: after delivery every agent
/// adds the received shares to its kept shares. With a lossless link the
/// per-candidate sum over all agents is unchanged.
///
/// Throws ProtocolError if agents hold different broadcast sequences or a
/// received envelope does not match the receiver's keys.
ShuffleOutcome shuffle_round(const Holdings& holdings, const NeighborMap& topology,
                             const SplitFn& split, Rng& route_rng,
                             const ShuffleOptions& options = {});

/// True when the masked value differs from the agent's true value.
bool masking_check(const CandidateMapping& original, const CandidateMapping& masked);

/// Sum over agents of each candidate's value, in candidate order. Throws
/// ProtocolError if any agent's sequence is incomplete or inconsistent.
std::vector<FixedCost> candidate_totals(const Holdings& holdings);

}  // namespace v2g
