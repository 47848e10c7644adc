#pragma once

#include <stdexcept>
#include <string>

namespace v2g {

/// Argument outside the mathematical domain of an operation (negative rate,
/// length mismatch, k beyond k_max, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or unreadable scenario configuration. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shuffle/aggregation round saw inconsistent candidate keys or an agent
/// that failed to report.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Envelope addressed to an agent that does not exist in the round.
class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace v2g
