#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace v2g {

/// Cost value in fixed-point ticks (1 tick = 1e-12 cost units).
///
/// Every value that travels through the shuffle protocol is held in this
/// form. Integer addition is associative, so additive splits and the ECN's
/// per-candidate totals are exact regardless of the order agents are
/// processed in. Arithmetic throws DomainError on int64 overflow.
class FixedCost {
 public:
  static constexpr std::int64_t kTicksPerUnit = 1'000'000'000'000;

  constexpr FixedCost() = default;
  static constexpr FixedCost from_ticks(std::int64_t ticks) { return FixedCost(ticks); }
  static constexpr FixedCost from_units(std::int64_t units) {
    return FixedCost(units * kTicksPerUnit);
  }
  /// Rounds to the nearest tick.
  static FixedCost from_double(double value);

  constexpr std::int64_t ticks() const { return ticks_; }
  double to_double() const;

  FixedCost operator+(FixedCost other) const;
  FixedCost operator-(FixedCost other) const;
  FixedCost& operator+=(FixedCost other) { return *this = *this + other; }

  constexpr auto operator<=>(const FixedCost&) const = default;

  /// Exact decimal rendering with 12 fractional digits, e.g. "-0.167489374812".
  std::string to_string() const;
  /// Inverse of to_string; also accepts fewer fractional digits.
  static FixedCost parse(std::string_view text);

 private:
  constexpr explicit FixedCost(std::int64_t ticks) : ticks_(ticks) {}
  std::int64_t ticks_ = 0;
};

}  // namespace v2g
