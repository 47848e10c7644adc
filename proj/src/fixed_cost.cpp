#include "v2g/fixed_cost.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "v2g/errors.hpp"

namespace v2g {

FixedCost FixedCost::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("FixedCost: non-finite value");
  const double scaled = value * static_cast<double>(kTicksPerUnit);
  // 2^63 is exactly representable; anything at or beyond it overflows.
  if (std::fabs(scaled) >= 9.2e18) throw DomainError("FixedCost: value out of range");
  return FixedCost(std::llround(scaled));
}

double FixedCost::to_double() const {
  const std::int64_t whole = ticks_ / kTicksPerUnit;
  const std::int64_t frac = ticks_ % kTicksPerUnit;
  return static_cast<double>(whole) +
         static_cast<double>(frac) / static_cast<double>(kTicksPerUnit);
}

FixedCost FixedCost::operator+(FixedCost other) const {
  std::int64_t out = 0;
  if (__builtin_add_overflow(ticks_, other.ticks_, &out)) {
    throw DomainError("FixedCost: addition overflow");
  }
  return FixedCost(out);
}

FixedCost FixedCost::operator-(FixedCost other) const {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(ticks_, other.ticks_, &out)) {
    throw DomainError("FixedCost: subtraction overflow");
  }
  return FixedCost(out);
}

std::string FixedCost::to_string() const {
  const bool negative = ticks_ < 0;
  // Work in unsigned to survive INT64_MIN.
  const std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(ticks_)
                                     : static_cast<std::uint64_t>(ticks_);
  const std::uint64_t unit = static_cast<std::uint64_t>(kTicksPerUnit);
  std::string frac = std::to_string(mag % unit);
  frac.insert(0, 12 - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(mag / unit) + "." + frac;
}

FixedCost FixedCost::parse(std::string_view text) {
  auto fail = [&] { return DomainError("FixedCost: cannot parse '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole_text = text.substr(0, dot);
  std::string_view frac_text = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole_text.empty() || frac_text.size() > 12) throw fail();

  std::uint64_t whole = 0;
  auto [p1, e1] = std::from_chars(whole_text.data(), whole_text.data() + whole_text.size(), whole);
  if (e1 != std::errc{} || p1 != whole_text.data() + whole_text.size()) throw fail();

  std::uint64_t frac = 0;
  if (!frac_text.empty()) {
    auto [p2, e2] = std::from_chars(frac_text.data(), frac_text.data() + frac_text.size(), frac);
    if (e2 != std::errc{} || p2 != frac_text.data() + frac_text.size()) throw fail();
    for (std::size_t i = frac_text.size(); i < 12; ++i) frac *= 10;
  }
  const std::uint64_t unit = static_cast<std::uint64_t>(kTicksPerUnit);
  if (whole > static_cast<std::uint64_t>(INT64_MAX) / unit) throw fail();
  const std::int64_t mag = static_cast<std::int64_t>(whole * unit + frac);
  return FixedCost(negative ? -mag : mag);
}

}  // namespace v2g
