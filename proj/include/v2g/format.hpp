#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "v2g/errors.hpp"

namespace v2g {

/// Shortest decimal text that parses back to exactly the same double.
inline std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw DomainError("format_double: conversion failed");
  return std::string(buf, end);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw DomainError("parse_double: cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace v2g
