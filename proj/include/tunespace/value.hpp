// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace tunespace {

enum class ValueTag : std::uint8_t { Integer, Real, Boolean, Text };

std::string_view tag_name(ValueTag tag);

/// A single domain element or expression result.
///
/// Equality is exact and tag-sensitive: Integer 1 and Real 1.0 are different
/// values. Reals are always finite.
class ParamValue {
 public:
  ParamValue() : value_(std::int64_t{0}) {}
  ParamValue(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ParamValue(int v) : value_(std::int64_t{v}) {}  // NOLINT(google-explicit-constructor)
  ParamValue(double v);  // NOLINT(google-explicit-constructor)
  ParamValue(bool v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ParamValue(std::string v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ParamValue(const char* v) : value_(std::string(v)) {}  // NOLINT(google-explicit-constructor)

  ValueTag tag() const { return static_cast<ValueTag>(value_.index()); }
  bool is_integer() const { return tag() == ValueTag::Integer; }
  bool is_real() const { return tag() == ValueTag::Real; }
  bool is_bool() const { return tag() == ValueTag::Boolean; }
  bool is_text() const { return tag() == ValueTag::Text; }
  bool is_numeric() const { return is_integer() || is_real(); }

  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  double as_real() const { return std::get<double>(value_); }
  bool as_bool() const { return std::get<bool>(value_); }
  const std::string& as_text() const { return std::get<std::string>(value_); }

  /// Numeric value widened to double; only valid for Integer and Real.
  double to_double() const;

  /// Literal rendering in the expression dialect (e.g. `3`, `2.5`, `True`, `'a'`).
  std::string to_string() const;

  /// Total order used for sorted value lists: numbers compare numerically,
  /// booleans False < True, text lexicographically. Different kinds order by
  /// tag. Returns <0, 0, >0.
  static int order(const ParamValue& a, const ParamValue& b);

  friend bool operator==(const ParamValue& a, const ParamValue& b) { return a.value_ == b.value_; }

  std::size_t hash() const;

 private:
  std::variant<std::int64_t, double, bool, std::string> value_;
};

std::ostream& operator<<(std::ostream& os, const ParamValue& v);

/// Shortest decimal form of a real that still reads back as a real literal.
std::string format_real(double v);

}  // namespace tunespace

template <>
struct std::hash<tunespace::ParamValue> {
  std::size_t operator()(const tunespace::ParamValue& v) const noexcept { return v.hash(); }
};
