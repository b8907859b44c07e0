// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/value.hpp"

#include <charconv>
#include <cmath>

namespace tunespace {

std::string_view tag_name(ValueTag tag) {
  switch (tag) {
    case ValueTag::Integer:
      return "integer";
    case ValueTag::Real:
      return "real";
    case ValueTag::Boolean:
      return "boolean";
    case ValueTag::Text:
      return "text";
  }
  return "?";
}

ParamValue::ParamValue(double v) : value_(v) {
  if (!std::isfinite(v)) throw std::invalid_argument("real values must be finite");
}

double ParamValue::to_double() const {
  if (is_integer()) return static_cast<double>(as_integer());
  if (is_real()) return as_real();
  throw std::logic_error("to_double() on non-numeric value");
}

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string ParamValue::to_string() const {
  switch (tag()) {
    case ValueTag::Integer:
      return std::to_string(as_integer());
    case ValueTag::Real:
      return format_real(as_real());
    case ValueTag::Boolean:
      return as_bool() ? "True" : "False";
    case ValueTag::Text: {
      std::string out = "'";
      for (char c : as_text()) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
      }
      return out + "'";
    }
  }
  return {};
}

int ParamValue::order(const ParamValue& a, const ParamValue& b) {
  if (a.is_numeric() && b.is_numeric()) {
    if (a.is_integer() && b.is_integer()) {
      return a.as_integer() < b.as_integer() ? -1 : (a.as_integer() > b.as_integer() ? 1 : 0);
    }
    double x = a.to_double(), y = b.to_double();
    if (x < y) return -1;
    if (x > y) return 1;
    // Same magnitude: integers before reals.
    return static_cast<int>(a.tag()) - static_cast<int>(b.tag());
  }
  if (a.tag() != b.tag()) return static_cast<int>(a.tag()) - static_cast<int>(b.tag());
  if (a.is_bool()) return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
  return a.as_text().compare(b.as_text());
}

std::size_t ParamValue::hash() const {
  std::size_t h = std::visit([](const auto& x) { return std::hash<std::decay_t<decltype(x)>>{}(x); }, value_);
  return h ^ (value_.index() * 0x9e3779b97f4a7c15ULL);
}

std::ostream& operator<<(std::ostream& os, const ParamValue& v) { return os << v.to_string(); }

}  // namespace tunespace
