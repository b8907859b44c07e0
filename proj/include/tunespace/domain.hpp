// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tunespace/value.hpp"

namespace tunespace {

/// Ordered list of distinct values of one tag, in user-given order.
/// May be empty only as the result of pruning.
class Domain {
 public:
  Domain() = default;
  /// Throws std::invalid_argument on duplicates or mixed tags.
  explicit Domain(std::vector<ParamValue> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const ParamValue& operator[](std::size_t i) const { return values_[i]; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  const std::vector<ParamValue>& values() const { return values_; }

  /// Tag shared by all values; nullopt for an empty domain.
  std::optional<ValueTag> tag() const;
  bool contains(const ParamValue& v) const { return index_of(v).has_value(); }
  std::optional<std::size_t> index_of(const ParamValue& v) const;

  friend bool operator==(const Domain& a, const Domain& b) { return a.values_ == b.values_; }

 private:
  std::vector<ParamValue> values_;
  std::shared_ptr<const std::unordered_map<ParamValue, std::size_t>> index_;  // shared by copies
};

struct Parameter {
  std::string name;
  Domain domain;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

}  // namespace tunespace
