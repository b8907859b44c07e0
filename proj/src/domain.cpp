// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/domain.hpp"

#include <stdexcept>

namespace tunespace {

Domain::Domain(std::vector<ParamValue> values) : values_(std::move(values)) {
  auto index = std::make_shared<std::unordered_map<ParamValue, std::size_t>>();
  index->reserve(values_.size());
  for (const ParamValue& v : values_) {
    if (v.tag() != values_.front().tag()) {
      throw std::invalid_argument("domain mixes " + std::string(tag_name(values_.front().tag())) + " and " +
                                  std::string(tag_name(v.tag())) + " values");
    }
    if (!index->emplace(v, index->size()).second) throw std::invalid_argument("duplicate domain value " + v.to_string());
  }
  index_ = std::move(index);
}

std::optional<ValueTag> Domain::tag() const {
  if (values_.empty()) return std::nullopt;
  return values_.front().tag();
}

std::optional<std::size_t> Domain::index_of(const ParamValue& v) const {
  if (!index_) return std::nullopt;
  auto it = index_->find(v);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

}  // namespace tunespace
