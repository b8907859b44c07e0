// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tunespace/compiler.hpp"
#include "tunespace/domain.hpp"

namespace tunespace {

/// A total assignment, positionally aligned with the problem's parameters.
using Configuration = std::vector<ParamValue>;

/// Parameters, domains and compiled constraints of one search space.
///
/// Keeps both the declared domains (what the user wrote) and the working
/// domains left after single-parameter restrictions and pruning, plus the
/// original constraint text for independent re-checking.
class Problem {
 public:
  /// Compiles `sources` against `parameters`. Throws CompileError or
  /// std::invalid_argument.
  static Problem from_sources(std::vector<Parameter> parameters, std::vector<std::string> sources);

  /// Problem over already-compiled constraints; sources are their predicates.
  Problem(std::vector<Parameter> parameters, std::vector<CompiledConstraint> constraints);

  Problem(std::vector<Parameter> declared, std::vector<Parameter> working, std::vector<CompiledConstraint> constraints,
          std::vector<std::string> sources);

  const std::vector<Parameter>& declared() const { return declared_; }
  const std::vector<Parameter>& parameters() const { return working_; }
  const std::vector<CompiledConstraint>& constraints() const { return constraints_; }
  const std::vector<std::string>& sources() const { return sources_; }

  std::size_t size() const { return declared_.size(); }
  std::vector<std::string> names() const;
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  std::size_t index_of(std::string_view name) const;

  /// Product of declared domain sizes, saturating at UINT64_MAX.
  std::uint64_t cartesian_size() const;

  /// Same problem with different working domains.
  Problem with_domains(std::vector<Parameter> working) const;

 private:
  std::vector<Parameter> declared_;
  std::vector<Parameter> working_;
  std::vector<CompiledConstraint> constraints_;
  std::vector<std::string> sources_;
};

/// All valid configurations of a problem, stored as indices into the
/// declared domains (one row per configuration, declaration order).
class SolutionSet {
 public:
  SolutionSet() = default;
  SolutionSet(std::vector<std::string> names, std::vector<Domain> domains, std::vector<std::uint32_t> cells);

  std::size_t size() const { return width_ == 0 ? 0 : cells_.size() / width_; }
  bool empty() const { return size() == 0; }
  std::size_t width() const { return width_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Domain>& domains() const { return domains_; }

  std::span<const std::uint32_t> row(std::size_t i) const { return {cells_.data() + i * width_, width_}; }
  Configuration operator[](std::size_t i) const;
  std::vector<Configuration> configurations() const;
  const std::vector<std::uint32_t>& cells() const { return cells_; }

  /// Optional hint: column indices, most significant first, under which the
  /// rows are already in ascending lexicographic order. Not part of equality.
  const std::vector<std::size_t>& row_order() const { return row_order_; }
  void set_row_order(std::vector<std::size_t> order);

 private:
  std::vector<std::string> names_;
  std::vector<Domain> domains_;
  std::vector<std::uint32_t> cells_;
  std::size_t width_ = 0;
  std::vector<std::size_t> row_order_;
};

}  // namespace tunespace
