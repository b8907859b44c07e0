// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tunespace/problem.hpp"
#include "tunespace/solver.hpp"

namespace tunespace {

enum class NeighborMethod { Hamming, AdjacentIndex };

/// "hamming" or "adjacent-index"; throws std::invalid_argument otherwise.
NeighborMethod parse_neighbor_method(std::string_view name);

/// How hamming neighbors are located. Auto picks whichever touches fewer
/// configurations.
enum class NeighborStrategy { Auto, Scan, Enumerate };

/// The fully resolved set of valid configurations with lookup indexes.
/// Immutable once built; every query is read-only.
class SearchSpace {
 public:
  /// Solves `problem` and indexes the result.
  static SearchSpace build(const Problem& problem, const SolverOptions& options = {});

  SearchSpace(SolutionSet solutions, std::uint64_t cartesian_size);

  std::size_t size() const { return solutions_.size(); }
  bool empty() const { return solutions_.empty(); }
  std::uint64_t cartesian_size() const { return cartesian_size_; }
  const std::vector<std::string>& names() const { return solutions_.names(); }
  const std::vector<Domain>& domains() const { return solutions_.domains(); }
  const SolutionSet& solutions() const { return solutions_; }
  Configuration operator[](std::size_t i) const { return solutions_[i]; }

  /// Values of a parameter that occur in at least one valid configuration,
  /// in ascending order.
  const std::vector<ParamValue>& unique_values(std::string_view parameter) const;

  /// Index of a valid configuration, nullopt for anything else. Throws
  /// std::invalid_argument if the arity or a value's tag is wrong.
  std::optional<std::size_t> index_of(const Configuration& config) const;

  /// True (min, max) of a numeric parameter over valid configurations.
  std::pair<ParamValue, ParamValue> bounds(std::string_view parameter) const;

  /// Space indices of neighbors, ascending. `distance` applies to hamming.
  std::vector<std::size_t> neighbor_indices(const Configuration& config, NeighborMethod method,
                                            std::size_t distance = 1,
                                            NeighborStrategy strategy = NeighborStrategy::Auto) const;
  std::vector<Configuration> neighbors(const Configuration& config, NeighborMethod method,
                                       std::size_t distance = 1) const;

  /// `n` distinct configurations drawn uniformly without replacement.
  std::vector<std::size_t> sample_indices(std::size_t n, std::uint64_t seed) const;
  std::vector<Configuration> sample(std::size_t n, std::uint64_t seed) const;

  friend bool operator==(const SearchSpace& a, const SearchSpace& b);

 private:
  std::size_t parameter(std::string_view name) const;
  /// Declared-domain index of every value; throws on malformed input, returns
  /// false if some value lies outside its declared domain.
  bool encode(const Configuration& config, std::vector<std::uint32_t>& out) const;
  std::optional<std::size_t> find_row(const std::uint32_t* row) const;
  std::uint64_t hash_row(const std::uint32_t* row) const;
  std::uint64_t key_of(const std::uint32_t* row) const;
  void build_keys(std::uint64_t radix);

  SolutionSet solutions_;
  std::uint64_t cartesian_size_ = 0;
  std::vector<std::vector<ParamValue>> unique_;
  std::vector<std::unordered_map<ParamValue, std::uint32_t>> value_index_;
  std::vector<std::vector<std::int32_t>> rank_;  // declared index -> position in unique_, or -1
  // When the declared Cartesian product fits in 64 bits every row has a
  // mixed-radix key; rows are searched directly when already in key order,
  // otherwise through the sorted keys. Beyond 64 bits an open
  // addressing table holds row + 1 (0 = empty).
  bool keyed_ = false;
  bool rows_ascending_ = false;
  std::vector<std::uint64_t> stride_;
  std::vector<std::uint64_t> keys_;      // ascending
  std::vector<std::uint32_t> key_rows_;  // row of keys_[i]
  std::vector<std::uint32_t> table_;
  std::uint64_t mask_ = 0;
};

}  // namespace tunespace
