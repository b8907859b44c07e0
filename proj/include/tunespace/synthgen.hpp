// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tunespace/problem.hpp"

namespace tunespace {

/// Parameters of one synthetic search space.
struct SyntheticSpec {
  std::uint64_t target_size = 0;     // desired Cartesian size
  std::size_t dims = 2;              // number of parameters, >= 2
  std::size_t num_constraints = 1;   // 0 gives an unconstrained baseline
  std::uint64_t seed = 0;

  /// Stable identifier, e.g. `s10000-d3-m2-seed1`.
  std::string id() const;
};

/// Counts describing how constrained a resolved space is.
struct SpaceStats {
  std::uint64_t cartesian_size = 0;
  std::uint64_t valid_count = 0;
  std::uint64_t invalid_count = 0;
  std::uint64_t num_constraints = 0;
  double sparsity_fraction = 0.0;  // invalid / cartesian
};

/// Values per dimension for a target Cartesian size: the d-th root rounded to
/// nearest for all but the last dimension, which rounds the other way.
/// Throws std::invalid_argument when some dimension would get fewer than two
/// values.
std::vector<std::size_t> dims_for(std::uint64_t target_size, std::size_t dims);

/// Seeded random problem: dimension i is the integer range 1..count_i and the
/// constraints mix sum/product bounds with generic arithmetic comparisons.
Problem generate_space(const SyntheticSpec& spec);

/// Throws std::invalid_argument if `solutions` does not belong to `problem`.
SpaceStats characterize(const Problem& problem, const SolutionSet& solutions);

/// Cross product of the given levels; each space gets a distinct seed derived
/// from `seed`.
std::vector<SyntheticSpec> synthetic_grid(const std::vector<std::size_t>& dims,
                                          const std::vector<std::uint64_t>& sizes,
                                          const std::vector<std::size_t>& constraints, std::uint64_t seed);

/// d in {2,3,4,5} x s in {1e4,1e5,1e6} x m in {2,4,6}.
std::vector<SyntheticSpec> default_suite(std::uint64_t seed);

}  // namespace tunespace
