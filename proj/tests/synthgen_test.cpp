// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tunespace/bench.hpp"
#include "tunespace/io.hpp"
#include "tunespace/solver.hpp"
#include "tunespace/synthgen.hpp"

using namespace tunespace;

namespace {

// Reference count for the seed-1 space, first obtained from the test interpreter.
constexpr std::size_t kFrozenSeedOneCount = 4578;

}  // namespace

TEST_CASE("values per dimension") {
  CHECK(dims_for(10000, 2) == std::vector<std::size_t>{100, 100});
  CHECK(dims_for(10000, 3) == std::vector<std::size_t>{22, 22, 21});
  CHECK(dims_for(1000000, 4) == std::vector<std::size_t>{32, 32, 32, 31});
  CHECK(dims_for(1000, 3) == std::vector<std::size_t>{10, 10, 10});
  CHECK(dims_for(4, 2) == std::vector<std::size_t>{2, 2});
  CHECK_THROWS_AS(dims_for(7, 3), std::invalid_argument);
}

TEST_CASE("rounding follows the stated rule on a grid of targets") {
  for (std::size_t d = 2; d <= 5; ++d) {
    for (std::uint64_t s = std::uint64_t{1} << d; s <= 2'000'000; s = s * 3 + 1) {
      CAPTURE(s);
      CAPTURE(d);
      const double v = std::pow(static_cast<double>(s), 1.0 / static_cast<double>(d));
      auto dims = dims_for(s, d);
      REQUIRE(dims.size() == d);
      const auto nearest = static_cast<std::size_t>(std::llround(v));
      for (std::size_t i = 0; i + 1 < d; ++i) CHECK(dims[i] == nearest);
      if (std::abs(v - std::round(v)) < 1e-9) {
        CHECK(dims.back() == nearest);
      } else {
        const auto other = nearest > v ? static_cast<std::size_t>(std::floor(v)) : static_cast<std::size_t>(std::ceil(v));
        CHECK(dims.back() == other);
      }
      for (auto n : dims) CHECK(n >= 2);
    }
  }
}

TEST_CASE("generation is deterministic") {
  SyntheticSpec spec{10000, 3, 4, 7};
  Problem a = generate_space(spec);
  Problem b = generate_space(spec);
  CHECK(problem_to_json(a).dump() == problem_to_json(b).dump());
  CHECK(a.constraints() == b.constraints());
  SyntheticSpec other = spec;
  other.seed = 8;
  CHECK(problem_to_json(generate_space(other)).dump() != problem_to_json(a).dump());
  CHECK(spec.id() == "s10000-d3-m4-seed7");
}

TEST_CASE("dimension i is the range 1..count_i") {
  Problem p = generate_space({10000, 3, 0, 1});
  CHECK(p.constraints().empty());
  CHECK(p.sources().empty());
  CHECK(p.cartesian_size() == 22 * 22 * 21);
  auto dims = dims_for(10000, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Domain& d = p.declared()[i].domain;
    REQUIRE(d.size() == dims[i]);
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(d[k] == ParamValue(static_cast<std::int64_t>(k + 1)));
  }
  CHECK(count_solutions(p) == 10164);
}

TEST_CASE("seeded reference space") {
  Problem p = generate_space({10000, 3, 2, 1});
  CHECK(p.sources().size() == 2);
  auto reference = testing_support::naive_solutions(p.declared(), p.sources());
  REQUIRE(reference.has_value());
  CHECK(reference->size() > 0);
  CHECK(reference->size() < 10164);
  CHECK(reference->size() == kFrozenSeedOneCount);
  CHECK(count_solutions(p) == reference->size());
}

TEST_CASE("generated constraints reference at least two dimensions") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Problem p = generate_space({100000, 5, 6, seed});
    CHECK(p.sources().size() == 6);
    for (const auto& src : p.sources()) CHECK(free_parameters(parse_expression(src)).size() >= 2);
  }
}

TEST_CASE("characterize") {
  Problem p = Problem::from_sources(testing_support::int_params({{1, 2, 4}, {1, 2, 4}}), {"p0 * p1 <= 4"});
  SpaceStats s = characterize(p, solve_all(p));
  CHECK(s.cartesian_size == 9);
  CHECK(s.valid_count == 6);
  CHECK(s.invalid_count == 3);
  CHECK(s.num_constraints == 1);
  CHECK(s.sparsity_fraction == doctest::Approx(1.0 / 3.0));

  Problem free = Problem::from_sources(testing_support::int_params({{1, 2}, {1, 2}}), {});
  CHECK(characterize(free, solve_all(free)).sparsity_fraction == 0.0);
  Problem none = Problem::from_sources(testing_support::int_params({{1, 2}, {1, 2}}), {"p0 + p1 > 9"});
  CHECK(characterize(none, solve_all(none)).sparsity_fraction == 1.0);
  CHECK_THROWS_AS(characterize(p, solve_all(free)), std::invalid_argument);
}

TEST_CASE("grids") {
  auto grid = synthetic_grid({2, 3}, {10000, 100000}, {1, 2}, 5);
  CHECK(grid.size() == 8);
  std::set<std::uint64_t> seeds;
  for (const auto& s : grid) seeds.insert(s.seed);
  CHECK(seeds.size() == 8);
  auto suite = default_suite(1);
  CHECK(suite.size() == 36);
  CHECK(default_suite(1)[5].id() == suite[5].id());
}
