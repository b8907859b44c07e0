// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support.hpp"
#include "tunespace/solver.hpp"

using namespace tunespace;
using testing_support::as_set;
using testing_support::int_params;
using testing_support::naive_solutions;

namespace {

CompiledConstraint constraint(const char* src) { return *classify(parse_expression(src)); }

std::vector<ParamValue> ints(std::initializer_list<std::int64_t> xs) {
  std::vector<ParamValue> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

std::vector<Parameter> thread_block_params() {
  std::vector<ParamValue> x = ints({1, 2, 4, 8, 16});
  for (std::int64_t v = 32; v <= 1024; v += 32) x.emplace_back(v);
  return {{"block_size_x", Domain(x)}, {"block_size_y", Domain(ints({1, 2, 4, 8, 16, 32}))}};
}

const std::vector<SolverOptions> kToggles = {{true, true}, {true, false}, {false, true}, {false, false}};

}  // namespace

TEST_CASE("variable order: degree, then domain size, then declaration") {
  auto params = int_params({{1, 2}, {1, 2}, {1, 2}});
  params[0].name = "x";
  params[1].name = "y";
  params[2].name = "z";
  Problem p(params, {constraint("x * y + 1 > 2"), constraint("y - z > 0")});
  CHECK(order_variables(p) == std::vector<std::string>{"y", "x", "z"});
  CHECK(order_variables(Problem(params, {})) == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("pipeline problem orders the smaller pruned domain first") {
  auto p = Problem::from_sources(thread_block_params(), {"2 <= block_size_y <= 32 <= block_size_x * block_size_y <= 1024"});
  CHECK(p.parameters()[0].domain.size() == 37);
  CHECK(p.parameters()[1].domain.size() == 5);
  CHECK(order_variables(p) == std::vector<std::string>{"block_size_y", "block_size_x"});
}

TEST_CASE("preprocessing a product bound") {
  std::vector<Parameter> params = {{"x", Domain(ints({1, 2, 12}))}, {"y", Domain(ints({1, 2}))}};
  Problem p(params, {constraint("x * y <= 10")});
  Problem q = preprocess(p);
  CHECK(q.parameters()[0].domain == Domain(ints({1, 2})));
  CHECK(q.parameters()[1].domain == Domain(ints({1, 2})));
  CHECK(q.declared() == params);
  CHECK(as_set(solve_all(p, {false, false})) == as_set(solve_all(q, {false, false})));
}

TEST_CASE("preprocessing an unreachable sum empties both domains") {
  Problem p(int_params({{1, 2}, {1, 2}}), {constraint("p0 + p1 >= 5")});
  Problem q = preprocess(p);
  CHECK(q.parameters()[0].domain.empty());
  CHECK(q.parameters()[1].domain.empty());
  CHECK(count_solutions(p) == 0);
}

TEST_CASE("preprocessing without aggregate bounds changes nothing") {
  Problem p(int_params({{1, 2, 3}, {1, 2, 3}}), {constraint("p0 - p1 >= 1")});
  Problem q = preprocess(p);
  CHECK(q.parameters() == p.parameters());
}

TEST_CASE("preprocessing leaves signed domains alone") {
  Problem p(int_params({{-3, 1, 5}, {-2, 2}}), {constraint("p0 * p1 <= 2")});
  CHECK(preprocess(p).parameters() == p.parameters());
}

TEST_CASE("partial checks") {
  const std::vector<Parameter> params = {{"x", Domain(ints({1, 2048}))}, {"y", Domain(ints({1, 2, 4}))}};
  CHECK(check(constraint("x * y <= 1024"), {{"x", 2048}}, params).verdict == Verdict::Violated);
  CHECK(check(constraint("x * y <= 1024"), {{"x", 2048}}, params, false).verdict == Verdict::Undecided);
  CHECK(check(constraint("x * y + 0 >= 32"), {{"x", 8}}, params).verdict == Verdict::Undecided);
  CHECK(check(constraint("x * y >= 32"), {{"x", 8}, {"y", 4}}, params).verdict == Verdict::Satisfied);
  CHECK(check(constraint("x * y >= 32"), {{"x", 1}}, params).verdict == Verdict::Violated);
  CHECK(check(constraint("x + y <= 3"), {{"x", 1}}, params).verdict == Verdict::Undecided);
  CHECK(check(constraint("x + y < 3"), {{"x", 2}}, params).verdict == Verdict::Violated);
  CHECK(check(constraint("x + y == 6"), {{"x", 2}, {"y", 4}}, params).verdict == Verdict::Satisfied);
}

TEST_CASE("generic evaluation failures are violations with a diagnostic") {
  const std::vector<Parameter> params = {{"x", Domain(ints({0, 1}))}, {"y", Domain(ints({0, 1}))}};
  auto r = check(constraint("x // y >= 0"), {{"x", 1}, {"y", 0}}, params);
  CHECK(r.verdict == Verdict::Violated);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("solve examples") {
  auto sum = solve_all(Problem(int_params({{1, 2}, {1, 2}}), {constraint("p0 + p1 - 0 <= 3")}));
  CHECK(sum.configurations().size() == 3);
  CHECK(as_set(sum) == as_set(std::vector<Configuration>{{1, 1}, {1, 2}, {2, 1}}));

  auto prod = solve_all(Problem(int_params({{1, 2, 4}, {1, 2, 4}}), {constraint("p0 * p1 <= 4")}));
  CHECK(as_set(prod) == as_set(std::vector<Configuration>{{1, 1}, {1, 2}, {1, 4}, {2, 1}, {2, 2}, {4, 1}}));

  auto free = solve_all(Problem(int_params({{1, 2, 3}, {4, 5}, {6, 7}}), {}));
  CHECK(free.size() == 12);
  CHECK(count_solutions(Problem(int_params({{1, 2, 3}, {1, 2, 3}}), {})) == 9);
}

TEST_CASE("an emptied domain gives no solutions") {
  auto p = Problem::from_sources(int_params({{1, 2}, {1, 2}}), {"p0 > 5"});
  CHECK(p.parameters()[0].domain.empty());
  CHECK(count_solutions(p) == 0);
  CHECK(solve_all(p).empty());
}

TEST_CASE("thread block count matches the reference enumeration") {
  const auto params = thread_block_params();
  const std::vector<std::string> sources = {"block_size_x * block_size_y >= 32", "block_size_x * block_size_y <= 1024"};
  auto expected = naive_solutions(params, sources);
  REQUIRE(expected.has_value());
  auto p = Problem::from_sources(params, sources);
  for (const auto& opt : kToggles) {
    CHECK(count_solutions(p, opt) == expected->size());
    CHECK(as_set(solve_all(p, opt)) == *expected);
  }
}

TEST_CASE("solutions are reported in declaration order over declared domains") {
  auto p = Problem::from_sources(int_params({{3, 1, 2}, {5, 4}}), {"p1 - p0 >= 2", "p0 != 2"});
  auto s = solve_all(p);
  CHECK(s.names() == std::vector<std::string>{"p0", "p1"});
  CHECK(s.domains()[0] == p.declared()[0].domain);
  CHECK(as_set(s) == *naive_solutions(p.declared(), p.sources()));
}

TEST_CASE("evaluation errors during search carry the assignment") {
  auto p = Problem::from_sources(int_params({{1, 2}, {0, 1}}), {"p0 // p1 >= 1"});
  try {
    solve_all(p);
    FAIL("expected a solve error");
  } catch (const SolveError& e) {
    CHECK(e.at().count("p1") == 1);
    CHECK(e.at().at("p1") == ParamValue(0));
  }
  CHECK_THROWS_AS(count_solutions(p), SolveError);
}

TEST_CASE("mixed value kinds") {
  std::vector<Parameter> params = {
      {"n", Domain(ints({1, 2, 3}))},
      {"flag", Domain({ParamValue(true), ParamValue(false)})},
      {"layout", Domain({ParamValue("row"), ParamValue("col")})},
      {"scale", Domain({ParamValue(0.5), ParamValue(1.5)})},
  };
  std::vector<std::string> sources = {"flag or layout == 'row'", "n * scale <= 3", "not flag or n > 1"};
  auto expected = naive_solutions(params, sources);
  REQUIRE(expected.has_value());
  auto p = Problem::from_sources(params, sources);
  for (const auto& opt : kToggles) CHECK(as_set(solve_all(p, opt)) == *expected);
}

TEST_CASE("strict and exact aggregate bounds over mixed signs") {
  auto params = int_params({{-2, -1, 0, 1, 3}, {-3, 0, 2, 5}, {1, 2, 4}});
  std::vector<std::string> sources = {"p0 + p1 + p2 < 5", "p0 * p1 > -4", "p1 + p2 == 3 or p0 == 0"};
  auto expected = naive_solutions(params, sources);
  REQUIRE(expected.has_value());
  auto p = Problem::from_sources(params, sources);
  for (const auto& opt : kToggles) CHECK(as_set(solve_all(p, opt)) == *expected);
}

TEST_CASE("large products saturate instead of overflowing") {
  auto params = int_params({{1, 4611686018427387904}, {1, 4}, {1, 8}});
  auto p = Problem::from_sources(params, {"p0 * p1 * p2 <= 32"});
  CHECK(count_solutions(p) == 4);
}
