// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

// Test-side reference implementations and generators. Nothing here calls the
// library's evaluator, compiler or solver; only the parser and value types are
// shared.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tunespace/expr.hpp"
#include "tunespace/problem.hpp"

namespace testing_support {

using tunespace::Configuration;
using tunespace::Expr;
using tunespace::ParamValue;
using tunespace::Parameter;

/// Result of the reference interpreter: a value or the error category.
struct Outcome {
  std::optional<ParamValue> value;
  std::optional<tunespace::EvalErrorKind> error;
};

using Env = std::map<std::string, ParamValue, std::less<>>;

/// Second interpreter for the dialect, written against the language rules
/// (128-bit integer arithmetic with explicit range checks).
Outcome naive_eval(const Expr& e, const Env& env);

/// Every combination of `params` for which every source evaluates to True
/// under naive_eval; nullopt if any evaluation errors or is not boolean.
std::optional<std::set<std::vector<std::string>>> naive_solutions(const std::vector<Parameter>& params,
                                                                  const std::vector<std::string>& sources);

/// Order-insensitive canonical form of configurations.
std::set<std::vector<std::string>> as_set(const std::vector<Configuration>& configs);
std::set<std::vector<std::string>> as_set(const tunespace::SolutionSet& solutions);

/// Parameters named p0.. with the given integer domains.
std::vector<Parameter> int_params(const std::vector<std::vector<std::int64_t>>& domains);

/// Random expression trees in the parser's image. `names` are the
/// parameters that may appear.
class ExprGen {
 public:
  ExprGen(std::uint64_t seed, std::vector<std::string> names) : rng_(seed), names_(std::move(names)) {}

  /// Any shape, including ill-typed ones.
  Expr any(int depth);
  /// Integer-valued arithmetic over the names and small literals.
  Expr arith(int depth);
  /// Boolean-valued combination of comparisons.
  Expr boolean(int depth);

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }
  Expr leaf_number();

  std::mt19937_64 rng_;
  std::vector<std::string> names_;
};

}  // namespace testing_support
