// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tunespace/problem.hpp"

namespace tunespace {

struct SolverOptions {
  /// Bound-based domain pruning for sum/product constraints before search.
  bool preprocess = true;
  /// Reject partial assignments of sum/product constraints early.
  bool partial_checks = true;
};

/// Descending constraint degree, then ascending working-domain size, then
/// declaration order.
std::vector<std::string> order_variables(const Problem& problem);

/// Prunes working domains with sum/product bounds until nothing changes.
/// Never removes a value that takes part in a solution.
Problem preprocess(const Problem& problem);

enum class Verdict { Satisfied, Violated, Undecided };

struct CheckResult {
  Verdict verdict;
  /// Set when evaluation failed (the verdict is then Violated).
  std::string diagnostic;
};

/// Checks one constraint against a (possibly partial) assignment. Domains of
/// unbound scope parameters are taken from `parameters`.
CheckResult check(const CompiledConstraint& constraint, const Assignment& partial,
                  const std::vector<Parameter>& parameters, bool partial_checks = true);

/// Constraint evaluation failed during search.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& message, Assignment at) : std::runtime_error(message), at_(std::move(at)) {}
  /// Assignment that triggered the failure.
  const Assignment& at() const { return at_; }

 private:
  Assignment at_;
};

/// Every configuration satisfying all constraints, found by iterative
/// backtracking. Output order is deterministic.
SolutionSet solve_all(const Problem& problem, const SolverOptions& options = {});

/// |solve_all(problem)| without storing configurations.
std::uint64_t count_solutions(const Problem& problem, const SolverOptions& options = {});

}  // namespace tunespace
