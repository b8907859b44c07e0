// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tunespace/io.hpp"
#include "tunespace/problem.hpp"
#include "tunespace/solver.hpp"

namespace tunespace {

inline constexpr std::uint64_t kBruteForceLimit = 100'000'000;

/// Reference enumeration: walks the declared Cartesian product in
/// declaration order and evaluates the user's constraint text directly. Uses
/// neither the constraint rewriting nor the backtracking search.
///
/// Throws std::length_error above `max_cartesian` combinations and SolveError
/// when an expression fails to evaluate.
SolutionSet brute_force_solve(const Problem& problem, std::uint64_t max_cartesian = kBruteForceLimit);

/// Mean constraint evaluations of a naive checker,
/// (|invalid| + |invalid| * constraints) / 2 + |valid|, held exactly as a
/// multiple of one half.
class EvaluationCount {
 public:
  explicit EvaluationCount(unsigned __int128 halves) : halves_(halves) {}
  bool whole() const { return halves_ % 2 == 0; }
  /// Integer part.
  std::uint64_t floor() const { return static_cast<std::uint64_t>(halves_ / 2); }
  /// "N" or "N.5".
  std::string to_string() const;
  friend bool operator==(const EvaluationCount&, const EvaluationCount&) = default;

 private:
  unsigned __int128 halves_;
};

EvaluationCount avg_constraint_evaluations(std::uint64_t cartesian, std::uint64_t valid,
                                           std::uint64_t num_constraints);

enum class Method { Optimized, BruteForce };
enum class Validation { Pass, Fail, Skipped };
enum class TimeBoundary { Solve, SolveAndIndex };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
std::string_view validation_name(Validation v);
Validation parse_validation(std::string_view name);
TimeBoundary parse_time_boundary(std::string_view name);
std::string_view time_boundary_name(TimeBoundary b);

struct BenchOptions {
  std::vector<Method> methods{Method::Optimized, Method::BruteForce};
  std::size_t repetitions = 1;
  TimeBoundary boundary = TimeBoundary::SolveAndIndex;
  SolverOptions solver;
  std::uint64_t max_bruteforce = kBruteForceLimit;
};

struct SpaceRecord {
  std::string id;
  Method method = Method::Optimized;
  double seconds = 0.0;  // minimum over repetitions
  std::uint64_t valid_count = 0;
  std::uint64_t cartesian_size = 0;
  Validation validation = Validation::Skipped;
  std::size_t repetitions = 0;

  friend bool operator==(const SpaceRecord&, const SpaceRecord&) = default;
};

struct BenchAggregates {
  double optimized_seconds = 0.0;
  double bruteforce_seconds = 0.0;
  /// bruteforce / optimized; absent unless both methods ran.
  std::optional<double> speedup;
  /// Least-squares slope of log(time) against log(valid count), optimized runs.
  std::optional<double> slope;

  friend bool operator==(const BenchAggregates&, const BenchAggregates&) = default;
};

struct BenchReport {
  std::vector<SpaceRecord> spaces;
  BenchAggregates aggregates;

  Json to_json() const;
  static BenchReport from_json(const Json& j);
  /// One row per (space, method).
  std::string to_csv() const;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// The optimized and reference solvers disagree.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& space_id, std::vector<std::string> sample);
  /// Up to ten mismatching configurations, each prefixed `+` (only in the
  /// optimized result) or `-` (only in the reference result).
  const std::vector<std::string>& sample() const { return sample_; }

 private:
  std::vector<std::string> sample_;
};

/// Mismatching configurations between two solution sets (as sets), at most
/// `limit`; empty when they are equal.
std::vector<std::string> solution_diff(const SolutionSet& optimized, const SolutionSet& reference,
                                       std::size_t limit = 10);

/// Slope of the least-squares line through (log x, log y); nullopt with fewer
/// than two distinct x.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points);

using BenchSuite = std::vector<std::pair<std::string, Problem>>;

/// Runs every method on every space, keeping the fastest repetition.
/// Throws ValidationError when both methods ran and disagree.
BenchReport run_benchmark(const BenchSuite& suite, const BenchOptions& options);

}  // namespace tunespace
