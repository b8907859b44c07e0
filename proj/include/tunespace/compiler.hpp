// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunespace/domain.hpp"
#include "tunespace/expr.hpp"

namespace tunespace {

enum class ConstraintKind {
  ExactSum,
  MinSum,
  MaxSum,
  ExactProduct,
  MinProduct,
  MaxProduct,
  UnaryRestriction,
  Generic,
};

std::string_view kind_name(ConstraintKind kind);

/// A user constraint after rewriting: either a recognized sum/product bound
/// over bare parameters, a single-parameter restriction, or a generic
/// predicate.
struct CompiledConstraint {
  ConstraintKind kind;
  std::vector<std::string> scope;
  /// Bound for sum/product kinds.
  std::optional<ParamValue> limit;
  /// Min/Max kinds: the bound is exclusive (`<` or `>`).
  bool strict = false;
  /// Boolean expression with exactly the constraint's meaning.
  Expr predicate;
  /// Source text of the user constraint this came from.
  std::string origin;

  bool is_sum() const;
  bool is_product() const;
  bool is_specific() const { return is_sum() || is_product(); }

  /// E.g. `MaxProduct(1024, [x, y])`, `MinSum(>3, [a, b])`, `Generic(x * 2 + y <= 10)`.
  std::string describe() const;

  /// Structural equality; `origin` is ignored.
  friend bool operator==(const CompiledConstraint& a, const CompiledConstraint& b);
};

class CompileError : public std::runtime_error {
 public:
  enum class Reason { Parse, UnknownParameter, Unsatisfiable, NotBoolean, Evaluation };

  CompileError(Reason reason, std::size_t source_index, const std::string& message, std::string identifier = {});

  Reason reason() const { return reason_; }
  std::size_t source_index() const { return source_index_; }
  /// Offending parameter name for UnknownParameter.
  const std::string& identifier() const { return identifier_; }

 private:
  Reason reason_;
  std::size_t source_index_;
  std::string identifier_;
};

/// Splits top-level conjunctions and breaks every comparison chain into its
/// adjacent binary comparisons.
std::vector<Expr> split_conjunctions(const Expr& expr);

/// Classifies one split part. Returns nullopt for a closed expression that is
/// always true; throws CompileError(Unsatisfiable) for one that is always false.
std::optional<CompiledConstraint> classify(const Expr& expr, std::string origin = {});

struct CompileResult {
  std::vector<CompiledConstraint> constraints;
  /// Input parameters with every single-parameter restriction applied.
  std::vector<Parameter> parameters;
};

/// Parse, split and classify every source, then apply single-parameter
/// restrictions directly to the domains.
CompileResult compile_constraints(const std::vector<std::string>& sources, const std::vector<Parameter>& parameters);

}  // namespace tunespace
