// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunespace/value.hpp"

namespace tunespace {

enum class UnaryOp { Negate, Not };
enum class BinaryOp { Add, Sub, Mul, Div, FloorDiv, Mod, Pow, And, Or };
enum class CompareOp { Lt, Le, Gt, Ge, Eq, Ne };

std::string_view op_symbol(UnaryOp op);
std::string_view op_symbol(BinaryOp op);
std::string_view op_symbol(CompareOp op);

struct ExprNode;

/// Immutable, shareable expression tree of the constraint dialect.
class Expr {
 public:
  enum class Kind { Literal, ParamRef, Unary, Binary, Comparison };

  static Expr literal(ParamValue value);
  static Expr param(std::string name);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr left, Expr right);
  /// Chained comparison; requires operands.size() >= 2 and ops.size() == operands.size() - 1.
  static Expr compare(std::vector<Expr> operands, std::vector<CompareOp> ops);

  Kind kind() const;

  // Accessors; each requires the matching kind().
  const ParamValue& value() const;
  const std::string& name() const;
  UnaryOp unary_op() const;
  BinaryOp binary_op() const;
  const Expr& operand() const;
  const Expr& left() const;
  const Expr& right() const;
  const std::vector<Expr>& operands() const;
  const std::vector<CompareOp>& compare_ops() const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Expr::Kind kind;
  ParamValue value;             // Literal
  std::string name;             // ParamRef
  UnaryOp unary_op{};           // Unary
  BinaryOp binary_op{};         // Binary
  std::vector<Expr> children;   // Unary: 1, Binary: 2, Comparison: n
  std::vector<CompareOp> ops;   // Comparison
};

/// Malformed constraint text. `offset()` is the byte offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }
  /// Free-form message; the trailing int only disambiguates.
  ParseError(std::size_t offset, std::string message, int);

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Syntax outside the dialect: calls, indexing, lambdas, bitwise operators...
class UnsupportedSyntaxError : public ParseError {
 public:
  UnsupportedSyntaxError(std::size_t offset, const std::string& what);
};

enum class EvalErrorKind { UnboundParameter, DivisionByZero, TypeMismatch, Overflow, Domain };

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

Expr parse_expression(std::string_view source);

/// Canonical text; parse_expression(format(e)) == e for every parser-producible tree.
std::string format(const Expr& expr);

/// Referenced parameter names, deduplicated, in first-appearance order.
std::vector<std::string> free_parameters(const Expr& expr);

using Assignment = std::map<std::string, ParamValue, std::less<>>;
using Lookup = std::function<const ParamValue*(std::string_view)>;

ParamValue evaluate(const Expr& expr, const Assignment& assignment);
ParamValue evaluate(const Expr& expr, const Lookup& lookup);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace tunespace
