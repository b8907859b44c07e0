// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tunespace/expr.hpp"
#include "tunespace/value.hpp"

namespace tunespace {

/// Trivially copyable view of a ParamValue used on evaluation hot paths.
/// Text scalars borrow the string of the value they were made from.
struct Scalar {
  ValueTag tag = ValueTag::Integer;
  union {
    std::int64_t i;
    double r;
    bool b;
    const std::string* s;
  };

  Scalar() : i(0) {}
  static Scalar of(const ParamValue& v);
  static Scalar boolean(bool v) {
    Scalar out;
    out.tag = ValueTag::Boolean;
    out.b = v;
    return out;
  }
  ParamValue to_value() const;
};

// Arithmetic and comparison semantics shared by every evaluator.
Scalar apply_binary(BinaryOp op, Scalar a, Scalar b);  // arithmetic ops only
Scalar apply_negate(Scalar a);
bool apply_compare(CompareOp op, Scalar a, Scalar b);
bool require_bool(Scalar a, std::string_view context);

/// An Expr flattened into a postfix program over numbered slots.
///
/// Built once per constraint; evaluation needs no allocation for programs of
/// stack depth up to 32.
class CompiledExpr {
 public:
  using SlotResolver = std::function<std::size_t(std::string_view)>;

  CompiledExpr() = default;
  CompiledExpr(const Expr& expr, const SlotResolver& slot_of);

  Scalar run(std::span<const Scalar> slots) const;
  /// Runs and requires a boolean result.
  bool test(std::span<const Scalar> slots) const;

  std::size_t size() const { return code_.size(); }

 private:
  enum class OpCode : std::uint8_t { Const, Slot, Negate, Not, Arith, AndJump, OrJump, AssertBool, CmpStep, CmpLast };
  struct Instr {
    OpCode op;
    std::uint8_t sub;  // BinaryOp / CompareOp
    std::uint32_t arg; // constant index, slot index or jump target
  };

  void emit(const Expr& e, const SlotResolver& slot_of, std::size_t depth);
  Scalar run_on(std::span<const Scalar> slots, Scalar* stack) const;

  std::vector<Instr> code_;
  std::vector<ParamValue> constants_;
  std::size_t max_depth_ = 0;
};

}  // namespace tunespace
