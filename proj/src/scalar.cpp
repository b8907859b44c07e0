// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/scalar.hpp"

#include <cmath>
#include <limits>

namespace tunespace {

Scalar Scalar::of(const ParamValue& v) {
  Scalar out;
  out.tag = v.tag();
  switch (v.tag()) {
    case ValueTag::Integer: out.i = v.as_integer(); break;
    case ValueTag::Real: out.r = v.as_real(); break;
    case ValueTag::Boolean: out.b = v.as_bool(); break;
    case ValueTag::Text: out.s = &v.as_text(); break;
  }
  return out;
}

ParamValue Scalar::to_value() const {
  switch (tag) {
    case ValueTag::Integer: return ParamValue(i);
    case ValueTag::Real: return ParamValue(r);
    case ValueTag::Boolean: return ParamValue(b);
    case ValueTag::Text: return ParamValue(*s);
  }
  return {};
}

namespace {

bool numeric(Scalar a) { return a.tag == ValueTag::Integer || a.tag == ValueTag::Real; }
double widen(Scalar a) { return a.tag == ValueTag::Integer ? static_cast<double>(a.i) : a.r; }

Scalar make_int(std::int64_t v) {
  Scalar s;
  s.tag = ValueTag::Integer;
  s.i = v;
  return s;
}

Scalar make_real(double v) {
  if (!std::isfinite(v)) throw EvalError(EvalErrorKind::Overflow, "real arithmetic overflow");
  Scalar s;
  s.tag = ValueTag::Real;
  s.r = v;
  return s;
}

[[noreturn]] void mismatch(std::string_view op, Scalar a, Scalar b) {
  throw EvalError(EvalErrorKind::TypeMismatch, "unsupported operand types for '" + std::string(op) + "': " +
                                                   std::string(tag_name(a.tag)) + " and " + std::string(tag_name(b.tag)));
}

[[noreturn]] void overflow(std::string_view op) {
  throw EvalError(EvalErrorKind::Overflow, "integer overflow in '" + std::string(op) + "'");
}

[[noreturn]] void div_zero(std::string_view op) {
  throw EvalError(EvalErrorKind::DivisionByZero, "division by zero in '" + std::string(op) + "'");
}

std::int64_t int_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t result = 1;
  while (exp > 0) {
    if (exp & 1) {
      if (__builtin_mul_overflow(result, base, &result)) overflow("**");
    }
    exp >>= 1;
    if (exp > 0 && __builtin_mul_overflow(base, base, &base)) overflow("**");
  }
  return result;
}

// Floored division of reals, mirroring the remainder-follows-divisor rule.
void real_divmod(double x, double y, double& floordiv, double& mod) {
  mod = std::fmod(x, y);
  double div = (x - mod) / y;
  if (mod != 0.0) {
    if ((y < 0) != (mod < 0)) {
      mod += y;
      div -= 1.0;
    }
  } else {
    mod = std::copysign(0.0, y);
  }
  if (div != 0.0) {
    floordiv = std::floor(div);
    if (div - floordiv > 0.5) floordiv += 1.0;
  } else {
    floordiv = std::copysign(0.0, x / y);
  }
}

}  // namespace

Scalar apply_binary(BinaryOp op, Scalar a, Scalar b) {
  const std::string_view sym = op_symbol(op);
  if (!numeric(a) || !numeric(b)) mismatch(sym, a, b);
  const bool ints = a.tag == ValueTag::Integer && b.tag == ValueTag::Integer;
  switch (op) {
    case BinaryOp::Add: {
      if (!ints) return make_real(widen(a) + widen(b));
      std::int64_t r;
      if (__builtin_add_overflow(a.i, b.i, &r)) overflow(sym);
      return make_int(r);
    }
    case BinaryOp::Sub: {
      if (!ints) return make_real(widen(a) - widen(b));
      std::int64_t r;
      if (__builtin_sub_overflow(a.i, b.i, &r)) overflow(sym);
      return make_int(r);
    }
    case BinaryOp::Mul: {
      if (!ints) return make_real(widen(a) * widen(b));
      std::int64_t r;
      if (__builtin_mul_overflow(a.i, b.i, &r)) overflow(sym);
      return make_int(r);
    }
    case BinaryOp::Div: {
      double y = widen(b);
      if (y == 0.0) div_zero(sym);
      return make_real(widen(a) / y);
    }
    case BinaryOp::FloorDiv:
    case BinaryOp::Mod: {
      if (ints) {
        if (b.i == 0) div_zero(sym);
        if (b.i == -1) {
          if (op == BinaryOp::Mod) return make_int(0);
          if (a.i == std::numeric_limits<std::int64_t>::min()) overflow(sym);
          return make_int(-a.i);
        }
        std::int64_t q = a.i / b.i;
        std::int64_t r = a.i % b.i;
        if (r != 0 && ((r < 0) != (b.i < 0))) {
          --q;
          r += b.i;
        }
        return make_int(op == BinaryOp::FloorDiv ? q : r);
      }
      double y = widen(b);
      if (y == 0.0) div_zero(sym);
      double q, r;
      real_divmod(widen(a), y, q, r);
      return make_real(op == BinaryOp::FloorDiv ? q : r);
    }
    case BinaryOp::Pow: {
      if (ints && b.i >= 0) return make_int(int_pow(a.i, b.i));
      double x = widen(a), y = widen(b);
      if (x == 0.0 && y < 0.0) div_zero(sym);
      double r = std::pow(x, y);
      if (std::isnan(r)) throw EvalError(EvalErrorKind::Domain, "negative base with fractional exponent in '**'");
      return make_real(r);
    }
    case BinaryOp::And:
    case BinaryOp::Or:
      break;
  }
  throw std::logic_error("apply_binary: logical operator");
}

Scalar apply_negate(Scalar a) {
  if (a.tag == ValueTag::Integer) {
    if (a.i == std::numeric_limits<std::int64_t>::min()) overflow("-");
    return make_int(-a.i);
  }
  if (a.tag == ValueTag::Real) return make_real(-a.r);
  throw EvalError(EvalErrorKind::TypeMismatch, "bad operand type for unary '-': " + std::string(tag_name(a.tag)));
}

bool apply_compare(CompareOp op, Scalar a, Scalar b) {
  if (numeric(a) && numeric(b)) {
    if (a.tag == ValueTag::Integer && b.tag == ValueTag::Integer) {
      switch (op) {
        case CompareOp::Lt: return a.i < b.i;
        case CompareOp::Le: return a.i <= b.i;
        case CompareOp::Gt: return a.i > b.i;
        case CompareOp::Ge: return a.i >= b.i;
        case CompareOp::Eq: return a.i == b.i;
        case CompareOp::Ne: return a.i != b.i;
      }
    }
    const double x = widen(a), y = widen(b);
    switch (op) {
      case CompareOp::Lt: return x < y;
      case CompareOp::Le: return x <= y;
      case CompareOp::Gt: return x > y;
      case CompareOp::Ge: return x >= y;
      case CompareOp::Eq: return x == y;
      case CompareOp::Ne: return x != y;
    }
  }
  if (a.tag == b.tag && (op == CompareOp::Eq || op == CompareOp::Ne)) {
    bool eq = a.tag == ValueTag::Boolean ? a.b == b.b : *a.s == *b.s;
    return op == CompareOp::Eq ? eq : !eq;
  }
  mismatch(op_symbol(op), a, b);
}

bool require_bool(Scalar a, std::string_view context) {
  if (a.tag != ValueTag::Boolean) {
    throw EvalError(EvalErrorKind::TypeMismatch,
                    std::string(context) + " must be boolean, got " + std::string(tag_name(a.tag)));
  }
  return a.b;
}

// ---------------------------------------------------------------------------
// CompiledExpr

CompiledExpr::CompiledExpr(const Expr& expr, const SlotResolver& slot_of) { emit(expr, slot_of, 0); }

void CompiledExpr::emit(const Expr& e, const SlotResolver& slot_of, std::size_t depth) {
  // `depth` is the number of values below the one this subtree leaves.
  max_depth_ = std::max(max_depth_, depth + 1);
  switch (e.kind()) {
    case Expr::Kind::Literal:
      constants_.push_back(e.value());
      code_.push_back({OpCode::Const, 0, static_cast<std::uint32_t>(constants_.size() - 1)});
      return;
    case Expr::Kind::ParamRef:
      code_.push_back({OpCode::Slot, 0, static_cast<std::uint32_t>(slot_of(e.name()))});
      return;
    case Expr::Kind::Unary:
      emit(e.operand(), slot_of, depth);
      code_.push_back({e.unary_op() == UnaryOp::Negate ? OpCode::Negate : OpCode::Not, 0, 0});
      return;
    case Expr::Kind::Binary: {
      const BinaryOp op = e.binary_op();
      if (op == BinaryOp::And || op == BinaryOp::Or) {
        emit(e.left(), slot_of, depth);
        const std::size_t jump = code_.size();
        code_.push_back({op == BinaryOp::And ? OpCode::AndJump : OpCode::OrJump, static_cast<std::uint8_t>(op), 0});
        emit(e.right(), slot_of, depth);
        code_.push_back({OpCode::AssertBool, static_cast<std::uint8_t>(op), 0});
        code_[jump].arg = static_cast<std::uint32_t>(code_.size());
        return;
      }
      emit(e.left(), slot_of, depth);
      emit(e.right(), slot_of, depth + 1);
      code_.push_back({OpCode::Arith, static_cast<std::uint8_t>(op), 0});
      return;
    }
    case Expr::Kind::Comparison: {
      const auto& xs = e.operands();
      emit(xs[0], slot_of, depth);
      std::vector<std::size_t> steps;
      for (std::size_t i = 1; i < xs.size(); ++i) {
        emit(xs[i], slot_of, depth + 1);
        const auto op = static_cast<std::uint8_t>(e.compare_ops()[i - 1]);
        if (i + 1 < xs.size()) {
          steps.push_back(code_.size());
          code_.push_back({OpCode::CmpStep, op, 0});
        } else {
          code_.push_back({OpCode::CmpLast, op, 0});
        }
      }
      for (std::size_t s : steps) code_[s].arg = static_cast<std::uint32_t>(code_.size());
      return;
    }
  }
}

Scalar CompiledExpr::run_on(std::span<const Scalar> slots, Scalar* stack) const {
  std::size_t sp = 0;
  const std::size_t n = code_.size();
  for (std::size_t pc = 0; pc < n; ++pc) {
    const Instr& ins = code_[pc];
    switch (ins.op) {
      case OpCode::Const:
        stack[sp++] = Scalar::of(constants_[ins.arg]);
        break;
      case OpCode::Slot:
        stack[sp++] = slots[ins.arg];
        break;
      case OpCode::Negate:
        stack[sp - 1] = apply_negate(stack[sp - 1]);
        break;
      case OpCode::Not:
        stack[sp - 1] = Scalar::boolean(!require_bool(stack[sp - 1], "operand of 'not'"));
        break;
      case OpCode::Arith:
        --sp;
        stack[sp - 1] = apply_binary(static_cast<BinaryOp>(ins.sub), stack[sp - 1], stack[sp]);
        break;
      case OpCode::AndJump:
      case OpCode::OrJump: {
        const bool is_and = ins.op == OpCode::AndJump;
        const bool v = require_bool(stack[sp - 1], is_and ? "operand of 'and'" : "operand of 'or'");
        if (v != is_and) {
          pc = ins.arg - 1;  // short-circuit result stays on the stack
        } else {
          --sp;
        }
        break;
      }
      case OpCode::AssertBool:
        require_bool(stack[sp - 1], static_cast<BinaryOp>(ins.sub) == BinaryOp::And ? "operand of 'and'" : "operand of 'or'");
        break;
      case OpCode::CmpStep: {
        const Scalar right = stack[--sp];
        if (!apply_compare(static_cast<CompareOp>(ins.sub), stack[sp - 1], right)) {
          stack[sp - 1] = Scalar::boolean(false);
          pc = ins.arg - 1;
        } else {
          stack[sp - 1] = right;
        }
        break;
      }
      case OpCode::CmpLast: {
        const Scalar right = stack[--sp];
        stack[sp - 1] = Scalar::boolean(apply_compare(static_cast<CompareOp>(ins.sub), stack[sp - 1], right));
        break;
      }
    }
  }
  return stack[0];
}

Scalar CompiledExpr::run(std::span<const Scalar> slots) const {
  if (max_depth_ <= 32) {
    Scalar stack[32];
    return run_on(slots, stack);
  }
  std::vector<Scalar> stack(max_depth_);
  return run_on(slots, stack.data());
}

bool CompiledExpr::test(std::span<const Scalar> slots) const { return require_bool(run(slots), "constraint result"); }

}  // namespace tunespace
