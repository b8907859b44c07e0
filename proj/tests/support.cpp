// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <cmath>
#include <limits>

namespace testing_support {

using tunespace::BinaryOp;
using tunespace::CompareOp;
using tunespace::EvalErrorKind;
using tunespace::UnaryOp;
using I128 = __int128;

namespace {

struct Fail {
  EvalErrorKind kind;
};

bool fits(I128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

ParamValue make_int(I128 v) {
  if (!fits(v)) throw Fail{EvalErrorKind::Overflow};
  return ParamValue(static_cast<std::int64_t>(v));
}

ParamValue make_real(double v) {
  if (std::isnan(v)) throw Fail{EvalErrorKind::Domain};
  if (std::isinf(v)) throw Fail{EvalErrorKind::Overflow};
  return ParamValue(v);
}

double real_of(const ParamValue& v) { return v.is_integer() ? static_cast<double>(v.as_integer()) : v.as_real(); }

const ParamValue& need_bool(const ParamValue& v) {
  if (!v.is_bool()) throw Fail{EvalErrorKind::TypeMismatch};
  return v;
}

// Python's float floor division and modulo.
std::pair<double, double> py_float_divmod(double vx, double wx) {
  double mod = std::fmod(vx, wx);
  double div = (vx - mod) / wx;
  if (mod != 0) {
    if ((wx < 0) != (mod < 0)) {
      mod += wx;
      div -= 1.0;
    }
  } else {
    mod = std::copysign(0.0, wx);
  }
  double floordiv;
  if (div != 0) {
    floordiv = std::floor(div);
    if (div - floordiv > 0.5) floordiv += 1.0;
  } else {
    floordiv = std::copysign(0.0, vx / wx);
  }
  return {floordiv, mod};
}

ParamValue arith(BinaryOp op, const ParamValue& a, const ParamValue& b) {
  if (!a.is_numeric() || !b.is_numeric()) throw Fail{EvalErrorKind::TypeMismatch};
  const bool ints = a.is_integer() && b.is_integer();
  const I128 x = ints ? a.as_integer() : 0, y = ints ? b.as_integer() : 0;
  const double rx = real_of(a), ry = real_of(b);
  switch (op) {
    case BinaryOp::Add: return ints ? make_int(x + y) : make_real(rx + ry);
    case BinaryOp::Sub: return ints ? make_int(x - y) : make_real(rx - ry);
    case BinaryOp::Mul: return ints ? make_int(x * y) : make_real(rx * ry);
    case BinaryOp::Div:
      if (ry == 0) throw Fail{EvalErrorKind::DivisionByZero};
      return make_real(rx / ry);
    case BinaryOp::FloorDiv:
    case BinaryOp::Mod: {
      if (ints) {
        if (y == 0) throw Fail{EvalErrorKind::DivisionByZero};
        I128 q = x / y;
        if (q * y != x && ((x < 0) != (y < 0))) q -= 1;
        return op == BinaryOp::FloorDiv ? make_int(q) : make_int(x - q * y);
      }
      if (ry == 0) throw Fail{EvalErrorKind::DivisionByZero};
      auto [q, r] = py_float_divmod(rx, ry);
      return make_real(op == BinaryOp::FloorDiv ? q : r);
    }
    case BinaryOp::Pow: {
      if (ints && y >= 0) {
        if (x == 0) return make_int(y == 0 ? 1 : 0);
        if (x == 1) return make_int(1);
        if (x == -1) return make_int(y % 2 == 0 ? 1 : -1);
        if (y >= 64) throw Fail{EvalErrorKind::Overflow};
        I128 acc = 1;
        for (I128 k = 0; k < y; ++k) {
          acc *= x;
          if (!fits(acc)) throw Fail{EvalErrorKind::Overflow};
        }
        return make_int(acc);
      }
      if (rx == 0 && ry < 0) throw Fail{EvalErrorKind::DivisionByZero};
      return make_real(std::pow(rx, ry));
    }
    default: break;
  }
  throw std::logic_error("not arithmetic");
}

bool compare(CompareOp op, const ParamValue& a, const ParamValue& b) {
  if (a.is_numeric() && b.is_numeric()) {
    int c;
    if (a.is_integer() && b.is_integer()) {
      c = a.as_integer() < b.as_integer() ? -1 : (a.as_integer() > b.as_integer() ? 1 : 0);
    } else {
      const double x = real_of(a), y = real_of(b);
      c = x < y ? -1 : (x > y ? 1 : 0);
    }
    switch (op) {
      case CompareOp::Lt: return c < 0;
      case CompareOp::Le: return c <= 0;
      case CompareOp::Gt: return c > 0;
      case CompareOp::Ge: return c >= 0;
      case CompareOp::Eq: return c == 0;
      case CompareOp::Ne: return c != 0;
    }
  }
  if (a.tag() == b.tag() && (op == CompareOp::Eq || op == CompareOp::Ne)) return (a == b) == (op == CompareOp::Eq);
  throw Fail{EvalErrorKind::TypeMismatch};
}

ParamValue eval(const Expr& e, const Env& env) {
  switch (e.kind()) {
    case Expr::Kind::Literal: return e.value();
    case Expr::Kind::ParamRef: {
      auto it = env.find(e.name());
      if (it == env.end()) throw Fail{EvalErrorKind::UnboundParameter};
      return it->second;
    }
    case Expr::Kind::Unary: {
      const ParamValue v = eval(e.operand(), env);
      if (e.unary_op() == UnaryOp::Not) return ParamValue(!need_bool(v).as_bool());
      if (v.is_integer()) return make_int(-I128(v.as_integer()));
      if (v.is_real()) return make_real(-v.as_real());
      throw Fail{EvalErrorKind::TypeMismatch};
    }
    case Expr::Kind::Binary: {
      if (e.binary_op() == BinaryOp::And || e.binary_op() == BinaryOp::Or) {
        const bool left = need_bool(eval(e.left(), env)).as_bool();
        if (e.binary_op() == BinaryOp::And && !left) return ParamValue(false);
        if (e.binary_op() == BinaryOp::Or && left) return ParamValue(true);
        return ParamValue(need_bool(eval(e.right(), env)).as_bool());
      }
      const ParamValue a = eval(e.left(), env);
      const ParamValue b = eval(e.right(), env);
      return arith(e.binary_op(), a, b);
    }
    case Expr::Kind::Comparison: {
      ParamValue left = eval(e.operands()[0], env);
      for (std::size_t i = 0; i < e.compare_ops().size(); ++i) {
        ParamValue right = eval(e.operands()[i + 1], env);
        if (!compare(e.compare_ops()[i], left, right)) return ParamValue(false);
        left = std::move(right);
      }
      return ParamValue(true);
    }
  }
  throw std::logic_error("unknown node");
}

std::vector<std::string> canonical(const Configuration& c) {
  std::vector<std::string> out;
  for (const ParamValue& v : c) out.push_back(v.to_string() + ":" + std::string(tunespace::tag_name(v.tag())));
  return out;
}

}  // namespace

Outcome naive_eval(const Expr& e, const Env& env) {
  try {
    return {eval(e, env), std::nullopt};
  } catch (const Fail& f) {
    return {std::nullopt, f.kind};
  }
}

std::optional<std::set<std::vector<std::string>>> naive_solutions(const std::vector<Parameter>& params,
                                                                  const std::vector<std::string>& sources) {
  std::vector<Expr> exprs;
  for (const std::string& s : sources) exprs.push_back(tunespace::parse_expression(s));
  std::set<std::vector<std::string>> out;
  for (const Parameter& p : params) {
    if (p.domain.empty()) return out;
  }
  std::vector<std::size_t> digit(params.size(), 0);
  for (;;) {
    Env env;
    Configuration config;
    for (std::size_t p = 0; p < params.size(); ++p) {
      env.emplace(params[p].name, params[p].domain[digit[p]]);
      config.push_back(params[p].domain[digit[p]]);
    }
    bool all = true;
    for (const Expr& e : exprs) {
      const Outcome o = naive_eval(e, env);
      if (!o.value || !o.value->is_bool()) return std::nullopt;
      if (!o.value->as_bool()) all = false;
    }
    if (all) out.insert(canonical(config));
    std::size_t p = params.size();
    while (p-- > 0) {
      if (++digit[p] < params[p].domain.size()) break;
      digit[p] = 0;
    }
    if (p == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::set<std::vector<std::string>> as_set(const std::vector<Configuration>& configs) {
  std::set<std::vector<std::string>> out;
  for (const Configuration& c : configs) out.insert(canonical(c));
  return out;
}

std::set<std::vector<std::string>> as_set(const tunespace::SolutionSet& solutions) {
  return as_set(solutions.configurations());
}

std::vector<Parameter> int_params(const std::vector<std::vector<std::int64_t>>& domains) {
  std::vector<Parameter> out;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    std::vector<ParamValue> values(domains[i].begin(), domains[i].end());
    out.push_back({"p" + std::to_string(i), tunespace::Domain(std::move(values))});
  }
  return out;
}

Expr ExprGen::leaf_number() {
  if (!names_.empty() && pick(3) > 0) return Expr::param(names_[static_cast<std::size_t>(pick(static_cast<int>(names_.size())))]);
  return Expr::literal(ParamValue(static_cast<std::int64_t>(pick(9))));
}

Expr ExprGen::arith(int depth) {
  if (depth <= 0 || pick(4) == 0) return leaf_number();
  switch (pick(8)) {
    case 0: return Expr::unary(UnaryOp::Negate, arith(depth - 1));
    case 1: return Expr::binary(BinaryOp::Add, arith(depth - 1), arith(depth - 1));
    case 2: return Expr::binary(BinaryOp::Sub, arith(depth - 1), arith(depth - 1));
    case 3: return Expr::binary(BinaryOp::Mul, arith(depth - 1), arith(depth - 1));
    case 4: return Expr::binary(BinaryOp::FloorDiv, arith(depth - 1), arith(depth - 1));
    case 5: return Expr::binary(BinaryOp::Mod, arith(depth - 1), arith(depth - 1));
    case 6: return Expr::binary(BinaryOp::Div, arith(depth - 1), arith(depth - 1));
    default: return Expr::binary(BinaryOp::Pow, leaf_number(), Expr::literal(ParamValue(static_cast<std::int64_t>(pick(4)))));
  }
}

Expr ExprGen::boolean(int depth) {
  static const CompareOp kOps[] = {CompareOp::Lt, CompareOp::Le, CompareOp::Gt,
                                   CompareOp::Ge, CompareOp::Eq, CompareOp::Ne};
  if (depth <= 0 || pick(3) == 0) {
    const int n = 2 + pick(3);
    std::vector<Expr> operands;
    std::vector<CompareOp> ops;
    for (int i = 0; i < n; ++i) operands.push_back(arith(depth > 0 ? depth - 1 : 0));
    for (int i = 0; i + 1 < n; ++i) ops.push_back(kOps[pick(6)]);
    return Expr::compare(std::move(operands), std::move(ops));
  }
  switch (pick(4)) {
    case 0: return Expr::unary(UnaryOp::Not, boolean(depth - 1));
    case 1: return Expr::binary(BinaryOp::Or, boolean(depth - 1), boolean(depth - 1));
    default: return Expr::binary(BinaryOp::And, boolean(depth - 1), boolean(depth - 1));
  }
}

Expr ExprGen::any(int depth) {
  static const BinaryOp kOps[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div, BinaryOp::FloorDiv,
                                  BinaryOp::Mod, BinaryOp::Pow, BinaryOp::And, BinaryOp::Or};
  static const CompareOp kCmp[] = {CompareOp::Lt, CompareOp::Le, CompareOp::Gt,
                                   CompareOp::Ge, CompareOp::Eq, CompareOp::Ne};
  if (depth <= 0 || pick(5) == 0) {
    switch (pick(6)) {
      case 0: return Expr::literal(ParamValue(pick(2) == 0));
      case 1: return Expr::literal(ParamValue(0.5 * pick(7)));
      case 2: return Expr::literal(ParamValue(std::string(1, static_cast<char>('a' + pick(3)))));
      default: return leaf_number();
    }
  }
  switch (pick(4)) {
    case 0: return Expr::unary(pick(2) == 0 ? UnaryOp::Negate : UnaryOp::Not, any(depth - 1));
    case 1: {
      const int n = 2 + pick(2);
      std::vector<Expr> operands;
      std::vector<CompareOp> ops;
      for (int i = 0; i < n; ++i) operands.push_back(any(depth - 1));
      for (int i = 0; i + 1 < n; ++i) ops.push_back(kCmp[pick(6)]);
      return Expr::compare(std::move(operands), std::move(ops));
    }
    default: return Expr::binary(kOps[pick(9)], any(depth - 1), any(depth - 1));
  }
}

}  // namespace testing_support
