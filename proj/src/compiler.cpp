// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/compiler.hpp"

#include <algorithm>
#include <unordered_map>

namespace tunespace {

std::string_view kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::ExactSum: return "ExactSum";
    case ConstraintKind::MinSum: return "MinSum";
    case ConstraintKind::MaxSum: return "MaxSum";
    case ConstraintKind::ExactProduct: return "ExactProduct";
    case ConstraintKind::MinProduct: return "MinProduct";
    case ConstraintKind::MaxProduct: return "MaxProduct";
    case ConstraintKind::UnaryRestriction: return "UnaryRestriction";
    case ConstraintKind::Generic: return "Generic";
  }
  return "?";
}

bool CompiledConstraint::is_sum() const {
  return kind == ConstraintKind::ExactSum || kind == ConstraintKind::MinSum || kind == ConstraintKind::MaxSum;
}

bool CompiledConstraint::is_product() const {
  return kind == ConstraintKind::ExactProduct || kind == ConstraintKind::MinProduct ||
         kind == ConstraintKind::MaxProduct;
}

std::string CompiledConstraint::describe() const {
  std::string out(kind_name(kind));
  out += '(';
  if (is_specific()) {
    if (strict) out += (kind == ConstraintKind::MaxSum || kind == ConstraintKind::MaxProduct) ? "<" : ">";
    out += limit->to_string();
    out += ", [";
    for (std::size_t i = 0; i < scope.size(); ++i) {
      if (i > 0) out += ", ";
      out += scope[i];
    }
    out += ']';
  } else {
    out += format(predicate);
  }
  return out + ')';
}

bool operator==(const CompiledConstraint& a, const CompiledConstraint& b) {
  if (a.kind != b.kind || a.scope != b.scope || a.limit != b.limit || a.strict != b.strict) return false;
  if (!a.is_specific()) return a.predicate == b.predicate;
  return true;
}

CompileError::CompileError(Reason reason, std::size_t source_index, const std::string& message, std::string identifier)
    : std::runtime_error("constraint #" + std::to_string(source_index) + ": " + message),
      reason_(reason),
      source_index_(source_index),
      identifier_(std::move(identifier)) {}

std::vector<Expr> split_conjunctions(const Expr& expr) {
  std::vector<Expr> out;
  if (expr.kind() == Expr::Kind::Binary && expr.binary_op() == BinaryOp::And) {
    for (const Expr& side : {expr.left(), expr.right()}) {
      auto parts = split_conjunctions(side);
      out.insert(out.end(), parts.begin(), parts.end());
    }
  } else if (expr.kind() == Expr::Kind::Comparison && expr.operands().size() > 2) {
    const auto& xs = expr.operands();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      out.push_back(Expr::compare({xs[i], xs[i + 1]}, {expr.compare_ops()[i]}));
    }
  } else {
    out.push_back(expr);
  }
  return out;
}

namespace {

// Collects the leaves of a flat `a op b op c` tree of bare, distinct parameter
// references. Fails on anything else.
bool flat_terms(const Expr& e, BinaryOp op, std::vector<std::string>& terms) {
  if (e.kind() == Expr::Kind::ParamRef) {
    if (std::find(terms.begin(), terms.end(), e.name()) != terms.end()) return false;
    terms.push_back(e.name());
    return true;
  }
  if (e.kind() == Expr::Kind::Binary && e.binary_op() == op) {
    return flat_terms(e.left(), op, terms) && flat_terms(e.right(), op, terms);
  }
  return false;
}

struct Aggregate {
  bool product;
  std::vector<std::string> terms;
};

std::optional<Aggregate> match_aggregate(const Expr& e) {
  for (BinaryOp op : {BinaryOp::Mul, BinaryOp::Add}) {
    if (e.kind() != Expr::Kind::Binary || e.binary_op() != op) continue;
    std::vector<std::string> terms;
    if (flat_terms(e, op, terms) && terms.size() >= 2) return Aggregate{op == BinaryOp::Mul, std::move(terms)};
  }
  return std::nullopt;
}

std::optional<ParamValue> closed_numeric(const Expr& e) {
  if (!free_parameters(e).empty()) return std::nullopt;
  try {
    ParamValue v = evaluate(e, Assignment{});
    if (v.is_numeric()) return v;
  } catch (const EvalError&) {
  }
  return std::nullopt;
}

CompareOp mirror(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return CompareOp::Gt;
    case CompareOp::Le: return CompareOp::Ge;
    case CompareOp::Gt: return CompareOp::Lt;
    case CompareOp::Ge: return CompareOp::Le;
    default: return op;
  }
}

std::optional<CompiledConstraint> classify_specific(const Expr& expr, const std::string& origin) {
  if (expr.kind() != Expr::Kind::Comparison || expr.operands().size() != 2) return std::nullopt;
  CompareOp op = expr.compare_ops()[0];
  if (op == CompareOp::Ne) return std::nullopt;
  auto agg = match_aggregate(expr.operands()[0]);
  auto limit = closed_numeric(expr.operands()[1]);
  if (!agg || !limit) {
    agg = match_aggregate(expr.operands()[1]);
    limit = closed_numeric(expr.operands()[0]);
    op = mirror(op);
  }
  if (!agg || !limit) return std::nullopt;

  ConstraintKind kind;
  bool strict = false;
  switch (op) {
    case CompareOp::Lt: strict = true; [[fallthrough]];
    case CompareOp::Le: kind = agg->product ? ConstraintKind::MaxProduct : ConstraintKind::MaxSum; break;
    case CompareOp::Gt: strict = true; [[fallthrough]];
    case CompareOp::Ge: kind = agg->product ? ConstraintKind::MinProduct : ConstraintKind::MinSum; break;
    case CompareOp::Eq: kind = agg->product ? ConstraintKind::ExactProduct : ConstraintKind::ExactSum; break;
    default: return std::nullopt;
  }
  return CompiledConstraint{kind, std::move(agg->terms), limit, strict, expr, origin};
}

}  // namespace

std::optional<CompiledConstraint> classify(const Expr& expr, std::string origin) {
  std::vector<std::string> scope = free_parameters(expr);
  if (origin.empty()) origin = format(expr);
  if (scope.empty()) {
    ParamValue v;
    try {
      v = evaluate(expr, Assignment{});
    } catch (const EvalError& e) {
      throw CompileError(CompileError::Reason::Evaluation, 0, "'" + format(expr) + "': " + e.what());
    }
    if (!v.is_bool()) {
      throw CompileError(CompileError::Reason::NotBoolean, 0, "'" + format(expr) + "' is not a boolean expression");
    }
    if (v.as_bool()) return std::nullopt;
    throw CompileError(CompileError::Reason::Unsatisfiable, 0, "'" + format(expr) + "' is always false");
  }
  if (scope.size() == 1) {
    return CompiledConstraint{ConstraintKind::UnaryRestriction, std::move(scope), std::nullopt, false, expr, origin};
  }
  if (auto specific = classify_specific(expr, origin)) return specific;
  return CompiledConstraint{ConstraintKind::Generic, std::move(scope), std::nullopt, false, expr, origin};
}

namespace {

Domain restrict_domain(const Domain& domain, const CompiledConstraint& c, std::size_t source_index) {
  std::vector<ParamValue> kept;
  const std::string& name = c.scope.front();
  for (const ParamValue& v : domain) {
    ParamValue result;
    try {
      result = evaluate(c.predicate, Lookup([&](std::string_view n) { return n == name ? &v : nullptr; }));
    } catch (const EvalError& e) {
      throw CompileError(CompileError::Reason::Evaluation, source_index,
                         "'" + c.origin + "' with " + name + " = " + v.to_string() + ": " + e.what());
    }
    if (!result.is_bool()) {
      throw CompileError(CompileError::Reason::NotBoolean, source_index, "'" + c.origin + "' is not a boolean expression");
    }
    if (result.as_bool()) kept.push_back(v);
  }
  return Domain(std::move(kept));
}

}  // namespace

CompileResult compile_constraints(const std::vector<std::string>& sources, const std::vector<Parameter>& parameters) {
  CompileResult result;
  result.parameters = parameters;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < parameters.size(); ++i) index.emplace(parameters[i].name, i);

  for (std::size_t s = 0; s < sources.size(); ++s) {
    Expr expr = [&] {
      try {
        return parse_expression(sources[s]);
      } catch (const ParseError& e) {
        throw CompileError(CompileError::Reason::Parse, s, e.what());
      }
    }();
    for (const std::string& name : free_parameters(expr)) {
      if (!index.count(name)) {
        throw CompileError(CompileError::Reason::UnknownParameter, s, "unknown parameter '" + name + "'", name);
      }
    }
    for (const Expr& part : split_conjunctions(expr)) {
      std::optional<CompiledConstraint> c;
      try {
        c = classify(part, sources[s]);
      } catch (const CompileError& e) {
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw CompileError(e.reason(), s, msg);
      }
      if (!c) continue;
      if (c->kind == ConstraintKind::UnaryRestriction) {
        Parameter& p = result.parameters[index.at(c->scope.front())];
        p.domain = restrict_domain(p.domain, *c, s);
      } else {
        result.constraints.push_back(std::move(*c));
      }
    }
  }
  return result;
}

}  // namespace tunespace
