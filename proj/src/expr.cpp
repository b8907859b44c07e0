// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>

#include "tunespace/scalar.hpp"

namespace tunespace {

std::string_view op_symbol(UnaryOp op) { return op == UnaryOp::Negate ? "-" : "not"; }

std::string_view op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Pow: return "**";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

std::string_view op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::literal(ParamValue value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Literal;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::ParamRef;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Unary;
  n->unary_op = op;
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Binary;
  n->binary_op = op;
  n->children = {std::move(left), std::move(right)};
  return Expr(std::move(n));
}

Expr Expr::compare(std::vector<Expr> operands, std::vector<CompareOp> ops) {
  if (operands.size() < 2 || ops.size() + 1 != operands.size()) {
    throw std::invalid_argument("comparison needs n >= 2 operands and n - 1 operators");
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Comparison;
  n->children = std::move(operands);
  n->ops = std::move(ops);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const ParamValue& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
UnaryOp Expr::unary_op() const { return node_->unary_op; }
BinaryOp Expr::binary_op() const { return node_->binary_op; }
const Expr& Expr::operand() const { return node_->children.at(0); }
const Expr& Expr::left() const { return node_->children.at(0); }
const Expr& Expr::right() const { return node_->children.at(1); }
const std::vector<Expr>& Expr::operands() const { return node_->children; }
const std::vector<CompareOp>& Expr::compare_ops() const { return node_->ops; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const ExprNode& x = *a.node_;
  const ExprNode& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Literal:
      return x.value == y.value;
    case Expr::Kind::ParamRef:
      return x.name == y.name;
    case Expr::Kind::Unary:
      if (x.unary_op != y.unary_op) return false;
      break;
    case Expr::Kind::Binary:
      if (x.binary_op != y.binary_op) return false;
      break;
    case Expr::Kind::Comparison:
      if (x.ops != y.ops) return false;
      break;
  }
  return x.children == y.children;
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string parse_message(std::size_t offset, const std::string& expected, const std::string& found) {
  return "syntax error at offset " + std::to_string(offset) + ": expected " + expected + ", found " + found;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : std::runtime_error(parse_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

ParseError::ParseError(std::size_t offset, std::string message, int)
    : std::runtime_error(std::move(message)), offset_(offset) {}

UnsupportedSyntaxError::UnsupportedSyntaxError(std::size_t offset, const std::string& what)
    : ParseError(offset, "unsupported syntax at offset " + std::to_string(offset) + ": " + what, 0) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Int, Real, Text, Name, Op, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  ParamValue value;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Text: return "string literal";
    default: return "'" + t.text + "'";
  }
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(src[i + 1]))) {
      bool real = false;
      while (i < n && is_digit(src[i])) ++i;
      if (i < n && src[i] == '.') {
        real = true;
        ++i;
        while (i < n && is_digit(src[i])) ++i;
      }
      if (i < n && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
        if (j >= n || !is_digit(src[j])) throw ParseError(j, "exponent digits", j >= n ? "end of input" : std::string(1, src[j]));
        real = true;
        i = j;
        while (i < n && is_digit(src[i])) ++i;
      }
      if (i < n && is_ident_start(src[i])) throw ParseError(i, "operator", "'" + std::string(1, src[i]) + "'");
      std::string text(src.substr(start, i - start));
      Token t{real ? Tok::Real : Tok::Int, text, start, {}};
      if (real) {
        double v = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc() || !std::isfinite(v)) throw ParseError(start, "finite real literal", text);
        t.value = ParamValue(v);
      } else {
        std::int64_t v = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc()) throw ParseError(start, "integer literal within 64 bits", text);
        t.value = ParamValue(v);
      }
      out.push_back(std::move(t));
      continue;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(src[i])) ++i;
      out.push_back({Tok::Name, std::string(src.substr(start, i - start)), start, {}});
      continue;
    }
    if (c == '\'' || c == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n) {
          s += src[i + 1];
          i += 2;
        } else if (src[i] == c) {
          closed = true;
          ++i;
          break;
        } else {
          s += src[i++];
        }
      }
      if (!closed) throw ParseError(n, "closing quote", "end of input");
      out.push_back({Tok::Text, std::string(src.substr(start, i - start)), start, ParamValue(std::move(s))});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "**" || two == "//" || two == "<=" || two == ">=" || two == "==" || two == "!=") {
      out.push_back({Tok::Op, std::string(two), start, {}});
      i += 2;
      continue;
    }
    if (two == "<<" || two == ">>" || two == "<>" || two == ":=") {
      throw UnsupportedSyntaxError(start, "operator '" + std::string(two) + "'");
    }
    if (std::string_view("+-*/%<>()").find(c) != std::string_view::npos) {
      out.push_back({Tok::Op, std::string(1, c), start, {}});
      ++i;
      continue;
    }
    if (std::string_view("[],:&|^~@{}=!.;").find(c) != std::string_view::npos) {
      throw UnsupportedSyntaxError(start, "operator '" + std::string(1, c) + "'");
    }
    throw ParseError(start, "expression", "character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", n, {}});
  return out;
}

bool is_reserved(const std::string& name) {
  static const char* const kReserved[] = {"lambda", "if", "else", "in", "is", "for", "None", "while",
                                           "def", "return", "import", "from", "async", "await", "yield"};
  return std::any_of(std::begin(kReserved), std::end(kReserved), [&](const char* k) { return name == k; });
}

// ---------------------------------------------------------------------------
// Parser: recursive descent, one function per precedence level.

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse_all() {
    Expr e = parse_or();
    const Token& t = peek();
    if (t.kind != Tok::End) {
      if (t.kind == Tok::Name && (is_reserved(t.text) || t.text == "not")) {
        throw UnsupportedSyntaxError(t.offset, "keyword '" + t.text + "'");
      }
      throw ParseError(t.offset, "operator or end of input", describe(t));
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool at_name(std::string_view kw) const { return peek().kind == Tok::Name && peek().text == kw; }

  Expr parse_or() {
    Expr left = parse_and();
    while (at_name("or")) {
      ++pos_;
      left = Expr::binary(BinaryOp::Or, left, parse_and());
    }
    return left;
  }

  Expr parse_and() {
    Expr left = parse_not();
    while (at_name("and")) {
      ++pos_;
      left = Expr::binary(BinaryOp::And, left, parse_not());
    }
    return left;
  }

  Expr parse_not() {
    if (at_name("not")) {
      ++pos_;
      return Expr::unary(UnaryOp::Not, parse_not());
    }
    return parse_comparison();
  }

  static bool compare_op(const Token& t, CompareOp& out) {
    if (t.kind != Tok::Op) return false;
    static const std::pair<const char*, CompareOp> kOps[] = {{"<", CompareOp::Lt},  {"<=", CompareOp::Le},
                                                             {">", CompareOp::Gt},  {">=", CompareOp::Ge},
                                                             {"==", CompareOp::Eq}, {"!=", CompareOp::Ne}};
    for (const auto& [sym, op] : kOps) {
      if (t.text == sym) {
        out = op;
        return true;
      }
    }
    return false;
  }

  Expr parse_comparison() {
    Expr first = parse_arith();
    CompareOp op{};
    if (!compare_op(peek(), op)) return first;
    std::vector<Expr> operands{first};
    std::vector<CompareOp> ops;
    while (compare_op(peek(), op)) {
      ++pos_;
      ops.push_back(op);
      operands.push_back(parse_arith());
    }
    return Expr::compare(std::move(operands), std::move(ops));
  }

  Expr parse_arith() {
    Expr left = parse_term();
    while (at_op("+") || at_op("-")) {
      BinaryOp op = peek().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      ++pos_;
      left = Expr::binary(op, left, parse_term());
    }
    return left;
  }

  Expr parse_term() {
    Expr left = parse_unary();
    for (;;) {
      BinaryOp op;
      if (at_op("*")) op = BinaryOp::Mul;
      else if (at_op("/")) op = BinaryOp::Div;
      else if (at_op("//")) op = BinaryOp::FloorDiv;
      else if (at_op("%")) op = BinaryOp::Mod;
      else return left;
      ++pos_;
      left = Expr::binary(op, left, parse_unary());
    }
  }

  Expr parse_unary() {
    if (at_op("-")) {
      ++pos_;
      return Expr::unary(UnaryOp::Negate, parse_unary());
    }
    if (at_op("+")) {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (at_op("**")) {
      ++pos_;
      return Expr::binary(BinaryOp::Pow, base, parse_unary());
    }
    return base;
  }

  Expr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
      case Tok::Real:
      case Tok::Text:
        ++pos_;
        return Expr::literal(t.value);
      case Tok::Name: {
        if (t.text == "True" || t.text == "False") {
          ++pos_;
          return Expr::literal(ParamValue(t.text == "True"));
        }
        if (t.text == "and" || t.text == "or" || t.text == "not") {
          throw ParseError(t.offset, "expression", describe(t));
        }
        if (is_reserved(t.text)) throw UnsupportedSyntaxError(t.offset, "keyword '" + t.text + "'");
        ++pos_;
        if (at_op("(")) throw UnsupportedSyntaxError(t.offset, "function call '" + t.text + "(...)'");
        return Expr::param(t.text);
      }
      case Tok::Op:
        if (t.text == "(") {
          ++pos_;
          Expr inner = parse_or();
          if (!at_op(")")) throw ParseError(peek().offset, "')'", describe(peek()));
          ++pos_;
          return inner;
        }
        break;
      case Tok::End:
        break;
    }
    throw ParseError(t.offset, "expression", describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view source) {
  if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(source.size(), "expression", "end of input");
  }
  return Parser(tokenize(source)).parse_all();
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Literal: {
      const ParamValue& v = e.value();
      if ((v.is_integer() && v.as_integer() < 0) || (v.is_real() && std::signbit(v.as_real()))) return 7;
      return 9;
    }
    case Expr::Kind::ParamRef:
      return 9;
    case Expr::Kind::Unary:
      return e.unary_op() == UnaryOp::Negate ? 7 : 3;
    case Expr::Kind::Comparison:
      return 4;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Pow: return 8;
        default: return 6;
      }
  }
  return 0;
}

void write(std::string& out, const Expr& e);

void write_child(std::string& out, const Expr& child, int min_precedence) {
  if (precedence(child) < min_precedence) {
    out += '(';
    write(out, child);
    out += ')';
  } else {
    write(out, child);
  }
}

void write(std::string& out, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Literal:
      out += e.value().to_string();
      return;
    case Expr::Kind::ParamRef:
      out += e.name();
      return;
    case Expr::Kind::Unary:
      if (e.unary_op() == UnaryOp::Negate) {
        out += '-';
        write_child(out, e.operand(), 7);
      } else {
        out += "not ";
        write_child(out, e.operand(), 3);
      }
      return;
    case Expr::Kind::Comparison:
      for (std::size_t i = 0; i < e.operands().size(); ++i) {
        if (i > 0) {
          out += ' ';
          out += op_symbol(e.compare_ops()[i - 1]);
          out += ' ';
        }
        write_child(out, e.operands()[i], 5);
      }
      return;
    case Expr::Kind::Binary: {
      const int p = precedence(e);
      // Left-associative operators need parens on an equal-precedence right
      // child; pow is right-associative with an atom base.
      const int left_min = e.binary_op() == BinaryOp::Pow ? 9 : p;
      const int right_min = e.binary_op() == BinaryOp::Pow ? 7 : p + 1;
      write_child(out, e.left(), left_min);
      out += ' ';
      out += op_symbol(e.binary_op());
      out += ' ';
      write_child(out, e.right(), right_min);
      return;
    }
  }
}

void collect(const Expr& e, std::vector<std::string>& names) {
  if (e.kind() == Expr::Kind::ParamRef) {
    if (std::find(names.begin(), names.end(), e.name()) == names.end()) names.push_back(e.name());
    return;
  }
  if (e.kind() == Expr::Kind::Literal) return;
  for (const Expr& c : e.operands()) collect(c, names);
}

Scalar eval_tree(const Expr& e, const Lookup& lookup) {
  switch (e.kind()) {
    case Expr::Kind::Literal:
      return Scalar::of(e.value());
    case Expr::Kind::ParamRef: {
      const ParamValue* v = lookup(e.name());
      if (v == nullptr) throw EvalError(EvalErrorKind::UnboundParameter, "unbound parameter '" + e.name() + "'");
      return Scalar::of(*v);
    }
    case Expr::Kind::Unary: {
      Scalar a = eval_tree(e.operand(), lookup);
      if (e.unary_op() == UnaryOp::Negate) return apply_negate(a);
      return Scalar::boolean(!require_bool(a, "operand of 'not'"));
    }
    case Expr::Kind::Binary: {
      BinaryOp op = e.binary_op();
      if (op == BinaryOp::And || op == BinaryOp::Or) {
        bool l = require_bool(eval_tree(e.left(), lookup), op == BinaryOp::And ? "operand of 'and'" : "operand of 'or'");
        if (op == BinaryOp::And && !l) return Scalar::boolean(false);
        if (op == BinaryOp::Or && l) return Scalar::boolean(true);
        return Scalar::boolean(require_bool(eval_tree(e.right(), lookup), op == BinaryOp::And ? "operand of 'and'" : "operand of 'or'"));
      }
      Scalar a = eval_tree(e.left(), lookup);
      Scalar b = eval_tree(e.right(), lookup);
      return apply_binary(op, a, b);
    }
    case Expr::Kind::Comparison: {
      const auto& xs = e.operands();
      Scalar left = eval_tree(xs[0], lookup);
      for (std::size_t i = 1; i < xs.size(); ++i) {
        Scalar right = eval_tree(xs[i], lookup);
        if (!apply_compare(e.compare_ops()[i - 1], left, right)) return Scalar::boolean(false);
        left = right;
      }
      return Scalar::boolean(true);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string format(const Expr& expr) {
  std::string out;
  write(out, expr);
  return out;
}

std::vector<std::string> free_parameters(const Expr& expr) {
  std::vector<std::string> names;
  collect(expr, names);
  return names;
}

ParamValue evaluate(const Expr& expr, const Lookup& lookup) { return eval_tree(expr, lookup).to_value(); }

ParamValue evaluate(const Expr& expr, const Assignment& assignment) {
  return evaluate(expr, Lookup([&](std::string_view name) -> const ParamValue* {
                    auto it = assignment.find(name);
                    return it == assignment.end() ? nullptr : &it->second;
                  }));
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << format(e); }

}  // namespace tunespace
