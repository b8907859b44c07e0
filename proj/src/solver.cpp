// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tunespace/scalar.hpp"

namespace tunespace {

namespace {

// Sum/product bounds: 128-bit integers saturating at +-2^100.
using Wide = __int128;
constexpr Wide kCap = Wide(1) << 100;

Wide saturate(Wide v) { return v > kCap ? kCap : (v < -kCap ? -kCap : v); }

Wide combine(bool product, Wide a, Wide b) {
  if (!product) return saturate(a + b);
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) return (a < 0) != (b < 0) ? -kCap : kCap;
  return saturate(r);
}

Wide identity(bool product) { return product ? 1 : 0; }

bool is_max(ConstraintKind k) { return k == ConstraintKind::MaxSum || k == ConstraintKind::MaxProduct; }
bool is_min(ConstraintKind k) { return k == ConstraintKind::MinSum || k == ConstraintKind::MinProduct; }

/// Whether an aggregate known to lie in [lower, upper] can still satisfy the
/// bound. `complete` means lower == upper is the final value.
Verdict decide(ConstraintKind kind, bool strict, Wide limit, Wide lower, Wide upper, bool complete) {
  bool violated;
  if (is_max(kind)) {
    violated = strict ? lower >= limit : lower > limit;
  } else if (is_min(kind)) {
    violated = strict ? upper <= limit : upper < limit;
  } else {
    violated = lower > limit || upper < limit;
  }
  if (violated) return Verdict::Violated;
  return complete ? Verdict::Satisfied : Verdict::Undecided;
}

bool integral_domain(const Domain& d) { return !d.tag() || *d.tag() == ValueTag::Integer; }

bool positive_domain(const Domain& d) {
  return std::all_of(d.begin(), d.end(), [](const ParamValue& v) { return v.as_integer() > 0; });
}

// Sum/product constraints whose operands and limit are all integers use exact
// aggregate arithmetic; everything else evaluates its predicate.
bool integral(const CompiledConstraint& c, const std::vector<const Domain*>& scope_domains) {
  if (!c.is_specific() || !c.limit || !c.limit->is_integer()) return false;
  return std::all_of(scope_domains.begin(), scope_domains.end(), [](const Domain* d) { return integral_domain(*d); });
}

// Monotone aggregates: every sum, and products over strictly positive factors.
bool monotone(const CompiledConstraint& c, const std::vector<const Domain*>& scope_domains) {
  if (c.is_sum()) return true;
  return std::all_of(scope_domains.begin(), scope_domains.end(), [](const Domain* d) { return positive_domain(*d); });
}

Wide domain_min(const Domain& d) {
  std::int64_t m = d[0].as_integer();
  for (const ParamValue& v : d) m = std::min(m, v.as_integer());
  return m;
}

Wide domain_max(const Domain& d) {
  std::int64_t m = d[0].as_integer();
  for (const ParamValue& v : d) m = std::max(m, v.as_integer());
  return m;
}

std::string assignment_text(const Assignment& a) {
  std::string out = "{";
  for (const auto& [k, v] : a) {
    if (out.size() > 1) out += ", ";
    out += k + "=" + v.to_string();
  }
  return out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> order_variables(const Problem& problem) {
  const auto& params = problem.parameters();
  std::vector<std::size_t> degree(params.size(), 0);
  for (const CompiledConstraint& c : problem.constraints()) {
    for (const std::string& name : c.scope) ++degree[problem.index_of(name)];
  }
  std::vector<std::size_t> idx(params.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return params[a].domain.size() < params[b].domain.size();
  });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(params[i].name);
  return out;
}

Problem preprocess(const Problem& problem) {
  std::vector<Parameter> working = problem.parameters();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const CompiledConstraint& c : problem.constraints()) {
      if (!c.is_specific()) continue;
      std::vector<std::size_t> idx;
      std::vector<const Domain*> doms;
      for (const std::string& name : c.scope) {
        idx.push_back(problem.index_of(name));
        doms.push_back(&working[idx.back()].domain);
      }
      if (!integral(c, doms)) continue;
      if (std::any_of(doms.begin(), doms.end(), [](const Domain* d) { return d->empty(); })) {
        // No value of this scope can be part of a solution.
        for (std::size_t i : idx) {
          if (!working[i].domain.empty()) {
            working[i].domain = Domain();
            changed = true;
          }
        }
        continue;
      }
      if (!monotone(c, doms)) continue;
      const bool product = c.is_product();
      const Wide limit = c.limit->as_integer();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        Wide rest_min = identity(product), rest_max = identity(product);
        for (std::size_t o = 0; o < idx.size(); ++o) {
          if (o == k) continue;
          const Domain& d = working[idx[o]].domain;
          if (d.empty()) continue;
          rest_min = combine(product, rest_min, domain_min(d));
          rest_max = combine(product, rest_max, domain_max(d));
        }
        Domain& dom = working[idx[k]].domain;
        std::vector<ParamValue> kept;
        for (const ParamValue& v : dom) {
          const Wide x = v.as_integer();
          if (decide(c.kind, c.strict, limit, combine(product, x, rest_min), combine(product, x, rest_max), false) !=
              Verdict::Violated) {
            kept.push_back(v);
          }
        }
        if (kept.size() != dom.size()) {
          dom = Domain(std::move(kept));
          changed = true;
        }
      }
    }
  }
  return problem.with_domains(std::move(working));
}

CheckResult check(const CompiledConstraint& c, const Assignment& partial, const std::vector<Parameter>& parameters,
                  bool partial_checks) {
  auto domain_of = [&](const std::string& name) -> const Domain& {
    for (const Parameter& p : parameters) {
      if (p.name == name) return p.domain;
    }
    throw std::out_of_range("unknown parameter '" + name + "'");
  };

  std::vector<const ParamValue*> bound;
  std::vector<const Domain*> unbound;
  for (const std::string& name : c.scope) {
    auto it = partial.find(name);
    if (it != partial.end()) {
      bound.push_back(&it->second);
    } else {
      unbound.push_back(&domain_of(name));
    }
  }

  const bool bound_integral =
      std::all_of(bound.begin(), bound.end(), [](const ParamValue* v) { return v->is_integer(); });
  if (bound_integral && integral(c, unbound)) {
    const bool product = c.is_product();
    const Wide limit = c.limit->as_integer();
    Wide acc = identity(product);
    for (const ParamValue* v : bound) acc = combine(product, acc, v->as_integer());
    if (unbound.empty()) return {decide(c.kind, c.strict, limit, acc, acc, true), {}};
    const bool positive = std::all_of(bound.begin(), bound.end(), [](const ParamValue* v) { return v->as_integer() > 0; });
    if (!partial_checks || bound.empty() || !monotone(c, unbound) || (product && !positive)) {
      return {Verdict::Undecided, {}};
    }
    Wide lower = acc, upper = acc;
    for (const Domain* d : unbound) {
      if (d->empty()) return {Verdict::Violated, {}};
      lower = combine(product, lower, domain_min(*d));
      upper = combine(product, upper, domain_max(*d));
    }
    return {decide(c.kind, c.strict, limit, lower, upper, false), {}};
  }

  if (!unbound.empty()) return {Verdict::Undecided, {}};
  try {
    ParamValue v = evaluate(c.predicate, partial);
    if (!v.is_bool()) return {Verdict::Violated, "'" + c.origin + "' is not a boolean expression"};
    return {v.as_bool() ? Verdict::Satisfied : Verdict::Violated, {}};
  } catch (const EvalError& e) {
    return {Verdict::Violated, e.what()};
  }
}

// ---------------------------------------------------------------------------
// Search

namespace {

class Search {
 public:
  Search(const Problem& problem, const SolverOptions& options) : problem_(problem) {
    const auto& params = problem.parameters();
    const std::size_t n = params.size();
    for (const std::string& name : order_variables(problem)) order_.push_back(problem.index_of(name));
    std::vector<std::size_t> depth_of(n);
    for (std::size_t d = 0; d < n; ++d) depth_of[order_[d]] = d;

    scalars_.resize(n);
    ints_.resize(n);
    declared_index_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      const Domain& dom = params[p].domain;
      if (dom.empty()) empty_ = true;
      for (const ParamValue& v : dom) {
        scalars_[p].push_back(Scalar::of(v));
        ints_[p].push_back(v.is_integer() ? v.as_integer() : 0);
        declared_index_[p].push_back(static_cast<std::uint32_t>(*problem.declared()[p].domain.index_of(v)));
      }
    }
    cur_scalar_.resize(n);
    cur_int_.resize(n);
    cur_declared_.resize(n);
    aggregate_checks_.resize(n);
    generic_checks_.resize(n);
    lo_.assign(n, std::numeric_limits<std::int64_t>::min());
    hi_.assign(n, std::numeric_limits<std::int64_t>::max());
    sorted_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      sorted_[p] = ints_[p];
      std::sort(sorted_[p].begin(), sorted_[p].end());
    }
    if (empty_) return;

    const auto& constraints = problem.constraints();
    prepared_.reserve(constraints.size());
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      const CompiledConstraint& c = constraints[ci];
      Prepared pc;
      pc.constraint = &c;
      std::vector<const Domain*> doms;
      for (const std::string& name : c.scope) {
        std::size_t p = problem.index_of(name);
        pc.scope.push_back(static_cast<std::uint32_t>(p));
        doms.push_back(&params[p].domain);
      }
      std::sort(pc.scope.begin(), pc.scope.end(), [&](auto a, auto b) { return depth_of[a] < depth_of[b]; });
      pc.aggregate = integral(c, doms);
      const bool partial = pc.aggregate && options.partial_checks && monotone(c, doms);
      if (pc.aggregate) {
        pc.product = c.is_product();
        pc.limit = c.limit->as_integer();
        const std::size_t k = pc.scope.size();
        pc.rest_min.assign(k + 1, identity(pc.product));
        pc.rest_max.assign(k + 1, identity(pc.product));
        for (std::size_t j = k; j-- > 0;) {
          const Domain& d = params[pc.scope[j]].domain;
          pc.rest_min[j] = combine(pc.product, pc.rest_min[j + 1], domain_min(d));
          pc.rest_max[j] = combine(pc.product, pc.rest_max[j + 1], domain_max(d));
        }
      } else {
        pc.program = CompiledExpr(c.predicate, [&](std::string_view name) { return problem.index_of(name); });
      }
      prepared_.push_back(std::move(pc));
      const Prepared& stored = prepared_.back();
      const auto id = static_cast<std::uint32_t>(prepared_.size() - 1);
      const auto k = static_cast<std::uint32_t>(stored.scope.size());
      for (std::uint32_t j = partial ? 1 : k; j <= k; ++j) {
        auto& lists = stored.aggregate ? aggregate_checks_ : generic_checks_;
        lists[depth_of[stored.scope[j - 1]]].push_back({id, j});
      }
    }
  }

  const std::vector<std::size_t>& order() const { return order_; }

  template <typename Emit>
  void run(Emit&& emit) {
    if (empty_) return;
    const std::size_t n = order_.size();
    std::vector<std::uint32_t> cursor(n, 0);
    std::vector<std::uint32_t> limit(n);
    for (std::size_t d = 0; d < n; ++d) limit[d] = static_cast<std::uint32_t>(scalars_[order_[d]].size());

    std::size_t d = 0;
    if (!enter(0)) return;
    for (;;) {
      if (cursor[d] == limit[d]) {
        if (d == 0) return;
        --d;
        ++cursor[d];
        continue;
      }
      const std::size_t p = order_[d];
      const std::uint32_t v = cursor[d];
      const std::int64_t x = ints_[p][v];
      if (x < lo_[d] || x > hi_[d]) {
        ++cursor[d];
        continue;
      }
      cur_scalar_[p] = scalars_[p][v];
      cur_int_[p] = x;
      cur_declared_[p] = declared_index_[p][v];
      if (!passes(d)) {
        ++cursor[d];
      } else if (d + 1 == n) {
        emit(cur_declared_);
        ++cursor[d];
      } else {
        ++d;
        cursor[d] = 0;
        if (!enter(d)) cursor[d] = limit[d];
      }
    }
  }

 private:
  struct Prepared {
    const CompiledConstraint* constraint = nullptr;
    std::vector<std::uint32_t> scope;  // parameter indices in search order
    bool aggregate = false;
    bool product = false;
    Wide limit = 0;
    std::vector<Wide> rest_min, rest_max;  // over scope[j..]
    CompiledExpr program;
  };
  struct Item {
    std::uint32_t constraint;
    std::uint32_t bound;  // scope parameters assigned once this depth is set
  };

  // Range [first, last] of sorted indices where `ok` holds; `ok` is monotone
  // along `sorted`. Empty when first > last.
  template <typename Ok>
  static std::pair<std::ptrdiff_t, std::ptrdiff_t> half_line(const std::vector<std::int64_t>& sorted, Ok ok) {
    const auto m = static_cast<std::ptrdiff_t>(sorted.size());
    const bool head = ok(sorted.front());
    const bool tail = ok(sorted.back());
    if (head && tail) return {0, m - 1};
    if (!head && !tail) return {1, 0};
    std::ptrdiff_t lo = 0, hi = m - 1;  // ok(lo) != ok(hi)
    while (hi - lo > 1) {
      const std::ptrdiff_t mid = lo + (hi - lo) / 2;
      (ok(sorted[mid]) == head ? lo : hi) = mid;
    }
    return head ? std::pair{std::ptrdiff_t{0}, lo} : std::pair{hi, m - 1};
  }

  // Narrows the admissible values at `depth` to the interval of the sorted
  // domain allowed by its sum/product checks.
  bool enter(std::size_t depth) {
    if (aggregate_checks_[depth].empty()) return true;
    const std::vector<std::int64_t>& sorted = sorted_[order_[depth]];
    std::ptrdiff_t first = 0, last = static_cast<std::ptrdiff_t>(sorted.size()) - 1;
    for (const Item& item : aggregate_checks_[depth]) {
      const Prepared& pc = prepared_[item.constraint];
      const ConstraintKind kind = pc.constraint->kind;
      const bool strict = pc.constraint->strict;
      Wide acc = identity(pc.product);
      for (std::uint32_t j = 0; j + 1 < item.bound; ++j) acc = combine(pc.product, acc, cur_int_[pc.scope[j]]);
      const bool complete = item.bound == pc.scope.size();
      const Wide rmin = complete ? identity(pc.product) : pc.rest_min[item.bound];
      const Wide rmax = complete ? identity(pc.product) : pc.rest_max[item.bound];
      auto narrow = [&](auto ok) {
        const auto [a, b] = half_line(sorted, ok);
        first = std::max(first, a);
        last = std::min(last, b);
      };
      if (!is_min(kind)) {
        narrow([&](std::int64_t x) {
          const Wide lower = combine(pc.product, combine(pc.product, acc, x), rmin);
          return strict ? lower < pc.limit : lower <= pc.limit;
        });
      }
      if (!is_max(kind)) {
        narrow([&](std::int64_t x) {
          const Wide upper = combine(pc.product, combine(pc.product, acc, x), rmax);
          return strict ? upper > pc.limit : upper >= pc.limit;
        });
      }
      if (first > last) return false;
    }
    lo_[depth] = sorted[first];
    hi_[depth] = sorted[last];
    return true;
  }

  bool passes(std::size_t depth) {
    for (const Item& item : generic_checks_[depth]) {
      const Prepared& pc = prepared_[item.constraint];
      try {
        if (!pc.program.test(cur_scalar_)) return false;
      } catch (const EvalError& e) {
        Assignment at;
        for (std::size_t d = 0; d <= depth; ++d) {
          const std::size_t p = order_[d];
          at.emplace(problem_.parameters()[p].name, cur_scalar_[p].to_value());
        }
        throw SolveError("evaluating '" + pc.constraint->origin + "' at " + assignment_text(at) + ": " + e.what(),
                         std::move(at));
      }
    }
    return true;
  }

  const Problem& problem_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Scalar>> scalars_;
  std::vector<std::vector<std::int64_t>> ints_;
  std::vector<std::vector<std::uint32_t>> declared_index_;
  std::vector<Scalar> cur_scalar_;
  std::vector<std::int64_t> cur_int_;
  std::vector<std::uint32_t> cur_declared_;
  std::vector<Prepared> prepared_;
  std::vector<std::vector<Item>> aggregate_checks_, generic_checks_;
  std::vector<std::vector<std::int64_t>> sorted_;  // integer domain values, ascending
  std::vector<std::int64_t> lo_, hi_;              // admissible value range per depth
  bool empty_ = false;
};

}  // namespace

SolutionSet solve_all(const Problem& problem, const SolverOptions& options) {
  const Problem prepared = options.preprocess ? preprocess(problem) : problem;
  Search search(prepared, options);
  std::vector<std::uint32_t> cells;
  search.run([&](const std::vector<std::uint32_t>& row) { cells.insert(cells.end(), row.begin(), row.end()); });
  std::vector<Domain> domains;
  for (const Parameter& p : problem.declared()) domains.push_back(p.domain);
  SolutionSet out(problem.names(), std::move(domains), std::move(cells));
  // Depth-first emission over order-preserving domain subsets.
  out.set_row_order(search.order());
  return out;
}

std::uint64_t count_solutions(const Problem& problem, const SolverOptions& options) {
  const Problem prepared = options.preprocess ? preprocess(problem) : problem;
  Search search(prepared, options);
  std::uint64_t count = 0;
  search.run([&](const std::vector<std::uint32_t>&) { ++count; });
  return count;
}

}  // namespace tunespace
