// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "random_util.hpp"
#include "tunespace/scalar.hpp"

namespace tunespace {

std::string SyntheticSpec::id() const {
  return "s" + std::to_string(target_size) + "-d" + std::to_string(dims) + "-m" + std::to_string(num_constraints) +
         "-seed" + std::to_string(seed);
}

namespace {

bool int_pow_equals(std::uint64_t base, std::size_t exp, std::uint64_t target) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(acc, base, &acc)) return false;
  }
  return acc == target;
}

}  // namespace

std::vector<std::size_t> dims_for(std::uint64_t target_size, std::size_t dims) {
  if (dims < 1) throw std::invalid_argument("need at least one dimension");
  const double v = std::pow(static_cast<double>(target_size), 1.0 / static_cast<double>(dims));
  const auto root = static_cast<std::uint64_t>(std::llround(v));
  std::vector<std::size_t> out;
  if (int_pow_equals(root, dims, target_size)) {
    out.assign(dims, root);
  } else {
    const double nearest = std::round(v);
    const double contrary = nearest >= v ? std::floor(v) : std::ceil(v);
    out.assign(dims - 1, static_cast<std::size_t>(nearest));
    out.push_back(static_cast<std::size_t>(contrary));
  }
  if (std::any_of(out.begin(), out.end(), [](std::size_t c) { return c < 2; })) {
    throw std::invalid_argument("target size " + std::to_string(target_size) + " is too small for " +
                                std::to_string(dims) + " dimensions with at least two values each");
  }
  return out;
}

namespace {

enum class Template { MaxProduct, MinProduct, MaxSum, MinSum, Generic };

// Generic shapes; {0}, {1}, {2} are dimension names.
const char* const kGeneric2[] = {"{0} + 2 * {1}", "{0} * {1} - {0}", "{0} - {1}", "{0} // 2 + {1} * {1}"};
const char* const kGeneric3[] = {"{0} * {1} + {2}", "({0} + {1}) * {2}", "{0} + {1} - {2}", "{0} * {1} // {2}"};

std::string fill(std::string shape, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string key = "{" + std::to_string(i) + "}";
    for (std::size_t at = shape.find(key); at != std::string::npos; at = shape.find(key, at + names[i].size())) {
      shape.replace(at, key.size(), names[i]);
    }
  }
  return shape;
}

std::string join(const std::vector<std::string>& names, const char* op) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += op;
    out += names[i];
  }
  return out;
}

// Values of `aggregate` over the chosen dimensions: exhaustive for small
// subspaces, otherwise a seeded sample. Returned sorted.
std::vector<std::int64_t> aggregate_values(const std::string& aggregate, const std::vector<std::string>& names,
                                           const std::vector<std::size_t>& counts, std::mt19937_64& rng) {
  const Expr expr = parse_expression(aggregate);
  const CompiledExpr program(expr, [&](std::string_view n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  });
  constexpr std::uint64_t kExhaustiveLimit = 1 << 16;
  constexpr std::size_t kSamples = 1 << 14;

  std::uint64_t total = 1;
  for (std::size_t c : counts) total *= c;
  std::vector<Scalar> slots(names.size());
  std::vector<std::int64_t> out;
  auto record = [&] { out.push_back(program.run(slots).i); };
  if (total <= kExhaustiveLimit) {
    std::vector<std::size_t> digit(counts.size(), 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      for (std::size_t k = 0; k < counts.size(); ++k) slots[k] = Scalar::of(ParamValue(static_cast<std::int64_t>(digit[k] + 1)));
      record();
      for (std::size_t k = counts.size(); k-- > 0;) {
        if (++digit[k] < counts[k]) break;
        digit[k] = 0;
      }
    }
  } else {
    for (std::size_t i = 0; i < kSamples; ++i) {
      for (std::size_t k = 0; k < counts.size(); ++k) {
        slots[k] = Scalar::of(ParamValue(static_cast<std::int64_t>(detail::uniform_below(rng, counts[k]) + 1)));
      }
      record();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Problem generate_space(const SyntheticSpec& spec) {
  if (spec.dims < 2) throw std::invalid_argument("synthetic spaces need at least two dimensions");
  const std::vector<std::size_t> counts = dims_for(spec.target_size, spec.dims);
  std::mt19937_64 rng(spec.seed);

  std::vector<Parameter> params;
  for (std::size_t i = 0; i < spec.dims; ++i) {
    std::vector<ParamValue> values;
    for (std::size_t v = 1; v <= counts[i]; ++v) values.emplace_back(static_cast<std::int64_t>(v));
    params.push_back({"x" + std::to_string(i), Domain(std::move(values))});
  }

  std::vector<std::string> sources;
  for (std::size_t c = 0; c < spec.num_constraints; ++c) {
    const std::size_t max_arity = std::min<std::size_t>(spec.dims, 3);
    const std::size_t arity = 2 + detail::uniform_below(rng, max_arity - 1);
    std::vector<std::size_t> pool(spec.dims);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    for (std::size_t i = 0; i < arity; ++i) std::swap(pool[i], pool[i + detail::uniform_below(rng, pool.size() - i)]);
    pool.resize(arity);
    std::sort(pool.begin(), pool.end());

    std::vector<std::string> names;
    std::vector<std::size_t> sub_counts;
    for (std::size_t i : pool) {
      names.push_back(params[i].name);
      sub_counts.push_back(counts[i]);
    }

    const auto kind = static_cast<Template>(detail::uniform_below(rng, 5));
    std::string aggregate;
    bool upper;  // aggregate <= limit, otherwise >=
    switch (kind) {
      case Template::MaxProduct: aggregate = join(names, " * "); upper = true; break;
      case Template::MinProduct: aggregate = join(names, " * "); upper = false; break;
      case Template::MaxSum: aggregate = join(names, " + "); upper = true; break;
      case Template::MinSum: aggregate = join(names, " + "); upper = false; break;
      case Template::Generic: {
        const char* shape = arity == 2 ? kGeneric2[detail::uniform_below(rng, std::size(kGeneric2))]
                                       : kGeneric3[detail::uniform_below(rng, std::size(kGeneric3))];
        aggregate = fill(shape, names);
        upper = detail::uniform_below(rng, 2) == 0;
        break;
      }
    }

    // Limit at the quantile keeping roughly `keep` of the subspace.
    const double keep = 0.2 + 0.7 * detail::uniform_unit(rng);
    const std::vector<std::int64_t> values = aggregate_values(aggregate, names, sub_counts, rng);
    const double q = upper ? keep : 1.0 - keep;
    const std::int64_t limit = values[static_cast<std::size_t>(q * static_cast<double>(values.size() - 1))];
    sources.push_back(aggregate + (upper ? " <= " : " >= ") + std::to_string(limit));
  }
  return Problem::from_sources(std::move(params), std::move(sources));
}

SpaceStats characterize(const Problem& problem, const SolutionSet& solutions) {
  if (solutions.names() != problem.names()) {
    throw std::invalid_argument("solution set parameters do not match the problem");
  }
  for (std::size_t p = 0; p < problem.size(); ++p) {
    if (!(solutions.domains()[p] == problem.declared()[p].domain)) {
      throw std::invalid_argument("solution set domains do not match the problem");
    }
  }
  SpaceStats stats;
  stats.cartesian_size = problem.cartesian_size();
  stats.valid_count = solutions.size();
  if (stats.valid_count > stats.cartesian_size) throw std::invalid_argument("more solutions than combinations");
  stats.invalid_count = stats.cartesian_size - stats.valid_count;
  stats.num_constraints = problem.sources().size();
  stats.sparsity_fraction = static_cast<double>(stats.invalid_count) / static_cast<double>(stats.cartesian_size);
  return stats;
}

std::vector<SyntheticSpec> synthetic_grid(const std::vector<std::size_t>& dims, const std::vector<std::uint64_t>& sizes,
                                          const std::vector<std::size_t>& constraints, std::uint64_t seed) {
  std::vector<SyntheticSpec> out;
  std::uint64_t k = 0;
  for (std::size_t d : dims) {
    for (std::uint64_t s : sizes) {
      for (std::size_t m : constraints) out.push_back({s, d, m, seed * 1000003ULL + k++});
    }
  }
  return out;
}

std::vector<SyntheticSpec> default_suite(std::uint64_t seed) {
  return synthetic_grid({2, 3, 4, 5}, {10'000, 100'000, 1'000'000}, {2, 4, 6}, seed);
}

}  // namespace tunespace
