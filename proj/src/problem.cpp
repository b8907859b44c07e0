// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/problem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace tunespace {

namespace {

void validate_parameters(const std::vector<Parameter>& params) {
  if (params.empty()) throw std::invalid_argument("a problem needs at least one parameter");
  std::unordered_set<std::string> names;
  for (const Parameter& p : params) {
    if (!names.insert(p.name).second) throw std::invalid_argument("duplicate parameter '" + p.name + "'");
    if (p.domain.empty()) throw std::invalid_argument("parameter '" + p.name + "' has an empty domain");
  }
}

}  // namespace

Problem Problem::from_sources(std::vector<Parameter> parameters, std::vector<std::string> sources) {
  validate_parameters(parameters);
  CompileResult compiled = compile_constraints(sources, parameters);
  return Problem(std::move(parameters), std::move(compiled.parameters), std::move(compiled.constraints),
                 std::move(sources));
}

Problem::Problem(std::vector<Parameter> parameters, std::vector<CompiledConstraint> constraints) {
  std::vector<std::string> sources;
  for (const CompiledConstraint& c : constraints) sources.push_back(format(c.predicate));
  *this = Problem(parameters, parameters, std::move(constraints), std::move(sources));
}

Problem::Problem(std::vector<Parameter> declared, std::vector<Parameter> working,
                 std::vector<CompiledConstraint> constraints, std::vector<std::string> sources)
    : declared_(std::move(declared)),
      working_(std::move(working)),
      constraints_(std::move(constraints)),
      sources_(std::move(sources)) {
  validate_parameters(declared_);
  if (working_.size() != declared_.size()) throw std::invalid_argument("working domains do not match parameters");
  for (std::size_t i = 0; i < declared_.size(); ++i) {
    if (working_[i].name != declared_[i].name) throw std::invalid_argument("working domains do not match parameters");
    for (const ParamValue& v : working_[i].domain) {
      if (!declared_[i].domain.contains(v)) {
        throw std::invalid_argument("working domain of '" + declared_[i].name + "' is not a subset of its declared domain");
      }
    }
  }
  for (const CompiledConstraint& c : constraints_) {
    for (const std::string& name : c.scope) {
      if (!find(name)) throw std::invalid_argument("constraint references unknown parameter '" + name + "'");
    }
  }
}

std::vector<std::string> Problem::names() const {
  std::vector<std::string> out;
  out.reserve(declared_.size());
  for (const Parameter& p : declared_) out.push_back(p.name);
  return out;
}

std::optional<std::size_t> Problem::find(std::string_view name) const {
  for (std::size_t i = 0; i < declared_.size(); ++i) {
    if (declared_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Problem::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
}

std::uint64_t Problem::cartesian_size() const {
  std::uint64_t total = 1;
  for (const Parameter& p : declared_) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(p.domain.size()), &total)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return total;
}

Problem Problem::with_domains(std::vector<Parameter> working) const {
  return Problem(declared_, std::move(working), constraints_, sources_);
}

SolutionSet::SolutionSet(std::vector<std::string> names, std::vector<Domain> domains, std::vector<std::uint32_t> cells)
    : names_(std::move(names)), domains_(std::move(domains)), cells_(std::move(cells)), width_(names_.size()) {
  if (domains_.size() != width_) throw std::invalid_argument("solution set: names and domains differ in length");
  if (width_ == 0 ? !cells_.empty() : cells_.size() % width_ != 0) {
    throw std::invalid_argument("solution set: cell count is not a multiple of the width");
  }
  std::vector<std::uint32_t> sizes;
  for (const Domain& d : domains_) sizes.push_back(static_cast<std::uint32_t>(d.size()));
  for (std::size_t i = 0; i < cells_.size(); i += width_) {
    for (std::size_t p = 0; p < width_; ++p) {
      if (cells_[i + p] >= sizes[p]) throw std::invalid_argument("solution set: value index out of range");
    }
  }
}

void SolutionSet::set_row_order(std::vector<std::size_t> order) {
  std::vector<bool> seen(width_, false);
  for (std::size_t p : order) {
    if (p >= width_ || seen[p]) throw std::invalid_argument("solution set: row order is not a permutation");
    seen[p] = true;
  }
  if (!order.empty() && order.size() != width_) throw std::invalid_argument("solution set: row order is not a permutation");
  row_order_ = std::move(order);
}

Configuration SolutionSet::operator[](std::size_t i) const {
  Configuration out;
  out.reserve(width_);
  auto r = row(i);
  for (std::size_t p = 0; p < width_; ++p) out.push_back(domains_[p][r[p]]);
  return out;
}

std::vector<Configuration> SolutionSet::configurations() const {
  std::vector<Configuration> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

}  // namespace tunespace
