// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "tunespace/searchspace.hpp"

namespace tunespace {

SolutionSet brute_force_solve(const Problem& problem, std::uint64_t max_cartesian) {
  const std::uint64_t cartesian = problem.cartesian_size();
  if (cartesian > max_cartesian) {
    throw std::length_error("Cartesian size " + std::to_string(cartesian) + " exceeds the brute-force limit of " +
                            std::to_string(max_cartesian));
  }
  const std::vector<std::string> names = problem.names();
  std::vector<Domain> domains;
  for (const Parameter& p : problem.declared()) domains.push_back(p.domain);
  std::vector<Expr> exprs;
  for (const std::string& source : problem.sources()) exprs.push_back(parse_expression(source));

  const std::size_t n = names.size();
  std::vector<std::uint32_t> digit(n, 0);
  const Lookup lookup = [&](std::string_view name) -> const ParamValue* {
    for (std::size_t p = 0; p < n; ++p) {
      if (names[p] == name) return &domains[p][digit[p]];
    }
    return nullptr;
  };

  std::vector<std::uint32_t> cells;
  for (std::uint64_t combo = 0; combo < cartesian; ++combo) {
    bool valid = true;
    for (std::size_t c = 0; c < exprs.size() && valid; ++c) {
      ParamValue result;
      try {
        result = evaluate(exprs[c], lookup);
      } catch (const EvalError& e) {
        Assignment at;
        for (std::size_t p = 0; p < n; ++p) at.emplace(names[p], domains[p][digit[p]]);
        throw SolveError("evaluating '" + problem.sources()[c] + "': " + e.what(), std::move(at));
      }
      if (!result.is_bool()) {
        throw SolveError("'" + problem.sources()[c] + "' is not a boolean expression", Assignment{});
      }
      valid = result.as_bool();
    }
    if (valid) cells.insert(cells.end(), digit.begin(), digit.end());
    for (std::size_t p = n; p-- > 0;) {
      if (++digit[p] < domains[p].size()) break;
      digit[p] = 0;
    }
  }
  return SolutionSet(names, std::move(domains), std::move(cells));
}

std::string EvaluationCount::to_string() const {
  std::string out = std::to_string(floor());
  if (!whole()) out += ".5";
  return out;
}

EvaluationCount avg_constraint_evaluations(std::uint64_t cartesian, std::uint64_t valid,
                                           std::uint64_t num_constraints) {
  if (valid > cartesian) throw std::invalid_argument("valid count exceeds the Cartesian size");
  if (num_constraints < 1) throw std::invalid_argument("at least one constraint is required");
  using U = unsigned __int128;
  const U invalid = cartesian - valid;
  // (|S_i| + |S_i| * |S_c|) / 2 + |S_v|, counted in halves.
  return EvaluationCount(invalid * (U(1) + num_constraints) + U(2) * valid);
}

std::string_view method_name(Method m) { return m == Method::Optimized ? "optimized" : "bruteforce"; }

Method parse_method(std::string_view name) {
  if (name == "optimized") return Method::Optimized;
  if (name == "bruteforce" || name == "brute-force") return Method::BruteForce;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view validation_name(Validation v) {
  switch (v) {
    case Validation::Pass: return "pass";
    case Validation::Fail: return "fail";
    case Validation::Skipped: return "skipped";
  }
  return "?";
}

Validation parse_validation(std::string_view name) {
  if (name == "pass") return Validation::Pass;
  if (name == "fail") return Validation::Fail;
  if (name == "skipped") return Validation::Skipped;
  throw std::invalid_argument("unknown validation status '" + std::string(name) + "'");
}

TimeBoundary parse_time_boundary(std::string_view name) {
  if (name == "solve") return TimeBoundary::Solve;
  if (name == "solve+index") return TimeBoundary::SolveAndIndex;
  throw std::invalid_argument("unknown time boundary '" + std::string(name) + "'");
}

std::string_view time_boundary_name(TimeBoundary b) { return b == TimeBoundary::Solve ? "solve" : "solve+index"; }

ValidationError::ValidationError(const std::string& space_id, std::vector<std::string> sample)
    : std::runtime_error([&] {
        std::string msg = "validation failed for '" + space_id + "'";
        for (const std::string& s : sample) msg += "\n  " + s;
        return msg;
      }()),
      sample_(std::move(sample)) {}

namespace {

std::vector<std::vector<std::uint32_t>> sorted_rows(const SolutionSet& s) {
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) rows.emplace_back(s.row(i).begin(), s.row(i).end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

std::string describe_row(const SolutionSet& s, const std::vector<std::uint32_t>& row) {
  std::string out = "(";
  for (std::size_t p = 0; p < row.size(); ++p) {
    if (p > 0) out += ", ";
    out += s.names()[p] + "=" + s.domains()[p][row[p]].to_string();
  }
  return out + ")";
}

std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::string> solution_diff(const SolutionSet& optimized, const SolutionSet& reference, std::size_t limit) {
  if (optimized.names() != reference.names() || optimized.domains() != reference.domains()) {
    return {"solution sets describe different parameters"};
  }
  const auto a = sorted_rows(optimized);
  const auto b = sorted_rows(reference);
  std::vector<std::string> out;
  std::size_t i = 0, j = 0;
  while ((i < a.size() || j < b.size()) && out.size() < limit) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back("+ " + describe_row(optimized, a[i++]));
    } else if (i == a.size() || b[j] < a[i]) {
      out.push_back("- " + describe_row(reference, b[j++]));
    } else {
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points) {
    if (x > 0 && y > 0) logs.emplace_back(std::log(x), std::log(y));
  }
  if (logs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : logs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

BenchReport run_benchmark(const BenchSuite& suite, const BenchOptions& options) {
  if (options.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  const bool validate = std::count(options.methods.begin(), options.methods.end(), Method::Optimized) > 0 &&
                        std::count(options.methods.begin(), options.methods.end(), Method::BruteForce) > 0;

  for (const auto& [id, problem] : suite) {
    std::optional<SolutionSet> optimized, reference;
    std::vector<SpaceRecord> records;
    for (Method method : options.methods) {
      double best = std::numeric_limits<double>::infinity();
      SolutionSet result;
      for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
        const auto start = Clock::now();
        if (method == Method::Optimized) {
          // Timed from the constraint text onward.
          const Problem compiled = Problem::from_sources(problem.declared(), problem.sources());
          result = solve_all(compiled, options.solver);
          if (options.boundary == TimeBoundary::SolveAndIndex) {
            SearchSpace space(std::move(result), compiled.cartesian_size());
            const auto stop = Clock::now();
            result = space.solutions();
            best = std::min(best, std::chrono::duration<double>(stop - start).count());
            continue;
          }
        } else {
          result = brute_force_solve(problem, options.max_bruteforce);
        }
        best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
      }
      records.push_back({id, method, best, result.size(), problem.cartesian_size(), Validation::Skipped,
                         options.repetitions});
      (method == Method::Optimized ? optimized : reference) = std::move(result);
    }
    if (validate) {
      auto diff = solution_diff(*optimized, *reference);
      if (!diff.empty()) throw ValidationError(id, std::move(diff));
      for (SpaceRecord& r : records) r.validation = Validation::Pass;
    }
    report.spaces.insert(report.spaces.end(), records.begin(), records.end());
  }

  std::vector<std::pair<double, double>> points;
  for (const SpaceRecord& r : report.spaces) {
    if (r.method == Method::Optimized) {
      report.aggregates.optimized_seconds += r.seconds;
      points.emplace_back(static_cast<double>(r.valid_count), r.seconds);
    } else {
      report.aggregates.bruteforce_seconds += r.seconds;
    }
  }
  if (validate && report.aggregates.optimized_seconds > 0) {
    report.aggregates.speedup = report.aggregates.bruteforce_seconds / report.aggregates.optimized_seconds;
  }
  report.aggregates.slope = loglog_slope(points);
  return report;
}

Json BenchReport::to_json() const {
  Json out;
  Json list = Json::array();
  for (const SpaceRecord& r : spaces) {
    Json rec;
    rec["id"] = r.id;
    rec["method"] = method_name(r.method);
    rec["seconds"] = r.seconds;
    rec["valid_count"] = r.valid_count;
    rec["cartesian_size"] = r.cartesian_size;
    rec["validation"] = validation_name(r.validation);
    rec["repetitions"] = r.repetitions;
    list.push_back(std::move(rec));
  }
  out["spaces"] = std::move(list);
  Json agg;
  agg["optimized_seconds"] = aggregates.optimized_seconds;
  agg["bruteforce_seconds"] = aggregates.bruteforce_seconds;
  agg["speedup"] = aggregates.speedup ? Json(*aggregates.speedup) : Json(nullptr);
  agg["slope"] = aggregates.slope ? Json(*aggregates.slope) : Json(nullptr);
  out["aggregates"] = std::move(agg);
  return out;
}

BenchReport BenchReport::from_json(const Json& j) {
  auto field = [](const Json& obj, const char* key, const std::string& path) -> const Json& {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path, std::string("missing required key '") + key + "'");
    return *it;
  };
  auto optional_number = [](const Json& v, const std::string& path) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw SchemaError(path, "expected a number or null");
    return v.get<double>();
  };
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  BenchReport report;
  const Json& list = field(j, "spaces", "");
  if (!list.is_array()) throw SchemaError("/spaces", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "/spaces/" + std::to_string(i);
    const Json& rec = list[i];
    if (!rec.is_object()) throw SchemaError(at, "expected an object");
    try {
      SpaceRecord r;
      r.id = field(rec, "id", at).get<std::string>();
      r.method = parse_method(field(rec, "method", at).get<std::string>());
      r.seconds = field(rec, "seconds", at).get<double>();
      r.valid_count = field(rec, "valid_count", at).get<std::uint64_t>();
      r.cartesian_size = field(rec, "cartesian_size", at).get<std::uint64_t>();
      r.validation = parse_validation(field(rec, "validation", at).get<std::string>());
      r.repetitions = field(rec, "repetitions", at).get<std::size_t>();
      report.spaces.push_back(std::move(r));
    } catch (const Json::type_error& e) {
      throw SchemaError(at, e.what());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(at, e.what());
    }
  }
  const Json& agg = field(j, "aggregates", "");
  if (!agg.is_object()) throw SchemaError("/aggregates", "expected an object");
  try {
    report.aggregates.optimized_seconds = field(agg, "optimized_seconds", "/aggregates").get<double>();
    report.aggregates.bruteforce_seconds = field(agg, "bruteforce_seconds", "/aggregates").get<double>();
  } catch (const Json::type_error& e) {
    throw SchemaError("/aggregates", e.what());
  }
  report.aggregates.speedup = optional_number(field(agg, "speedup", "/aggregates"), "/aggregates/speedup");
  report.aggregates.slope = optional_number(field(agg, "slope", "/aggregates"), "/aggregates/slope");
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out = "id,method,seconds,valid_count,cartesian_size,validation,repetitions\n";
  for (const SpaceRecord& r : spaces) {
    out += r.id + "," + std::string(method_name(r.method)) + "," + number_text(r.seconds) + "," +
           std::to_string(r.valid_count) + "," + std::to_string(r.cartesian_size) + "," +
           std::string(validation_name(r.validation)) + "," + std::to_string(r.repetitions) + "\n";
  }
  return out;
}

}  // namespace tunespace
