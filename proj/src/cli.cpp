// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "tunespace/bench.hpp"
#include "tunespace/compiler.hpp"
#include "tunespace/io.hpp"
#include "tunespace/searchspace.hpp"
#include "tunespace/solver.hpp"
#include "tunespace/synthgen.hpp"

namespace tunespace {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    out.emplace_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

// Accepts plain integers and exact scientific forms such as 1e5.
std::uint64_t parse_count(const std::string& text) {
  std::uint64_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec == std::errc() && res.ptr == text.data() + text.size()) return v;
  double d = 0;
  auto dres = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dres.ec == std::errc() && dres.ptr == text.data() + text.size() && d >= 0 && d < 1.8e19 &&
      d == std::floor(d)) {
    return static_cast<std::uint64_t>(d);
  }
  throw UsageError("not a count: '" + text + "'");
}

template <typename T>
std::vector<T> parse_counts(const std::string& list) {
  std::vector<T> out;
  for (const std::string& item : split(list, ',')) out.push_back(static_cast<T>(parse_count(item)));
  return out;
}

// "default", or "dims=2,3;sizes=1e4,1e5;constraints=2,4" with any key omitted
// falling back to the default levels.
std::vector<SyntheticSpec> parse_grid(const std::string& spec, std::uint64_t seed) {
  std::vector<std::size_t> dims{2, 3, 4, 5};
  std::vector<std::uint64_t> sizes{10'000, 100'000, 1'000'000};
  std::vector<std::size_t> constraints{2, 4, 6};
  if (spec != "default") {
    for (const std::string& part : split(spec, ';')) {
      const std::size_t eq = part.find('=');
      if (eq == std::string::npos) throw UsageError("grid entry '" + part + "' is not key=values");
      const std::string key = part.substr(0, eq);
      const std::string values = part.substr(eq + 1);
      if (key == "dims") {
        dims = parse_counts<std::size_t>(values);
      } else if (key == "sizes") {
        sizes = parse_counts<std::uint64_t>(values);
      } else if (key == "constraints") {
        constraints = parse_counts<std::size_t>(values);
      } else {
        throw UsageError("unknown grid key '" + key + "'");
      }
    }
  }
  return synthetic_grid(dims, sizes, constraints, seed);
}

BenchSuite load_suite_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("suite directory '" + dir.string() + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("suite directory '" + dir.string() + "' holds no .json problems");
  BenchSuite suite;
  for (const fs::path& f : files) suite.emplace_back(f.stem().string(), load_problem(f));
  return suite;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_stats(std::ostream& out, std::uint64_t cartesian, std::uint64_t valid, std::uint64_t constraints) {
  out << "cartesian_size: " << cartesian << '\n';
  out << "valid_count: " << valid << '\n';
  out << "invalid_count: " << cartesian - valid << '\n';
  out << "num_constraints: " << constraints << '\n';
  out << "sparsity_fraction: " << fixed(static_cast<double>(cartesian - valid) / static_cast<double>(cartesian), 6)
      << '\n';
  if (constraints >= 1) {
    out << "avg_constraint_evaluations: " << avg_constraint_evaluations(cartesian, valid, constraints).to_string()
        << '\n';
  }
}

std::uint64_t counts_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError("/" + std::string(key), "missing required key");
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw SchemaError("/" + std::string(key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int run_solve(const std::string& input, const std::string& output, const std::string& format, bool count_only,
              std::ostream& out) {
  const ExportFormat fmt = parse_export_format(format);
  const Problem problem = load_problem(input);
  if (count_only) {
    out << count_solutions(problem) << '\n';
    return kExitOk;
  }
  const SearchSpace space = SearchSpace::build(problem);
  const std::string text = export_space(space, fmt).dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    write_text_file(output, text);
    out << space.size() << " configurations written to " << output << '\n';
  }
  return kExitOk;
}

int run_generate(std::uint64_t size, std::size_t dims, std::size_t constraints, std::uint64_t seed,
                 const std::string& output, std::ostream& out) {
  const SyntheticSpec spec{size, dims, constraints, seed};
  const Problem problem = generate_space(spec);
  save_problem(problem, output);
  out << spec.id() << ": cartesian_size " << problem.cartesian_size() << ", written to " << output << '\n';
  return kExitOk;
}

int run_validate(const std::string& input, std::uint64_t max_bruteforce, std::ostream& out, std::ostream& err) {
  const Problem problem = load_problem(input);
  const SolutionSet optimized = solve_all(problem);
  if (problem.cartesian_size() > max_bruteforce) {
    out << "ok: " << optimized.size() << " configurations; oracle comparison skipped (Cartesian size "
        << problem.cartesian_size() << " exceeds " << max_bruteforce << ")\n";
    return kExitOk;
  }
  const SolutionSet reference = brute_force_solve(problem, max_bruteforce);
  const std::vector<std::string> diff = solution_diff(optimized, reference);
  if (!diff.empty()) {
    err << "validation failed: optimized " << optimized.size() << " vs reference " << reference.size()
        << " configurations\n";
    for (const std::string& line : diff) err << "  " << line << '\n';
    return kExitValidation;
  }
  out << "ok: " << optimized.size() << " configurations match the brute-force reference\n";
  return kExitOk;
}

int run_stats(const std::string& input, std::ostream& out) {
  const Json j = read_json_file(input);
  if (j.is_object() && !j.contains("parameters") && j.contains("cartesian_size")) {
    const std::uint64_t cartesian = counts_field(j, "cartesian_size");
    const std::uint64_t valid = counts_field(j, "valid_count");
    const std::uint64_t constraints = counts_field(j, "num_constraints");
    if (cartesian == 0) throw SchemaError("/cartesian_size", "must be positive");
    if (valid > cartesian) throw SchemaError("/valid_count", "exceeds cartesian_size");
    if (constraints == 0) throw SchemaError("/num_constraints", "must be at least 1");
    print_stats(out, cartesian, valid, constraints);
    return kExitOk;
  }
  const Problem problem = problem_from_json(j);
  const SpaceStats stats = characterize(problem, solve_all(problem));
  print_stats(out, stats.cartesian_size, stats.valid_count, stats.num_constraints);
  return kExitOk;
}

struct BenchArgs {
  std::string suite_dir;
  std::string grid;
  std::string methods = "optimized,bruteforce";
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::string output;
  std::string csv;
  std::string boundary = "solve+index";
  std::uint64_t max_bruteforce = kBruteForceLimit;
};

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions options;
  options.methods.clear();
  for (const std::string& m : split(a.methods, ',')) options.methods.push_back(parse_method(m));
  options.repetitions = a.reps;
  options.boundary = parse_time_boundary(a.boundary);
  options.max_bruteforce = a.max_bruteforce;

  BenchSuite suite;
  if (!a.suite_dir.empty()) {
    suite = load_suite_dir(a.suite_dir);
  } else {
    for (const SyntheticSpec& spec : parse_grid(a.grid, a.seed)) suite.emplace_back(spec.id(), generate_space(spec));
  }

  BenchReport report;
  try {
    report = run_benchmark(suite, options);
  } catch (const ValidationError& e) {
    err << e.what() << '\n';
    return kExitValidation;
  }
  const std::string json = report.to_json().dump(2) + "\n";
  if (a.output.empty()) {
    out << json;
  } else {
    write_text_file(a.output, json);
  }
  if (!a.csv.empty()) write_text_file(a.csv, report.to_csv());
  if (!a.output.empty()) {
    const BenchAggregates& g = report.aggregates;
    out << suite.size() << " spaces; optimized " << fixed(g.optimized_seconds, 4) << " s";
    if (std::count(options.methods.begin(), options.methods.end(), Method::BruteForce) > 0) {
      out << ", bruteforce " << fixed(g.bruteforce_seconds, 4) << " s";
    }
    if (g.speedup) out << ", speedup " << fixed(*g.speedup, 2);
    if (g.slope) out << ", slope " << fixed(*g.slope, 3);
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and benchmark constraint-valid tuning search spaces", "tunespace"};
  app.require_subcommand(1, 1);

  std::string input, output, format = "rows";
  bool count_only = false;
  auto* solve = app.add_subcommand("solve", "Enumerate every valid configuration of a problem");
  solve->add_option("--input", input, "Problem JSON file")->required();
  solve->add_option("--output", output, "Destination file (default: standard output)");
  solve->add_option("--format", format, "rows, columns or maps")
      ->check(CLI::IsMember({"rows", "columns", "maps"}))
      ->capture_default_str();
  solve->add_flag("--count-only", count_only, "Print only the number of configurations");

  std::uint64_t size = 0, seed = 1;
  std::size_t dims = 0, constraints = 0;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic problem");
  generate->add_option("--size", size, "Target Cartesian size")->required();
  generate->add_option("--dims", dims, "Number of parameters")->required();
  generate->add_option("--constraints", constraints, "Number of constraints")->required();
  generate->add_option("--seed", seed, "Random seed")->capture_default_str();
  generate->add_option("--output", output, "Problem JSON file")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the optimized solver against the brute-force reference");
  auto* suite_opt = bench->add_option("--suite", bench_args.suite_dir, "Directory of problem JSON files");
  auto* grid_opt = bench->add_option("--grid", bench_args.grid,
                                     "'default' or e.g. 'dims=2,3;sizes=1e4,1e5;constraints=2,4'");
  suite_opt->excludes(grid_opt);
  bench->add_option("--methods", bench_args.methods, "Comma-separated: optimized,bruteforce")->capture_default_str();
  bench->add_option("--reps", bench_args.reps, "Repetitions per space; the minimum is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Seed for --grid")->capture_default_str();
  bench->add_option("--output", bench_args.output, "Report JSON file (default: standard output)");
  bench->add_option("--csv", bench_args.csv, "Also write the report as CSV");
  bench->add_option("--time-boundary", bench_args.boundary, "solve or solve+index")
      ->check(CLI::IsMember({"solve", "solve+index"}))
      ->capture_default_str();
  bench->add_option("--max-bruteforce", bench_args.max_bruteforce,
                    "Largest Cartesian size the reference enumerates")
      ->capture_default_str();

  std::uint64_t max_bruteforce = kBruteForceLimit;
  auto* validate = app.add_subcommand("validate", "Check a problem and compare the solver with the reference");
  validate->add_option("--input", input, "Problem JSON file")->required();
  validate->add_option("--max-bruteforce", max_bruteforce, "Largest Cartesian size the reference enumerates")
      ->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Print space statistics and average constraint evaluations");
  stats->add_option("--input", input, "Problem JSON or counts JSON file")->required();

  try {
    app.parse(argc, argv);
    if (bench->parsed() && suite_opt->count() == 0 && grid_opt->count() == 0) {
      throw CLI::RequiredError("--suite or --grid");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(input, output, format, count_only, out);
    if (generate->parsed()) return run_generate(size, dims, constraints, seed, output, out);
    if (bench->parsed()) return run_bench(bench_args, out, err);
    if (validate->parsed()) return run_validate(input, max_bruteforce, out, err);
    if (stats->parsed()) return run_stats(input, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  } catch (const std::exception& e) {
    // Schema, compile, parse and evaluation problems are all input errors.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tunespace
