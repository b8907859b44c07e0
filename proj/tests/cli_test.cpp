// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tunespace/bench.hpp"
#include "tunespace/cli.hpp"
#include "tunespace/io.hpp"

using namespace tunespace;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tunespace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return (fs::path(TUNESPACE_DATA_DIR) / rel).string(); }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("tunespace_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("count-only prints a single integer") {
  auto r = run({"solve", "--input", data("problems/thread_block.json"), "--count-only"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "78\n");
  CHECK(run({"solve", "--input", data("problems/gemm_like.json"), "--count-only"}).out == "241600\n");
}

TEST_CASE("solve writes each export format") {
  TempDir dir;
  for (const char* f : {"rows", "columns", "maps"}) {
    auto file = dir / (std::string(f) + ".json");
    auto r = run({"solve", "--input", data("problems/chained_bounds.json"), "--format", f, "--output", file});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "46 configurations written to " + file + "\n");
    SearchSpace s = import_space(read_json_file(file));
    CHECK(s.size() == 46);
  }
  auto r = run({"solve", "--input", data("problems/chained_bounds.json")});
  CHECK(r.code == kExitOk);
  CHECK(import_space(parse_json(r.out)).size() == 46);
}

TEST_CASE("validate passes on every bundled problem") {
  for (const auto& entry : fs::directory_iterator(TUNESPACE_DATA_DIR "/problems")) {
    CAPTURE(entry.path().string());
    auto r = run({"validate", "--input", entry.path().string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("ok: ", 0) == 0);
  }
  auto r = run({"validate", "--input", data("problems/gemm_like.json"), "--max-bruteforce", "10"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("skipped") != std::string::npos);
}

TEST_CASE("stats on counts files") {
  auto r = run({"stats", "--input", data("counts/dedispersion.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("avg_constraint_evaluations: 33414\n") != std::string::npos);
  CHECK(r.out.find("invalid_count: 11142\n") != std::string::npos);
  CHECK(r.out.find("sparsity_fraction: 0.500269\n") != std::string::npos);
  auto gemm = run({"stats", "--input", data("counts/gemm.json")});
  CHECK(gemm.out.find("avg_constraint_evaluations: 2576736\n") != std::string::npos);
}

TEST_CASE("stats on a problem file") {
  auto r = run({"stats", "--input", data("problems/thread_block.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("cartesian_size: 222\n") != std::string::npos);
  CHECK(r.out.find("valid_count: 78\n") != std::string::npos);
}

TEST_CASE("generate then solve") {
  TempDir dir;
  auto file = dir / "g.json";
  auto r = run({"generate", "--size", "10000", "--dims", "3", "--constraints", "2", "--seed", "1", "--output", file});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("s10000-d3-m2-seed1") != std::string::npos);
  Problem p = load_problem(file);
  CHECK(p.cartesian_size() == 10164);
  CHECK(run({"validate", "--input", file}).code == kExitOk);
}

TEST_CASE("bench over a directory suite") {
  TempDir dir;
  for (std::uint64_t seed : {1, 2}) {
    auto f = dir / ("s" + std::to_string(seed) + ".json");
    CHECK(run({"generate", "--size", "2000", "--dims", "2", "--constraints", "1", "--seed", std::to_string(seed),
               "--output", f})
              .code == kExitOk);
  }
  TempDir outdir;
  auto report_file = outdir / "r.json";
  auto r = run({"bench", "--suite", dir.path.string(), "--reps", "1", "--output", report_file});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("2 spaces; optimized ", 0) == 0);
  BenchReport report = BenchReport::from_json(read_json_file(report_file));
  REQUIRE(report.spaces.size() == 4);
  CHECK(report.spaces[0].id == "s1");
  CHECK(report.spaces[2].id == "s2");
  for (const auto& s : report.spaces) CHECK(s.validation == Validation::Pass);

  auto csv_file = outdir / "r.csv";
  auto csv = run({"bench", "--suite", dir.path.string(), "--methods", "optimized", "--csv", csv_file,
                  "--time-boundary", "solve", "--output", report_file});
  CHECK(csv.code == kExitOk);
  std::ifstream in(csv_file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "id,method,seconds,valid_count,cartesian_size,validation,repetitions");
}

TEST_CASE("bench over a grid") {
  auto r = run({"bench", "--grid", "dims=2;sizes=1e3;constraints=1", "--methods", "optimized"});
  CHECK(r.code == kExitOk);
  Json j = parse_json(r.out);
  CHECK(j["spaces"].size() == 1);
}

TEST_CASE("usage errors exit with 2 and show help") {
  auto none = run({});
  CHECK(none.code == kExitUsage);
  auto unknown = run({"frobnicate"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.rfind("error: ", 0) == 0);
  CHECK(unknown.err.find("solve") != std::string::npos);
  auto missing = run({"solve"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("--input") != std::string::npos);
  CHECK(run({"solve", "--input", data("problems/thread_block.json"), "--format", "xml"}).code == kExitUsage);
  CHECK(run({"bench", "--suite", ".", "--grid", "default"}).code == kExitUsage);
  CHECK(run({"bench", "--grid", "dims=two"}).code == kExitUsage);
  CHECK(run({"solve", "--input", "/nonexistent/file.json"}).code == kExitUsage);
}

TEST_CASE("help exits cleanly") {
  auto r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("validate") != std::string::npos);
  CHECK(run({"solve", "--help"}).code == kExitOk);
}

TEST_CASE("bad input files") {
  TempDir dir;
  auto file = dir / "bad.json";
  write_text_file(file, R"({"parameters":{"x":[1,2]},"constraints":["x >"]})");
  auto r = run({"solve", "--input", file});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
  write_text_file(file, R"({"parameters":{"x":[0,1], "y":[0,1]},"constraints":["x // y >= 0"]})");
  CHECK(run({"solve", "--input", file, "--count-only"}).code == kExitUsage);
}
