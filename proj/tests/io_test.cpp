// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>

#include "support.hpp"
#include "tunespace/io.hpp"

using namespace tunespace;

namespace {

std::string schema_path(const char* text) {
  try {
    problem_from_json(parse_json(text));
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("problem from JSON") {
  Problem p = problem_from_json(parse_json(R"({"parameters":{"x":[1,2,4],"y":[1,2,4]},"constraints":["x*y <= 4"]})"));
  CHECK(p.size() == 2);
  CHECK(p.constraints().size() == 1);
  CHECK(p.names() == std::vector<std::string>{"x", "y"});
  Problem free = problem_from_json(parse_json(R"({"parameters":{"b":[1],"a":[2,3]}})"));
  CHECK(free.names() == std::vector<std::string>{"b", "a"});
  CHECK(free.constraints().empty());
}

TEST_CASE("thread block problem file") {
  Problem p = load_problem(std::filesystem::path(TUNESPACE_DATA_DIR) / "problems" / "thread_block.json");
  CHECK(p.declared()[0].domain.size() == 37);
  CHECK(p.declared()[1].domain.size() == 6);
}

TEST_CASE("schema errors point at the offending element") {
  CHECK(schema_path(R"({"constraints":[]})") == "");
  CHECK(schema_path(R"([1,2])") == "");
  CHECK(schema_path(R"({"parameters":{}})") == "/parameters");
  CHECK(schema_path(R"({"parameters":[1]})") == "/parameters");
  CHECK(schema_path(R"({"parameters":{"x":[]}})") == "/parameters/x");
  CHECK(schema_path(R"({"parameters":{"x":3}})") == "/parameters/x");
  CHECK(schema_path(R"({"parameters":{"x":[1,2,1]}})") == "/parameters/x/2");
  CHECK(schema_path(R"({"parameters":{"x":[1,2.5]}})") == "/parameters/x/1");
  CHECK(schema_path(R"({"parameters":{"x":[1,null]}})") == "/parameters/x/1");
  CHECK(schema_path(R"({"parameters":{"x":[1,[2]]}})") == "/parameters/x/1");
  CHECK(schema_path(R"({"parameters":{"a/b":[18446744073709551615]}})") == "/parameters/a~1b/0");
  CHECK(schema_path(R"({"parameters":{"x":[1]},"constraints":"x > 0"})") == "/constraints");
  CHECK(schema_path(R"({"parameters":{"x":[1]},"constraints":[3]})") == "/constraints/0");
  CHECK_THROWS_AS(parse_json(R"({"a":1,"a":2})"), SchemaError);
  CHECK_THROWS_AS(parse_json("{"), SchemaError);
}

TEST_CASE("missing parameters names the key") {
  try {
    problem_from_json(parse_json(R"({"constraints":[]})"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("parameters") != std::string::npos);
  }
}

TEST_CASE("constraint problems surface as compile errors") {
  CHECK_THROWS_AS(problem_from_json(parse_json(R"({"parameters":{"x":[1]},"constraints":["y > 0"]})")), CompileError);
  CHECK_THROWS_AS(problem_from_json(parse_json(R"({"parameters":{"x":[1]},"constraints":["x >"]})")), CompileError);
}

TEST_CASE("values keep their kind") {
  CHECK(value_from_json(parse_json("1"), "") == ParamValue(1));
  CHECK(value_from_json(parse_json("1.0"), "") == ParamValue(1.0));
  CHECK(value_from_json(parse_json("true"), "") == ParamValue(true));
  CHECK(value_from_json(parse_json("\"s\""), "") == ParamValue("s"));
  CHECK(value_to_json(ParamValue(2.0)).dump() == "2.0");
  CHECK(value_to_json(ParamValue(-7)).dump() == "-7");
}

TEST_CASE("problem round-trip") {
  Problem p = load_problem(std::filesystem::path(TUNESPACE_DATA_DIR) / "problems" / "mixed_types.json");
  Json j = problem_to_json(p);
  Problem q = problem_from_json(parse_json(j.dump()));
  CHECK(q.declared() == p.declared());
  CHECK(q.parameters() == p.parameters());
  CHECK(q.sources() == p.sources());
  CHECK(q.constraints() == p.constraints());

  auto dir = std::filesystem::temp_directory_path() / "tunespace_io_test";
  std::filesystem::create_directories(dir);
  save_problem(p, dir / "p.json");
  CHECK(problem_to_json(load_problem(dir / "p.json")) == j);
  std::filesystem::remove_all(dir);
}

TEST_CASE("export import errors") {
  Problem p = Problem::from_sources(testing_support::int_params({{1, 2}, {1, 2}}), {"p0 <= p1"});
  SearchSpace s = SearchSpace::build(p);
  Json j = export_space(s, ExportFormat::Rows);
  CHECK(j["valid_count"] == 3);
  CHECK(j["cartesian_size"] == 4);
  Json bad = j;
  bad["rows"][0][1] = 9;
  CHECK_THROWS_AS(import_space(bad), SchemaError);
  bad = j;
  bad["rows"].push_back(j["rows"][0]);
  CHECK_THROWS_AS(import_space(bad), SchemaError);
  bad = j;
  bad["format"] = "table";
  CHECK_THROWS_AS(import_space(bad), SchemaError);
  bad = export_space(s, ExportFormat::Columns);
  bad["columns"]["p0"].erase(0);
  CHECK_THROWS_AS(import_space(bad), SchemaError);
  CHECK(parse_export_format("maps") == ExportFormat::Maps);
  CHECK_THROWS_AS(parse_export_format("csv"), std::invalid_argument);
}
