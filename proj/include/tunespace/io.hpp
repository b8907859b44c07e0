// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tunespace/problem.hpp"
#include "tunespace/searchspace.hpp"

namespace tunespace {

using Json = nlohmann::ordered_json;

/// Input that does not follow the problem, export or report schema.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  /// JSON pointer of the offending element.
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses JSON text; duplicate object keys are a SchemaError.
Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view text);

Json value_to_json(const ParamValue& v);
ParamValue value_from_json(const Json& j, const std::string& path);

/// `{"parameters": {name: [values...]}, "constraints": [text...]}`; parameter
/// order is the declaration order.
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& problem);
Problem load_problem(const std::filesystem::path& file);
void save_problem(const Problem& problem, const std::filesystem::path& file);

enum class ExportFormat { Rows, Columns, Maps };
ExportFormat parse_export_format(std::string_view name);
std::string_view format_name(ExportFormat format);

/// Every format carries the parameter names, declared domains and the
/// Cartesian size next to the configurations.
Json export_space(const SearchSpace& space, ExportFormat format);
SearchSpace import_space(const Json& j);

/// Header of parameter names, then one row per configuration.
std::string export_csv(const SearchSpace& space);

}  // namespace tunespace
