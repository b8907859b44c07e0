// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace tunespace {

Json parse_json(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  std::vector<std::string> path;
  Json::parser_callback_t detect_duplicates = [&](int, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        seen.emplace_back();
        path.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        seen.pop_back();
        path.pop_back();
        break;
      case Json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        path.back() = key;
        if (!seen.back().insert(key).second) {
          std::string where;
          for (const std::string& p : path) where += "/" + p;
          throw SchemaError(where, "duplicate key '" + key + "'");
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), detect_duplicates);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + file.string() + "'");
}

Json value_to_json(const ParamValue& v) {
  switch (v.tag()) {
    case ValueTag::Integer: return v.as_integer();
    case ValueTag::Real: return v.as_real();
    case ValueTag::Boolean: return v.as_bool();
    case ValueTag::Text: return v.as_text();
  }
  return nullptr;
}

ParamValue value_from_json(const Json& j, const std::string& path) {
  switch (j.type()) {
    case Json::value_t::number_integer:
      return ParamValue(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: {
      auto u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw SchemaError(path, "integer out of 64-bit range");
      }
      return ParamValue(static_cast<std::int64_t>(u));
    }
    case Json::value_t::number_float:
      return ParamValue(j.get<double>());
    case Json::value_t::boolean:
      return ParamValue(j.get<bool>());
    case Json::value_t::string:
      return ParamValue(j.get<std::string>());
    default:
      throw SchemaError(path, std::string("expected a scalar value, got ") + j.type_name());
  }
}

namespace {

std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path, std::string("missing required key '") + key + "'");
  return *it;
}

Domain domain_from_json(const Json& arr, const std::string& path) {
  if (!arr.is_array()) throw SchemaError(path, "expected an array of values");
  if (arr.empty()) throw SchemaError(path, "domain must not be empty");
  std::vector<ParamValue> values;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = path + "/" + std::to_string(i);
    ParamValue v = value_from_json(arr[i], at);
    if (!values.empty() && v.tag() != values.front().tag()) {
      throw SchemaError(at, "domain mixes " + std::string(tag_name(values.front().tag())) + " and " +
                                std::string(tag_name(v.tag())) + " values");
    }
    for (const ParamValue& seen : values) {
      if (seen == v) throw SchemaError(at, "duplicate domain value " + v.to_string());
    }
    values.push_back(std::move(v));
  }
  return Domain(std::move(values));
}

std::vector<Parameter> parameters_from_json(const Json& obj, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object mapping names to value arrays");
  if (obj.empty()) throw SchemaError(path, "at least one parameter is required");
  std::vector<Parameter> params;
  for (const auto& [name, values] : obj.items()) {
    params.push_back({name, domain_from_json(values, path + "/" + pointer_token(name))});
  }
  return params;
}

Json domains_to_json(const std::vector<std::string>& names, const std::vector<Domain>& domains) {
  Json out = Json::object();
  for (std::size_t p = 0; p < names.size(); ++p) {
    Json values = Json::array();
    for (const ParamValue& v : domains[p]) values.push_back(value_to_json(v));
    out[names[p]] = std::move(values);
  }
  return out;
}

}  // namespace

Problem problem_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  std::vector<Parameter> params = parameters_from_json(require(j, "parameters", ""), "/parameters");
  std::vector<std::string> sources;
  if (auto it = j.find("constraints"); it != j.end()) {
    if (!it->is_array()) throw SchemaError("/constraints", "expected an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) throw SchemaError("/constraints/" + std::to_string(i), "expected a string");
      sources.push_back((*it)[i].get<std::string>());
    }
  }
  return Problem::from_sources(std::move(params), std::move(sources));
}

Json problem_to_json(const Problem& problem) {
  std::vector<Domain> domains;
  for (const Parameter& p : problem.declared()) domains.push_back(p.domain);
  Json out;
  out["parameters"] = domains_to_json(problem.names(), domains);
  out["constraints"] = problem.sources();
  return out;
}

Problem load_problem(const std::filesystem::path& file) { return problem_from_json(read_json_file(file)); }

void save_problem(const Problem& problem, const std::filesystem::path& file) {
  write_text_file(file, problem_to_json(problem).dump(2) + "\n");
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "rows") return ExportFormat::Rows;
  if (name == "columns") return ExportFormat::Columns;
  if (name == "maps") return ExportFormat::Maps;
  throw std::invalid_argument("unknown export format '" + std::string(name) + "' (expected rows, columns or maps)");
}

std::string_view format_name(ExportFormat format) {
  switch (format) {
    case ExportFormat::Rows: return "rows";
    case ExportFormat::Columns: return "columns";
    case ExportFormat::Maps: return "maps";
  }
  return "?";
}

Json export_space(const SearchSpace& space, ExportFormat format) {
  const auto& names = space.names();
  const SolutionSet& sols = space.solutions();
  Json out;
  out["format"] = format_name(format);
  out["parameters"] = names;
  out["domains"] = domains_to_json(names, space.domains());
  out["cartesian_size"] = space.cartesian_size();
  out["valid_count"] = space.size();
  switch (format) {
    case ExportFormat::Rows: {
      Json rows = Json::array();
      for (std::size_t i = 0; i < sols.size(); ++i) {
        Json row = Json::array();
        for (const ParamValue& v : sols[i]) row.push_back(value_to_json(v));
        rows.push_back(std::move(row));
      }
      out["rows"] = std::move(rows);
      break;
    }
    case ExportFormat::Columns: {
      Json cols = Json::object();
      for (std::size_t p = 0; p < names.size(); ++p) {
        Json col = Json::array();
        for (std::size_t i = 0; i < sols.size(); ++i) col.push_back(value_to_json(sols.domains()[p][sols.row(i)[p]]));
        cols[names[p]] = std::move(col);
      }
      out["columns"] = std::move(cols);
      break;
    }
    case ExportFormat::Maps: {
      Json maps = Json::array();
      for (std::size_t i = 0; i < sols.size(); ++i) {
        Json rec = Json::object();
        auto row = sols.row(i);
        for (std::size_t p = 0; p < names.size(); ++p) rec[names[p]] = value_to_json(sols.domains()[p][row[p]]);
        maps.push_back(std::move(rec));
      }
      out["maps"] = std::move(maps);
      break;
    }
  }
  return out;
}

SearchSpace import_space(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  const ExportFormat format = [&] {
    const Json& f = require(j, "format", "");
    if (!f.is_string()) throw SchemaError("/format", "expected a string");
    try {
      return parse_export_format(f.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError("/format", e.what());
    }
  }();

  const Json& jnames = require(j, "parameters", "");
  if (!jnames.is_array()) throw SchemaError("/parameters", "expected an array of names");
  std::vector<std::string> names;
  for (const Json& n : jnames) {
    if (!n.is_string()) throw SchemaError("/parameters", "expected an array of names");
    names.push_back(n.get<std::string>());
  }
  const std::vector<Parameter> params = parameters_from_json(require(j, "domains", ""), "/domains");
  if (params.size() != names.size()) throw SchemaError("/domains", "domains do not match parameters");
  std::vector<Domain> domains;
  for (std::size_t p = 0; p < names.size(); ++p) {
    if (params[p].name != names[p]) throw SchemaError("/domains", "domains do not match parameters");
    domains.push_back(params[p].domain);
  }
  const Json& jcart = require(j, "cartesian_size", "");
  if (!jcart.is_number_unsigned() && !jcart.is_number_integer()) {
    throw SchemaError("/cartesian_size", "expected a non-negative integer");
  }

  const std::size_t width = names.size();
  std::vector<std::uint32_t> cells;
  auto add = [&](const Json& value, std::size_t p, const std::string& path) {
    ParamValue v = value_from_json(value, path);
    auto idx = domains[p].index_of(v);
    if (!idx) throw SchemaError(path, "value " + v.to_string() + " is not in the domain of '" + names[p] + "'");
    cells.push_back(static_cast<std::uint32_t>(*idx));
  };

  switch (format) {
    case ExportFormat::Rows: {
      const Json& rows = require(j, "rows", "");
      if (!rows.is_array()) throw SchemaError("/rows", "expected an array");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string at = "/rows/" + std::to_string(i);
        if (!rows[i].is_array() || rows[i].size() != width) throw SchemaError(at, "expected " + std::to_string(width) + " values");
        for (std::size_t p = 0; p < width; ++p) add(rows[i][p], p, at + "/" + std::to_string(p));
      }
      break;
    }
    case ExportFormat::Columns: {
      const Json& cols = require(j, "columns", "");
      if (!cols.is_object()) throw SchemaError("/columns", "expected an object");
      std::vector<const Json*> arrays;
      for (const std::string& name : names) {
        const Json& col = require(cols, name.c_str(), "/columns");
        if (!col.is_array()) throw SchemaError("/columns/" + pointer_token(name), "expected an array");
        if (!arrays.empty() && col.size() != arrays.front()->size()) {
          throw SchemaError("/columns/" + pointer_token(name), "columns differ in length");
        }
        arrays.push_back(&col);
      }
      const std::size_t rows = arrays.empty() ? 0 : arrays.front()->size();
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t p = 0; p < width; ++p) {
          add((*arrays[p])[i], p, "/columns/" + pointer_token(names[p]) + "/" + std::to_string(i));
        }
      }
      break;
    }
    case ExportFormat::Maps: {
      const Json& maps = require(j, "maps", "");
      if (!maps.is_array()) throw SchemaError("/maps", "expected an array");
      for (std::size_t i = 0; i < maps.size(); ++i) {
        const std::string at = "/maps/" + std::to_string(i);
        if (!maps[i].is_object() || maps[i].size() != width) {
          throw SchemaError(at, "expected a record with " + std::to_string(width) + " keys");
        }
        for (std::size_t p = 0; p < width; ++p) {
          add(require(maps[i], names[p].c_str(), at), p, at + "/" + pointer_token(names[p]));
        }
      }
      break;
    }
  }
  try {
    return SearchSpace(SolutionSet(names, std::move(domains), std::move(cells)), jcart.get<std::uint64_t>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError("", e.what());
  }
}

namespace {

std::string csv_cell(const ParamValue& v) {
  if (!v.is_text()) return v.is_bool() ? (v.as_bool() ? "true" : "false") : v.to_string();
  const std::string& s = v.as_text();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_csv(const SearchSpace& space) {
  std::string out;
  const auto& names = space.names();
  for (std::size_t p = 0; p < names.size(); ++p) out += (p ? "," : "") + csv_cell(ParamValue(names[p]));
  out += '\n';
  const SolutionSet& sols = space.solutions();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    auto row = sols.row(i);
    for (std::size_t p = 0; p < names.size(); ++p) out += (p ? "," : "") + csv_cell(sols.domains()[p][row[p]]);
    out += '\n';
  }
  return out;
}

}  // namespace tunespace
