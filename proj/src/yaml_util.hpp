#pragma once

// Shared YAML and file plumbing of the configuration and workflow
// translation units.  Not installed; include from src/ only.

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "mdbench/errors.hpp"
#include "mdbench/simulator.hpp"

namespace mdbench::detail {

inline YAML::Node load_yaml(const std::string& text, const std::string& what) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ValidationError(what + ": malformed YAML: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed while reading '" + path + "'");
  }
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out.good()) {
    throw IoError("failed while writing '" + path + "'");
  }
}

inline void require_map(const YAML::Node& node, const std::string& what) {
  if (!node.IsMap()) {
    throw ValidationError(what + " must be a mapping");
  }
}

// Rejects fields outside `allowed` so that misspelled keys are caught.
inline void reject_unknown_fields(const YAML::Node& map, const std::set<std::string>& allowed,
                                  const std::string& what) {
  for (const auto& entry : map) {
    const std::string key = entry.first.as<std::string>("");
    if (allowed.count(key) == 0) {
      std::string known;
      for (const auto& name : allowed) {
        known += (known.empty() ? "" : ", ") + name;
      }
      throw ValidationError(what + ": unknown field '" + key + "' (expected one of: " + known +
                            ")");
    }
  }
}

inline YAML::Node require_field(const YAML::Node& map, const std::string& key,
                                const std::string& what) {
  const YAML::Node node = map[key];
  if (!node.IsDefined() || node.IsNull()) {
    throw ValidationError(what + ": missing field '" + key + "'");
  }
  return node;
}

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) {
    throw ValidationError(what + " must be a scalar");
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ValidationError(what + ": cannot interpret '" + node.Scalar() + "'");
  }
}

inline ReadoutCalibration parse_calibration(const YAML::Node& node, const std::string& what) {
  require_map(node, what);
  reject_unknown_fields(node, {"prob_meas0_prep1", "prob_meas1_prep0"}, what);
  ReadoutCalibration cal;
  cal.prob_meas0_prep1 =
      scalar_as<double>(require_field(node, "prob_meas0_prep1", what), what + ".prob_meas0_prep1");
  cal.prob_meas1_prep0 =
      scalar_as<double>(require_field(node, "prob_meas1_prep0", what), what + ".prob_meas1_prep0");
  try {
    validate_calibration(cal);
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
  return cal;
}

}  // namespace mdbench::detail
