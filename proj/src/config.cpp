#include "mdbench/config.hpp"

#include <charconv>
#include <cstdlib>

#include "mdbench/angle_expr.hpp"
#include "mdbench/errors.hpp"
#include "yaml_util.hpp"

namespace mdbench {

using detail::load_yaml;
using detail::parse_calibration;
using detail::read_file;
using detail::reject_unknown_fields;
using detail::require_field;
using detail::require_map;
using detail::scalar_as;

ExperimentConfig parse_experiment_config(const std::string& yaml_text) {
  const YAML::Node root = load_yaml(yaml_text, "experiment file");
  require_map(root, "experiment file");
  reject_unknown_fields(root, {"type", "qubits", "angles", "gateset", "method", "num_shots"},
                        "experiment file");

  ExperimentConfig experiment;
  experiment.type = scalar_as<std::string>(require_field(root, "type", "experiment file"), "type");
  if (experiment.type != "discrimination-fourier") {
    throw ValidationError("type: expected 'discrimination-fourier', got '" + experiment.type +
                          "'");
  }

  const YAML::Node qubits = require_field(root, "qubits", "experiment file");
  if (!qubits.IsSequence() || qubits.size() == 0) {
    throw ValidationError("qubits must be a non-empty list of {target, ancilla} pairs");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::string what = "qubits[" + std::to_string(i) + "]";
    require_map(qubits[i], what);
    reject_unknown_fields(qubits[i], {"target", "ancilla"}, what);
    QubitPair pair;
    pair.target = scalar_as<int>(require_field(qubits[i], "target", what), what + ".target");
    pair.ancilla = scalar_as<int>(require_field(qubits[i], "ancilla", what), what + ".ancilla");
    if (pair.target == pair.ancilla) {
      throw ValidationError(what + ": target and ancilla must differ, both are " +
                            std::to_string(pair.target));
    }
    for (const QubitPair& seen : experiment.qubits) {
      if (seen.target == pair.target && seen.ancilla == pair.ancilla) {
        throw ValidationError(what + ": duplicate pair (target " + std::to_string(pair.target) +
                              ", ancilla " + std::to_string(pair.ancilla) + ")");
      }
    }
    experiment.qubits.push_back(pair);
  }

  const YAML::Node angles = require_field(root, "angles", "experiment file");
  require_map(angles, "angles");
  reject_unknown_fields(angles, {"start", "stop", "num_steps"}, "angles");
  experiment.angles.start_expression =
      scalar_as<std::string>(require_field(angles, "start", "angles"), "angles.start");
  experiment.angles.stop_expression =
      scalar_as<std::string>(require_field(angles, "stop", "angles"), "angles.stop");
  experiment.angles.start = parse_angle_expression(experiment.angles.start_expression);
  experiment.angles.stop = parse_angle_expression(experiment.angles.stop_expression);
  experiment.angles.num_steps =
      scalar_as<int>(require_field(angles, "num_steps", "angles"), "angles.num_steps");
  if (experiment.angles.start > experiment.angles.stop) {
    throw ValidationError("angles: start must not exceed stop");
  }
  angle_grid(experiment.angles.start, experiment.angles.stop, experiment.angles.num_steps);

  experiment.gateset =
      scalar_as<std::string>(require_field(root, "gateset", "experiment file"), "gateset");
  if (experiment.gateset != "generic" && experiment.gateset != "ibmq" &&
      experiment.gateset != "lucy" && experiment.gateset != "rigetti") {
    throw ValidationError("gateset: expected one of generic, ibmq, lucy, rigetti; got '" +
                          experiment.gateset + "'");
  }

  experiment.method =
      scalar_as<std::string>(require_field(root, "method", "experiment file"), "method");
  if (experiment.method != "postselection" && experiment.method != "direct_sum") {
    throw ValidationError("method: expected 'postselection' or 'direct_sum', got '" +
                          experiment.method + "'");
  }

  experiment.num_shots =
      scalar_as<long long>(require_field(root, "num_shots", "experiment file"), "num_shots");
  if (experiment.num_shots < 1) {
    throw ValidationError("num_shots must be at least 1, got " +
                          std::to_string(experiment.num_shots));
  }
  return experiment;
}

BackendConfig parse_backend_config(const std::string& yaml_text) {
  const YAML::Node root = load_yaml(yaml_text, "backend file");
  require_map(root, "backend file");
  if (root["provider"].IsDefined()) {
    throw ValidationError(
        "backend file: field 'provider' is not supported; this tool runs a local simulator "
        "configured through the 'simulator' block");
  }
  reject_unknown_fields(root, {"name", "asynchronous", "simulator"}, "backend file");

  BackendConfig backend;
  backend.name = scalar_as<std::string>(require_field(root, "name", "backend file"), "name");
  if (backend.name.empty()) {
    throw ValidationError("name must be a non-empty string");
  }
  backend.asynchronous =
      scalar_as<bool>(require_field(root, "asynchronous", "backend file"), "asynchronous");

  const YAML::Node simulator = root["simulator"];
  if (simulator.IsDefined() && !simulator.IsNull()) {
    require_map(simulator, "simulator");
    reject_unknown_fields(simulator, {"seed", "noise"}, "simulator");
    if (simulator["seed"].IsDefined()) {
      // Strict decimal parse: stream-based conversion would accept "-5" by
      // wrapping it around.
      const std::string text = scalar_as<std::string>(simulator["seed"], "simulator.seed");
      std::uint64_t value = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("simulator.seed must be a decimal unsigned integer, got '" + text +
                              "'");
      }
      backend.simulator.seed = value;
    }
    const YAML::Node noise = simulator["noise"];
    if (noise.IsDefined() && !noise.IsNull()) {
      require_map(noise, "simulator.noise");
      reject_unknown_fields(noise, {"target", "ancilla"}, "simulator.noise");
      NoiseModel model;
      model.target = parse_calibration(require_field(noise, "target", "simulator.noise"),
                                       "simulator.noise.target");
      model.ancilla = parse_calibration(require_field(noise, "ancilla", "simulator.noise"),
                                        "simulator.noise.ancilla");
      backend.simulator.noise = model;
    }
  }
  return backend;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

BackendConfig load_backend_config(const std::string& path) {
  return parse_backend_config(read_file(path));
}

std::uint64_t effective_seed(const BackendConfig& backend) {
  if (backend.simulator.seed) {
    return *backend.simulator.seed;
  }
  if (const char* env = std::getenv(kSeedEnvVar)) {
    const std::string text(env);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ValidationError(std::string(kSeedEnvVar) +
                            " must be a decimal unsigned integer, got '" + text + "'");
    }
    return value;
  }
  return kDefaultSeed;
}

std::vector<double> experiment_angles(const ExperimentConfig& experiment) {
  return angle_grid(experiment.angles.start, experiment.angles.stop, experiment.angles.num_steps);
}

std::vector<std::string> circuit_names(const std::string& method) {
  if (method == "direct_sum") {
    return {"id", "u"};
  }
  if (method == "postselection") {
    return {"id_v0", "id_v1", "u_v0", "u_v1"};
  }
  throw ValidationError("unknown method '" + method + "'");
}

}  // namespace mdbench
