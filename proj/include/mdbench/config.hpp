#pragma once

// Configuration files of the command-line workflow: the experiment file
// (what to benchmark) and the backend file (how to run it on the local
// simulator).  Parsing is strict -- unknown fields and malformed values are
// rejected with the offending field named -- so typos cannot silently
// change an experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdbench/simulator.hpp"

namespace mdbench {

// Physical qubit labels of one benchmarked pair.  The simulator always
// places the target on wire 0 and the ancilla on wire 1; the labels are
// carried through to the output documents untouched.
struct QubitPair {
  int target = 0;
  int ancilla = 1;
};

// The angles block: start/stop are kept both as the verbatim expression
// text and as their evaluated values.
struct AngleRange {
  std::string start_expression;
  std::string stop_expression;
  double start = 0.0;
  double stop = 0.0;
  int num_steps = 0;
};

struct ExperimentConfig {
  std::string type;  // always "discrimination-fourier"
  std::vector<QubitPair> qubits;
  AngleRange angles;
  std::string gateset;  // generic | ibmq | lucy | rigetti
  std::string method;   // postselection | direct_sum
  long long num_shots = 0;
};

// Simulator block of the backend file.  `seed` is only set when the file
// provides one; see effective_seed for the fallback chain.
struct SimulatorConfig {
  std::optional<std::uint64_t> seed;
  std::optional<NoiseModel> noise;
};

struct BackendConfig {
  std::string name;
  bool asynchronous = false;
  SimulatorConfig simulator;
};

// Environment variable consulted for the master seed when the backend file
// does not set one (decimal unsigned integer).
inline constexpr const char* kSeedEnvVar = "MDBENCH_SEED";

// Parse + validate from YAML text; throws ValidationError naming the field.
ExperimentConfig parse_experiment_config(const std::string& yaml_text);
BackendConfig parse_backend_config(const std::string& yaml_text);

// Same from a file; throws IoError when the file cannot be read.
ExperimentConfig load_experiment_config(const std::string& path);
BackendConfig load_backend_config(const std::string& path);

// The master seed actually used for a run, in decreasing precedence:
// the backend file, the MDBENCH_SEED environment variable, kDefaultSeed.
std::uint64_t effective_seed(const BackendConfig& backend);

// The evaluated inclusive angle grid of the experiment.
std::vector<double> experiment_angles(const ExperimentConfig& experiment);

// Circuit names of a method in canonical output order:
// direct_sum -> {id, u}; postselection -> {id_v0, id_v1, u_v0, u_v1}.
std::vector<std::string> circuit_names(const std::string& method);

}  // namespace mdbench
