#include "mdbench/workflow.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <tuple>

#include "mdbench/angle_expr.hpp"
#include "mdbench/errors.hpp"
#include "mdbench/mitigation.hpp"
#include "mdbench/rng.hpp"
#include "mdbench/strategy.hpp"
#include "yaml_util.hpp"

namespace mdbench {

using detail::load_yaml;
using detail::parse_calibration;
using detail::read_file;
using detail::reject_unknown_fields;
using detail::require_field;
using detail::require_map;
using detail::scalar_as;
using detail::write_file;

namespace {

// ---------------------------------------------------------------------------
// Canonical scalar formatting.  All floats are emitted with the shortest
// representation that round-trips, so re-parsing a document reproduces the
// exact doubles and re-serializing reproduces the exact bytes.
// ---------------------------------------------------------------------------

std::string shortest_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

// YAML float scalar: shortest form, with ".0" appended to integral values
// so the scalar stays a float (phi: 0.0 rather than phi: 0).
std::string yaml_double(double value) {
  std::string s = shortest_double(value);
  if (s.find_first_of(".eE") == std::string::npos) {
    s += ".0";
  }
  return s;
}

bool plain_scalar_safe(const std::string& s) {
  if (s.empty()) {
    return false;
  }
  const unsigned char first = static_cast<unsigned char>(s.front());
  if (!std::isalpha(first) && first != '_') {
    return false;
  }
  for (const char c : s) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-' && c != '.') {
      return false;
    }
  }
  static const std::set<std::string> reserved = {
      "true", "false", "null", "yes", "no", "on",  "off", "True", "False", "Null",
      "Yes",  "No",    "On",   "Off", "TRUE", "FALSE", "NULL", "YES", "NO", "ON", "OFF"};
  return reserved.count(s) == 0;
}

// Minimal YAML string quoting: plain when unambiguous, single-quoted with
// '' escaping otherwise.
std::string yaml_string(const std::string& s) {
  if (plain_scalar_safe(s)) {
    return s;
  }
  std::string quoted = "'";
  for (const char c : s) {
    quoted += c;
    if (c == '\'') {
      quoted += '\'';
    }
  }
  quoted += '\'';
  return quoted;
}

std::string flow_histogram(const Histogram& hist) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, count] : hist) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += "'" + key + "': " + std::to_string(count);
  }
  out += "}";
  return out;
}

std::string flow_quasi_histogram(const QuasiHistogram& hist) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : hist) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += "'" + key + "': " + yaml_double(value);
  }
  out += "}";
  return out;
}

void emit_calibration_line(std::string& out, const std::string& indent, const std::string& label,
                           const ReadoutCalibration& cal) {
  out += indent + label + ": {prob_meas0_prep1: " + yaml_double(cal.prob_meas0_prep1) +
         ", prob_meas1_prep0: " + yaml_double(cal.prob_meas1_prep0) + "}\n";
}

void emit_metadata(std::string& out, const ExperimentConfig& experiment,
                   const BackendConfig& backend) {
  out += "metadata:\n";
  out += "  experiments:\n";
  out += "    type: " + yaml_string(experiment.type) + "\n";
  out += "    qubits:\n";
  for (const QubitPair& pair : experiment.qubits) {
    out += "    - {target: " + std::to_string(pair.target) +
           ", ancilla: " + std::to_string(pair.ancilla) + "}\n";
  }
  out += "    angles: {start: " + yaml_double(experiment.angles.start) +
         ", stop: " + yaml_double(experiment.angles.stop) +
         ", num_steps: " + std::to_string(experiment.angles.num_steps) + "}\n";
  out += "    gateset: " + yaml_string(experiment.gateset) + "\n";
  out += "    method: " + yaml_string(experiment.method) + "\n";
  out += "    num_shots: " + std::to_string(experiment.num_shots) + "\n";
  out += "  backend_description:\n";
  out += "    name: " + yaml_string(backend.name) + "\n";
  out += std::string("    asynchronous: ") + (backend.asynchronous ? "true" : "false") + "\n";
  out += "    simulator:\n";
  out += "      seed: " + std::to_string(backend.simulator.seed.value_or(kDefaultSeed)) + "\n";
  if (backend.simulator.noise) {
    out += "      noise:\n";
    emit_calibration_line(out, "        ", "target", backend.simulator.noise->target);
    emit_calibration_line(out, "        ", "ancilla", backend.simulator.noise->ancilla);
  }
}

std::string flow_job_key(const JobKey& key) {
  return "[" + std::to_string(key.target) + ", " + std::to_string(key.ancilla) + ", " +
         yaml_string(key.name) + ", " + yaml_double(key.phi) + "]";
}

// ---------------------------------------------------------------------------
// Node-level parsing helpers
// ---------------------------------------------------------------------------

ExperimentConfig experiment_from_node(const YAML::Node& node) {
  return parse_experiment_config(YAML::Dump(node));
}

BackendConfig backend_from_node(const YAML::Node& node) {
  return parse_backend_config(YAML::Dump(node));
}

struct Metadata {
  ExperimentConfig experiments;
  BackendConfig backend_description;
};

Metadata parse_metadata(const YAML::Node& root, const std::string& what) {
  require_map(root, what);
  reject_unknown_fields(root, {"metadata", "data"}, what);
  const YAML::Node metadata = require_field(root, "metadata", what);
  require_map(metadata, what + ".metadata");
  reject_unknown_fields(metadata, {"experiments", "backend_description"}, what + ".metadata");
  Metadata out;
  out.experiments = experiment_from_node(require_field(metadata, "experiments", what + ".metadata"));
  out.backend_description =
      backend_from_node(require_field(metadata, "backend_description", what + ".metadata"));
  return out;
}

Histogram parse_histogram_node(const YAML::Node& node, const std::string& what) {
  require_map(node, what);
  Histogram hist;
  for (const auto& entry : node) {
    const std::string key = scalar_as<std::string>(entry.first, what + " key");
    hist[key] = scalar_as<long long>(entry.second, what + "['" + key + "']");
  }
  try {
    validate_histogram(hist);
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
  return hist;
}

QuasiHistogram parse_quasi_histogram_node(const YAML::Node& node, const std::string& what) {
  require_map(node, what);
  QuasiHistogram hist;
  double sum = 0.0;
  for (const auto& entry : node) {
    const std::string key = scalar_as<std::string>(entry.first, what + " key");
    if (key != "00" && key != "01" && key != "10" && key != "11") {
      throw ValidationError(what + ": invalid outcome key '" + key + "'");
    }
    const double value = scalar_as<double>(entry.second, what + "['" + key + "']");
    hist[key] = value;
    sum += value;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError(what + ": quasi-probabilities sum to " + shortest_double(sum) +
                          ", expected 1");
  }
  return hist;
}

NoiseModel parse_noise_node(const YAML::Node& node, const std::string& what) {
  require_map(node, what);
  reject_unknown_fields(node, {"target", "ancilla"}, what);
  NoiseModel model;
  model.target = parse_calibration(require_field(node, "target", what), what + ".target");
  model.ancilla = parse_calibration(require_field(node, "ancilla", what), what + ".ancilla");
  return model;
}

JobKey parse_job_key_node(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() != 4) {
    throw ValidationError(what + " must be a [target, ancilla, name, phi] quadruple");
  }
  JobKey key;
  key.target = scalar_as<int>(node[0], what + "[0]");
  key.ancilla = scalar_as<int>(node[1], what + "[1]");
  key.name = scalar_as<std::string>(node[2], what + "[2]");
  key.phi = scalar_as<double>(node[3], what + "[3]");
  return key;
}

int index_of_pair(const ExperimentConfig& experiment, int target, int ancilla) {
  for (std::size_t i = 0; i < experiment.qubits.size(); ++i) {
    if (experiment.qubits[i].target == target && experiment.qubits[i].ancilla == ancilla) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

// Angles round-trip bit-exactly through the shortest float form, so grid
// membership is an exact comparison.
int index_of_angle(const std::vector<double>& grid, double phi) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == phi) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Job store records
// ---------------------------------------------------------------------------

constexpr const char* kStatusPending = "PENDING";
constexpr const char* kStatusDone = "DONE";

struct JobFile {
  std::string job_id;
  std::string status;
  std::vector<JobKey> keys;
  std::vector<Histogram> results;  // aligned with keys when status is DONE
};

std::string serialize_job_file(const JobFile& job) {
  std::string out;
  out += "job_id: " + yaml_string(job.job_id) + "\n";
  out += "status: " + job.status + "\n";
  out += "keys:\n";
  for (const JobKey& key : job.keys) {
    out += "- " + flow_job_key(key) + "\n";
  }
  if (job.status == kStatusDone) {
    out += "results:\n";
    for (std::size_t i = 0; i < job.keys.size(); ++i) {
      out += "- key: " + flow_job_key(job.keys[i]) + "\n";
      out += "  histogram: " + flow_histogram(job.results[i]) + "\n";
    }
  }
  return out;
}

bool same_key(const JobKey& a, const JobKey& b) {
  return a.target == b.target && a.ancilla == b.ancilla && a.name == b.name && a.phi == b.phi;
}

JobFile parse_job_file(const std::string& text, const std::string& what) {
  const YAML::Node root = load_yaml(text, what);
  require_map(root, what);
  reject_unknown_fields(root, {"job_id", "status", "keys", "results"}, what);
  JobFile job;
  job.job_id = scalar_as<std::string>(require_field(root, "job_id", what), what + ".job_id");
  job.status = scalar_as<std::string>(require_field(root, "status", what), what + ".status");
  if (job.status != kStatusPending && job.status != kStatusDone) {
    throw ValidationError(what + ": unknown status '" + job.status + "'");
  }
  const YAML::Node keys = require_field(root, "keys", what);
  if (!keys.IsSequence() || keys.size() == 0) {
    throw ValidationError(what + ": keys must be a non-empty list");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    job.keys.push_back(parse_job_key_node(keys[i], what + ".keys[" + std::to_string(i) + "]"));
  }
  const YAML::Node results = root["results"];
  if (job.status == kStatusDone) {
    if (!results.IsDefined() || !results.IsSequence() || results.size() != job.keys.size()) {
      throw ValidationError(what + ": a DONE job needs one result per key");
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      const std::string ctx = what + ".results[" + std::to_string(i) + "]";
      require_map(results[i], ctx);
      reject_unknown_fields(results[i], {"key", "histogram"}, ctx);
      const JobKey key = parse_job_key_node(require_field(results[i], "key", ctx), ctx + ".key");
      if (!same_key(key, job.keys[i])) {
        throw ValidationError(ctx + ": result key does not match the job's key list");
      }
      job.results.push_back(
          parse_histogram_node(require_field(results[i], "histogram", ctx), ctx + ".histogram"));
    }
  } else if (results.IsDefined() && !results.IsNull()) {
    throw ValidationError(what + ": a PENDING job must not carry results");
  }
  return job;
}

std::string job_file_path(const std::string& store_dir, const std::string& job_id) {
  return store_dir + "/" + job_id + ".yml";
}

// Deterministic 24-hex-character job id from the master seed and the pair.
std::string make_job_id(std::uint64_t master_seed, int pair_index, const QubitPair& pair) {
  const std::string key = "job:" + std::to_string(pair_index) + ":" +
                          std::to_string(pair.target) + ":" + std::to_string(pair.ancilla);
  const std::uint64_t h1 = derive_seed(master_seed, fnv1a64(key));
  const std::uint64_t h2 = mix64(h1 ^ kGolden);
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%016llx%08llx", static_cast<unsigned long long>(h1),
                static_cast<unsigned long long>(h2 >> 32));
  return std::string(buffer);
}

// ---------------------------------------------------------------------------
// Document assembly
// ---------------------------------------------------------------------------

// Backend copy with the master seed made explicit, so every emitted
// document records the seed that actually drove it.
BackendConfig normalized_backend(const BackendConfig& backend, std::uint64_t master_seed) {
  BackendConfig out = backend;
  out.simulator.seed = master_seed;
  return out;
}

ResultDocument assemble_document(const ExperimentConfig& experiment, const BackendConfig& backend,
                                 const std::vector<JobUnit>& units,
                                 const std::vector<Histogram>& histograms) {
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<std::string> names = circuit_names(experiment.method);
  const std::optional<NoiseModel>& noise = backend.simulator.noise;

  if (units.size() != histograms.size() ||
      units.size() != experiment.qubits.size() * grid.size() * names.size()) {
    throw ValidationError("internal error: unit list does not match the experiment layout");
  }

  ResultDocument document;
  document.experiments = experiment;
  document.backend_description = backend;
  std::size_t k = 0;
  for (const QubitPair& pair : experiment.qubits) {
    for (const double phi : grid) {
      DataEntry entry;
      entry.target = pair.target;
      entry.ancilla = pair.ancilla;
      entry.phi = phi;
      for (const std::string& name : names) {
        CircuitResult result;
        result.name = name;
        result.histogram = histograms[k];
        if (noise) {
          result.mitigation_info = *noise;
          result.mitigated_histogram =
              mitigate(result.histogram, noise->target, noise->ancilla).quasi_probs;
        }
        entry.results_per_circuit.push_back(std::move(result));
        ++k;
      }
      document.data.push_back(std::move(entry));
    }
  }
  return document;
}

IntermediateDocument build_intermediate_document(const ExperimentConfig& experiment,
                                                 const BackendConfig& backend,
                                                 std::uint64_t master_seed) {
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<std::string> names = circuit_names(experiment.method);
  IntermediateDocument document;
  document.experiments = experiment;
  document.backend_description = backend;
  for (std::size_t pair_index = 0; pair_index < experiment.qubits.size(); ++pair_index) {
    const QubitPair& pair = experiment.qubits[pair_index];
    JobRecord record;
    record.job_id = make_job_id(master_seed, static_cast<int>(pair_index), pair);
    for (const double phi : grid) {
      for (const std::string& name : names) {
        record.keys.push_back(JobKey{pair.target, pair.ancilla, name, phi});
      }
    }
    document.data.push_back(std::move(record));
  }
  return document;
}

}  // namespace

// ---------------------------------------------------------------------------
// Circuits and execution
// ---------------------------------------------------------------------------

DiscriminationComponents fourier_circuit_components(double phi) {
  const CMat v0 = fourier_v0(phi);
  const CMat v1 = fourier_v1(phi);

  DiscriminationComponents components;
  components.state_prep = Circuit::fragment2();
  components.state_prep.append(Gate::h(0));
  components.state_prep.append(Gate::cnot(0, 1));

  components.u_dag = Circuit::fragment1();
  components.u_dag.append(Gate::h(0));
  components.u_dag.append(Gate::phase(-phi, 0));
  components.u_dag.append(Gate::h(0));

  components.v0_dag = Circuit::fragment1();
  components.v0_dag.append(Gate::unitary1(dagger(v0), 0));

  components.v1_dag = Circuit::fragment1();
  components.v1_dag.append(Gate::unitary1(dagger(v1), 0));

  // V1 = V0 X, so CNOT after V0^dag on the ancilla realizes V0^dag (+) V1^dag.
  components.v0v1_direct_sum_dag = Circuit::fragment2();
  components.v0v1_direct_sum_dag.append(Gate::unitary1(dagger(v0), 1));
  components.v0v1_direct_sum_dag.append(Gate::cnot(0, 1));
  return components;
}

std::vector<JobUnit> enumerate_units(const ExperimentConfig& experiment,
                                     std::uint64_t master_seed) {
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<std::string> names = circuit_names(experiment.method);
  std::vector<JobUnit> units;
  units.reserve(experiment.qubits.size() * grid.size() * names.size());

  for (std::size_t pair_index = 0; pair_index < experiment.qubits.size(); ++pair_index) {
    const std::uint64_t pair_seed = derive_seed(master_seed, pair_index);
    for (std::size_t angle_index = 0; angle_index < grid.size(); ++angle_index) {
      const std::uint64_t angle_seed = derive_seed(pair_seed, angle_index);
      const DiscriminationComponents components = fourier_circuit_components(grid[angle_index]);
      std::map<std::string, Circuit> circuits;
      if (experiment.method == "direct_sum") {
        const DirectSumCircuits assembled = assemble_direct_sum_circuits(components, 0, 1);
        circuits["id"] = assembled.id;
        circuits["u"] = assembled.u;
      } else {
        const PostselectionCircuits assembled = assemble_postselection_circuits(components, 0, 1);
        circuits["id_v0"] = assembled.id_v0;
        circuits["id_v1"] = assembled.id_v1;
        circuits["u_v0"] = assembled.u_v0;
        circuits["u_v1"] = assembled.u_v1;
      }
      for (const std::string& name : names) {
        JobUnit unit;
        unit.pair_index = static_cast<int>(pair_index);
        unit.angle_index = static_cast<int>(angle_index);
        unit.circuit_name = name;
        unit.circuit = circuits.at(name);
        unit.seed = derive_seed(angle_seed, fnv1a64(name));
        units.push_back(std::move(unit));
      }
    }
  }
  return units;
}

std::vector<Histogram> execute_units(const std::vector<JobUnit>& units, long long num_shots,
                                     const std::optional<NoiseModel>& noise,
                                     ExecutionPolicy policy) {
  std::vector<Histogram> histograms(units.size());
  const auto run_unit = [&](std::size_t i) {
    Backend backend;
    backend.seed = units[i].seed;
    backend.noise = noise;
    histograms[i] = run(units[i].circuit, num_shots, backend);
  };

  if (policy == ExecutionPolicy::kSerial) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      run_unit(i);
    }
    return histograms;
  }

  bool failed = false;
  std::string message;
  std::mutex mutex;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(units.size()); ++i) {
    try {
      run_unit(static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      const std::lock_guard<std::mutex> lock(mutex);
      failed = true;
      message = e.what();
    }
  }
  if (failed) {
    throw ValidationError(message);
  }
  return histograms;
}

ResultDocument run_benchmark(const ExperimentConfig& experiment, const BackendConfig& backend,
                             ExecutionPolicy policy) {
  const std::uint64_t master_seed = effective_seed(backend);
  const std::vector<JobUnit> units = enumerate_units(experiment, master_seed);
  const std::vector<Histogram> histograms =
      execute_units(units, experiment.num_shots, backend.simulator.noise, policy);
  return assemble_document(experiment, normalized_backend(backend, master_seed), units,
                           histograms);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string serialize_result_document(const ResultDocument& document) {
  std::string out;
  emit_metadata(out, document.experiments, document.backend_description);
  out += "data:\n";
  for (const DataEntry& entry : document.data) {
    out += "- target: " + std::to_string(entry.target) + "\n";
    out += "  ancilla: " + std::to_string(entry.ancilla) + "\n";
    out += "  phi: " + yaml_double(entry.phi) + "\n";
    out += "  results_per_circuit:\n";
    for (const CircuitResult& result : entry.results_per_circuit) {
      out += "  - name: " + yaml_string(result.name) + "\n";
      out += "    histogram: " + flow_histogram(result.histogram) + "\n";
      if (result.mitigation_info) {
        out += "    mitigation_info:\n";
        emit_calibration_line(out, "      ", "target", result.mitigation_info->target);
        emit_calibration_line(out, "      ", "ancilla", result.mitigation_info->ancilla);
      }
      if (result.mitigated_histogram) {
        out += "    mitigated_histogram: " + flow_quasi_histogram(*result.mitigated_histogram) +
               "\n";
      }
    }
  }
  return out;
}

std::string serialize_intermediate_document(const IntermediateDocument& document) {
  std::string out;
  emit_metadata(out, document.experiments, document.backend_description);
  out += "data:\n";
  for (const JobRecord& record : document.data) {
    out += "- job_id: " + yaml_string(record.job_id) + "\n";
    out += "  keys:\n";
    for (const JobKey& key : record.keys) {
      out += "  - " + flow_job_key(key) + "\n";
    }
  }
  return out;
}

ResultDocument parse_result_document(const std::string& yaml_text) {
  const YAML::Node root = load_yaml(yaml_text, "result document");
  const Metadata metadata = parse_metadata(root, "result document");
  const ExperimentConfig& experiment = metadata.experiments;
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<std::string> names = circuit_names(experiment.method);
  const bool expect_mitigation = metadata.backend_description.simulator.noise.has_value();

  ResultDocument document;
  document.experiments = experiment;
  document.backend_description = metadata.backend_description;

  const YAML::Node data = require_field(root, "data", "result document");
  if (!data.IsSequence()) {
    throw ValidationError("result document: data must be a list");
  }
  const std::size_t expected = experiment.qubits.size() * grid.size();
  if (data.size() != expected) {
    throw ValidationError("result document: expected " + std::to_string(expected) +
                          " data entries (pairs x angles), found " + std::to_string(data.size()));
  }

  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::string ctx = "data[" + std::to_string(k) + "]";
    const YAML::Node node = data[k];
    require_map(node, ctx);
    reject_unknown_fields(node, {"target", "ancilla", "phi", "results_per_circuit"}, ctx);

    DataEntry entry;
    entry.target = scalar_as<int>(require_field(node, "target", ctx), ctx + ".target");
    entry.ancilla = scalar_as<int>(require_field(node, "ancilla", ctx), ctx + ".ancilla");
    entry.phi = scalar_as<double>(require_field(node, "phi", ctx), ctx + ".phi");

    const QubitPair& pair = experiment.qubits[k / grid.size()];
    const double phi = grid[k % grid.size()];
    if (entry.target != pair.target || entry.ancilla != pair.ancilla || entry.phi != phi) {
      throw ValidationError(ctx + ": entry out of canonical (pair, angle) order");
    }

    const YAML::Node circuits = require_field(node, "results_per_circuit", ctx);
    if (!circuits.IsSequence() || circuits.size() != names.size()) {
      throw ValidationError(ctx + ": results_per_circuit must list exactly the " +
                            experiment.method + " circuits");
    }
    for (std::size_t c = 0; c < circuits.size(); ++c) {
      const std::string cctx = ctx + ".results_per_circuit[" + std::to_string(c) + "]";
      const YAML::Node circuit = circuits[c];
      require_map(circuit, cctx);
      reject_unknown_fields(circuit, {"name", "histogram", "mitigation_info", "mitigated_histogram"},
                            cctx);
      CircuitResult result;
      result.name = scalar_as<std::string>(require_field(circuit, "name", cctx), cctx + ".name");
      if (result.name != names[c]) {
        throw ValidationError(cctx + ": expected circuit '" + names[c] + "', found '" +
                              result.name + "'");
      }
      result.histogram =
          parse_histogram_node(require_field(circuit, "histogram", cctx), cctx + ".histogram");
      if (histogram_total(result.histogram) != experiment.num_shots) {
        throw ValidationError(cctx + ": histogram total differs from num_shots");
      }
      const YAML::Node info = circuit["mitigation_info"];
      const YAML::Node mitigated = circuit["mitigated_histogram"];
      if (expect_mitigation) {
        if (!info.IsDefined() || !mitigated.IsDefined()) {
          throw ValidationError(cctx +
                                ": backend declares readout noise, so mitigation_info and "
                                "mitigated_histogram are required");
        }
        result.mitigation_info = parse_noise_node(info, cctx + ".mitigation_info");
        result.mitigated_histogram =
            parse_quasi_histogram_node(mitigated, cctx + ".mitigated_histogram");
      } else if (info.IsDefined() || mitigated.IsDefined()) {
        throw ValidationError(cctx +
                              ": mitigation fields present although the backend declares no "
                              "readout noise");
      }
      entry.results_per_circuit.push_back(std::move(result));
    }
    document.data.push_back(std::move(entry));
  }
  return document;
}

IntermediateDocument parse_intermediate_document(const std::string& yaml_text) {
  const YAML::Node root = load_yaml(yaml_text, "intermediate document");
  const Metadata metadata = parse_metadata(root, "intermediate document");
  const ExperimentConfig& experiment = metadata.experiments;
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<std::string> names = circuit_names(experiment.method);

  IntermediateDocument document;
  document.experiments = experiment;
  document.backend_description = metadata.backend_description;

  const YAML::Node data = require_field(root, "data", "intermediate document");
  if (!data.IsSequence() || data.size() == 0) {
    throw ValidationError("intermediate document: data must be a non-empty list of jobs");
  }

  std::set<std::string> seen_ids;
  std::set<std::tuple<int, int, std::string>> seen_keys;
  for (std::size_t j = 0; j < data.size(); ++j) {
    const std::string ctx = "data[" + std::to_string(j) + "]";
    const YAML::Node node = data[j];
    require_map(node, ctx);
    reject_unknown_fields(node, {"job_id", "keys"}, ctx);
    JobRecord record;
    record.job_id =
        scalar_as<std::string>(require_field(node, "job_id", ctx), ctx + ".job_id");
    if (record.job_id.empty()) {
      throw ValidationError(ctx + ": job_id must be a non-empty string");
    }
    if (!seen_ids.insert(record.job_id).second) {
      throw ValidationError(ctx + ": duplicate job_id '" + record.job_id + "'");
    }
    const YAML::Node keys = require_field(node, "keys", ctx);
    if (!keys.IsSequence() || keys.size() == 0) {
      throw ValidationError(ctx + ": keys must be a non-empty list");
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const std::string kctx = ctx + ".keys[" + std::to_string(i) + "]";
      const JobKey key = parse_job_key_node(keys[i], kctx);
      const int pair_index = index_of_pair(experiment, key.target, key.ancilla);
      if (pair_index < 0) {
        throw ValidationError(kctx + ": pair (" + std::to_string(key.target) + ", " +
                              std::to_string(key.ancilla) + ") is not part of the experiment");
      }
      const int angle_index = index_of_angle(grid, key.phi);
      if (angle_index < 0) {
        throw ValidationError(kctx + ": angle " + shortest_double(key.phi) +
                              " is not on the experiment grid");
      }
      if (std::find(names.begin(), names.end(), key.name) == names.end()) {
        throw ValidationError(kctx + ": circuit '" + key.name + "' does not belong to method " +
                              experiment.method);
      }
      if (!seen_keys.insert({pair_index, angle_index, key.name}).second) {
        throw ValidationError(kctx + ": key listed more than once");
      }
      record.keys.push_back(key);
    }
    document.data.push_back(std::move(record));
  }

  const std::size_t expected = experiment.qubits.size() * grid.size() * names.size();
  if (seen_keys.size() != expected) {
    throw ValidationError("intermediate document: jobs cover " +
                          std::to_string(seen_keys.size()) + " keys, expected " +
                          std::to_string(expected));
  }
  return document;
}

// ---------------------------------------------------------------------------
// Tabulation
// ---------------------------------------------------------------------------

namespace {

std::string csv_phi(double phi) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", phi);
  std::string s(buffer);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') {
      s.pop_back();
    }
    if (s.back() == '.') {
      s.pop_back();
    }
  }
  return s;
}

// The reference column is analytic, so it is printed at 10 significant
// digits: enough for any comparison against sampled data, while grid
// endpoints like 2*pi round to the clean 0.5 instead of carrying the last
// ulp of |1 - e^{i phi}|.  Measured columns keep full precision.
std::string csv_ideal(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", p);
  return std::string(buffer);
}

MitigatedHistogram quasi_of(const CircuitResult& result) {
  return MitigatedHistogram{*result.mitigated_histogram};
}

}  // namespace

std::string tabulate_csv(const ResultDocument& document) {
  const std::string& method = document.experiments.method;
  const bool mitigated = document.backend_description.simulator.noise.has_value();

  std::string out = "target,ancilla,phi,ideal_prob,disc_prob";
  if (mitigated) {
    out += ",mit_disc_prob";
  }
  out += "\n";

  for (const DataEntry& entry : document.data) {
    std::map<std::string, const CircuitResult*> by_name;
    for (const CircuitResult& result : entry.results_per_circuit) {
      by_name[result.name] = &result;
    }
    double disc = 0.0;
    double mit = 0.0;
    if (method == "direct_sum") {
      disc = direct_sum_probability(by_name.at("id")->histogram, by_name.at("u")->histogram);
      if (mitigated) {
        mit = mitigated_probability_direct_sum(quasi_of(*by_name.at("id")),
                                               quasi_of(*by_name.at("u")))
                  .value;
      }
    } else {
      disc = postselection_probability(by_name.at("id_v0")->histogram,
                                       by_name.at("id_v1")->histogram,
                                       by_name.at("u_v0")->histogram,
                                       by_name.at("u_v1")->histogram);
      if (mitigated) {
        mit = mitigated_probability_postselection(quasi_of(*by_name.at("id_v0")),
                                                  quasi_of(*by_name.at("id_v1")),
                                                  quasi_of(*by_name.at("u_v0")),
                                                  quasi_of(*by_name.at("u_v1")))
                  .value;
      }
    }

    out += std::to_string(entry.target) + "," + std::to_string(entry.ancilla) + "," +
           csv_phi(entry.phi) + "," + csv_ideal(fourier_p_succ(entry.phi)) + "," +
           shortest_double(disc);
    if (mitigated) {
      out += "," + shortest_double(mit);
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Job store and commands
// ---------------------------------------------------------------------------

std::string job_store_directory(const std::string& intermediate_path) {
  const std::filesystem::path path(intermediate_path);
  std::filesystem::path store = path;
  store.replace_extension(".jobs");
  if (store == path) {
    store = path.string() + ".jobs";
  }
  return store.string();
}

std::map<std::string, int> read_job_statuses(const std::string& intermediate_path) {
  const IntermediateDocument document =
      parse_intermediate_document(read_file(intermediate_path));
  const std::string store = job_store_directory(intermediate_path);
  std::map<std::string, int> counts;
  for (const JobRecord& record : document.data) {
    const std::string path = job_file_path(store, record.job_id);
    if (!std::filesystem::exists(path)) {
      throw IoError("unknown job_id '" + record.job_id + "': no record at '" + path + "'");
    }
    const JobFile job = parse_job_file(read_file(path), "job record '" + record.job_id + "'");
    if (job.job_id != record.job_id) {
      throw ValidationError("job record '" + path + "' carries mismatched job_id '" + job.job_id +
                            "'");
    }
    ++counts[job.status];
  }
  return counts;
}

std::string format_status_line(const std::map<std::string, int>& counts) {
  std::string out = "{";
  bool first = true;
  for (const auto& [status, count] : counts) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += status + ": " + std::to_string(count);
  }
  out += "}";
  return out;
}

void command_benchmark(const std::string& experiment_path, const std::string& backend_path,
                       const std::optional<std::string>& output_path, std::ostream& out,
                       ExecutionPolicy policy) {
  const ExperimentConfig experiment = load_experiment_config(experiment_path);
  const BackendConfig backend = load_backend_config(backend_path);
  if (experiment.gateset != "generic") {
    std::cerr << "note: gateset '" << experiment.gateset
              << "' is executed as 'generic' on the local simulator\n";
  }

  if (!backend.asynchronous) {
    const std::string text = serialize_result_document(run_benchmark(experiment, backend, policy));
    if (output_path) {
      write_file(*output_path, text);
    } else {
      out << text;
    }
    return;
  }

  if (!output_path) {
    throw ValidationError(
        "an asynchronous benchmark requires --output PATH (the job store is created next to it)");
  }
  const std::uint64_t master_seed = effective_seed(backend);
  const IntermediateDocument document = build_intermediate_document(
      experiment, normalized_backend(backend, master_seed), master_seed);

  const std::string store = job_store_directory(*output_path);
  std::error_code ec;
  std::filesystem::create_directories(store, ec);
  if (ec) {
    throw IoError("cannot create job store '" + store + "': " + ec.message());
  }
  for (const JobRecord& record : document.data) {
    JobFile job;
    job.job_id = record.job_id;
    job.status = kStatusPending;
    job.keys = record.keys;
    write_file(job_file_path(store, record.job_id), serialize_job_file(job));
  }
  write_file(*output_path, serialize_intermediate_document(document));
}

void command_status(const std::string& intermediate_path, std::ostream& out) {
  out << format_status_line(read_job_statuses(intermediate_path)) << "\n";
}

void command_resolve(const std::string& intermediate_path, const std::string& output_path,
                     ExecutionPolicy policy) {
  const IntermediateDocument document =
      parse_intermediate_document(read_file(intermediate_path));
  const ExperimentConfig& experiment = document.experiments;
  const BackendConfig& backend = document.backend_description;
  const std::uint64_t master_seed = effective_seed(backend);
  const std::vector<double> grid = experiment_angles(experiment);
  const std::vector<JobUnit> units = enumerate_units(experiment, master_seed);

  std::map<std::tuple<int, int, std::string>, std::size_t> unit_index;
  for (std::size_t i = 0; i < units.size(); ++i) {
    unit_index[{units[i].pair_index, units[i].angle_index, units[i].circuit_name}] = i;
  }
  const auto index_of_key = [&](const JobKey& key) {
    const int pair_index = index_of_pair(experiment, key.target, key.ancilla);
    const int angle_index = index_of_angle(grid, key.phi);
    return unit_index.at({pair_index, angle_index, key.name});
  };

  const std::string store = job_store_directory(intermediate_path);
  std::vector<Histogram> histograms(units.size());
  std::vector<JobFile> pending;
  for (const JobRecord& record : document.data) {
    const std::string path = job_file_path(store, record.job_id);
    if (!std::filesystem::exists(path)) {
      throw IoError("unknown job_id '" + record.job_id + "': no record at '" + path + "'");
    }
    JobFile job = parse_job_file(read_file(path), "job record '" + record.job_id + "'");
    if (job.job_id != record.job_id) {
      throw ValidationError("job record '" + path + "' carries mismatched job_id '" + job.job_id +
                            "'");
    }
    if (job.keys.size() != record.keys.size()) {
      throw ValidationError("job record '" + record.job_id +
                            "' does not match the intermediate document's key list");
    }
    for (std::size_t i = 0; i < job.keys.size(); ++i) {
      if (!same_key(job.keys[i], record.keys[i])) {
        throw ValidationError("job record '" + record.job_id +
                              "' does not match the intermediate document's key list");
      }
    }
    if (job.status == kStatusDone) {
      for (std::size_t i = 0; i < job.keys.size(); ++i) {
        if (histogram_total(job.results[i]) != experiment.num_shots) {
          throw ValidationError("job record '" + record.job_id +
                                "': stored histogram total differs from num_shots");
        }
        histograms[index_of_key(job.keys[i])] = job.results[i];
      }
    } else {
      pending.push_back(std::move(job));
    }
  }

  if (!pending.empty()) {
    std::vector<JobUnit> todo;
    for (const JobFile& job : pending) {
      for (const JobKey& key : job.keys) {
        todo.push_back(units[index_of_key(key)]);
      }
    }
    const std::vector<Histogram> sampled =
        execute_units(todo, experiment.num_shots, backend.simulator.noise, policy);
    std::size_t cursor = 0;
    for (JobFile& job : pending) {
      job.status = kStatusDone;
      job.results.clear();
      for (const JobKey& key : job.keys) {
        histograms[index_of_key(key)] = sampled[cursor];
        job.results.push_back(sampled[cursor]);
        ++cursor;
      }
      write_file(job_file_path(store, job.job_id), serialize_job_file(job));
    }
  }

  const ResultDocument result = assemble_document(
      experiment, normalized_backend(backend, master_seed), units, histograms);
  write_file(output_path, serialize_result_document(result));
}

void command_tabulate(const std::string& results_path, const std::string& csv_path) {
  const ResultDocument document = parse_result_document(read_file(results_path));
  write_file(csv_path, tabulate_csv(document));
}

}  // namespace mdbench
