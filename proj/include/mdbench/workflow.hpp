#pragma once

// The benchmark workflow behind the command line: assemble the Fourier
// circuits for every (qubit pair, angle), execute them on the simulator
// with deterministically derived sub-seeds, and serialize the results as
// YAML documents and CSV tables.  Asynchronous backends go through a
// file-based job store next to the intermediate document; resolving it
// reproduces the synchronous output byte-for-byte (apart from the
// `asynchronous` flag echoed in the metadata).

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mdbench/config.hpp"
#include "mdbench/schemes.hpp"

namespace mdbench {

// Circuit fragments of the Fourier experiment at angle phi: Bell state
// preparation, U-dagger as H Phase(-phi) H, and the optimal final
// measurements from the strategy module as embedded one-qubit unitaries.
DiscriminationComponents fourier_circuit_components(double phi);

// One measured circuit of a benchmark run with its derived seed.  The seed
// chain is master -> pair index -> angle index -> fnv1a64(circuit name),
// one derive_seed step each, so every unit owns an independent stream no
// matter in which order (or on which thread) it runs.
struct JobUnit {
  int pair_index = 0;
  int angle_index = 0;
  std::string circuit_name;
  Circuit circuit;
  std::uint64_t seed = 0;
};

// All units of the experiment in canonical order: pair-major, then angle,
// then circuit name.
std::vector<JobUnit> enumerate_units(const ExperimentConfig& experiment,
                                     std::uint64_t master_seed);

enum class ExecutionPolicy { kSerial, kParallel };

// Runs every unit and returns the histograms in unit order.  kParallel
// spreads units across OpenMP threads; both policies produce identical
// results because each unit samples its own counter-based stream.
std::vector<Histogram> execute_units(const std::vector<JobUnit>& units, long long num_shots,
                                     const std::optional<NoiseModel>& noise,
                                     ExecutionPolicy policy);

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

struct CircuitResult {
  std::string name;
  Histogram histogram;
  // Both set when the backend declared readout noise, absent otherwise.
  std::optional<NoiseModel> mitigation_info;
  std::optional<QuasiHistogram> mitigated_histogram;
};

struct DataEntry {
  int target = 0;
  int ancilla = 0;
  double phi = 0.0;
  std::vector<CircuitResult> results_per_circuit;
};

// The final output document.  backend_description always carries the
// effective master seed, so a result file pins down its own reproduction.
struct ResultDocument {
  ExperimentConfig experiments;
  BackendConfig backend_description;
  std::vector<DataEntry> data;
};

// One submitted job: all circuits of one qubit pair, identified by
// [target, ancilla, circuit name, phi] keys in canonical order.
struct JobKey {
  int target = 0;
  int ancilla = 0;
  std::string name;
  double phi = 0.0;
};

struct JobRecord {
  std::string job_id;
  std::vector<JobKey> keys;
};

// The intermediate document written by an asynchronous benchmark.
struct IntermediateDocument {
  ExperimentConfig experiments;
  BackendConfig backend_description;
  std::vector<JobRecord> data;
};

// Runs the whole benchmark in memory (advisories and files are the command
// layer's business).  The returned document embeds the effective seed.
ResultDocument run_benchmark(const ExperimentConfig& experiment, const BackendConfig& backend,
                             ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Serializers emit a canonical byte layout (stable key order, shortest
// round-trip floats), so equal documents serialize to equal bytes.
std::string serialize_result_document(const ResultDocument& document);
std::string serialize_intermediate_document(const IntermediateDocument& document);

// Parsers validate structure: complete circuit sets per entry, histogram
// totals equal to num_shots, mitigation fields paired, unique job ids.
ResultDocument parse_result_document(const std::string& yaml_text);
IntermediateDocument parse_intermediate_document(const std::string& yaml_text);

// CSV table with one row per (pair, angle): target, ancilla, phi (two
// decimals, trailing zeros trimmed), ideal_prob, disc_prob, and
// mit_disc_prob when the document carries mitigation data.
std::string tabulate_csv(const ResultDocument& document);

// The job-store directory belonging to an intermediate document path:
// the path with its extension replaced by ".jobs".
std::string job_store_directory(const std::string& intermediate_path);

// Status counts over the store of an intermediate document, keyed by
// PENDING/DONE, formatted as a single-line YAML map like {DONE: 2}.
std::map<std::string, int> read_job_statuses(const std::string& intermediate_path);
std::string format_status_line(const std::map<std::string, int>& counts);

// ---------------------------------------------------------------------------
// Command layer (the CLI subcommands as library calls)
// ---------------------------------------------------------------------------

// benchmark EXPERIMENT BACKEND [--output PATH].  Synchronous backends write
// the result document to `output_path`, or to `out` when no path is given;
// asynchronous ones require a path and create the job store next to it.
void command_benchmark(const std::string& experiment_path, const std::string& backend_path,
                       const std::optional<std::string>& output_path, std::ostream& out,
                       ExecutionPolicy policy = ExecutionPolicy::kParallel);

// status INTERMEDIATE: prints the status histogram to `out`.
void command_status(const std::string& intermediate_path, std::ostream& out);

// resolve INTERMEDIATE OUTPUT: executes pending jobs (marking them DONE in
// the store), collects all histograms and writes the final document.
// Resolving an already-resolved store reuses the stored results, so the
// command is idempotent.
void command_resolve(const std::string& intermediate_path, const std::string& output_path,
                     ExecutionPolicy policy = ExecutionPolicy::kParallel);

// tabulate RESULTS CSV: writes the summary table of a result document.
void command_tabulate(const std::string& results_path, const std::string& csv_path);

}  // namespace mdbench
