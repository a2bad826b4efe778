// Timing harness for the two execution paths: the serial reference sampler
// against its OpenMP twin, and a full benchmark run under both execution
// policies.  Each comparison also re-checks bit-identical results, since the
// parallel path is only useful if it can replace the serial one silently.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "mdbench/config.hpp"
#include "mdbench/simulator.hpp"
#include "mdbench/workflow.hpp"

using namespace mdbench;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::string kExperimentYaml = R"(type: discrimination-fourier
qubits:
- target: 0
  ancilla: 1
- target: 1
  ancilla: 2
- target: 2
  ancilla: 3
- target: 3
  ancilla: 4
angles:
  start: 0
  stop: 2 * pi
  num_steps: 16
gateset: generic
method: postselection
num_shots: 200000
)";

}  // namespace

int main() {
  int mismatches = 0;

  // --- Raw sampler -------------------------------------------------------
  {
    QuasiHistogram dist{{"00", 0.42}, {"01", 0.18}, {"10", 0.27}, {"11", 0.13}};
    const long long shots = 50'000'000;
    std::printf("sampler: %lld shots from a fixed four-outcome distribution\n", shots);

    auto start = std::chrono::steady_clock::now();
    const Histogram serial = sample_histogram(dist, shots, 12345);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const Histogram parallel = sample_histogram_parallel(dist, shots, 12345);
    const double t_parallel = seconds_since(start);

    const bool identical = serial == parallel;
    std::printf("  serial   %.3fs\n  parallel %.3fs  (%.2fx)\n  identical: %s\n", t_serial,
                t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");
    if (!identical) {
      ++mismatches;
    }
  }

  // --- Full benchmark runs -----------------------------------------------
  {
    const ExperimentConfig experiment = parse_experiment_config(kExperimentYaml);
    BackendConfig backend;
    backend.name = "local-simulator";
    backend.asynchronous = false;
    backend.simulator.seed = 99;
    std::printf("benchmark: %zu pairs x %d angles x 4 circuits x %lld shots\n",
                experiment.qubits.size(), experiment.angles.num_steps, experiment.num_shots);

    auto start = std::chrono::steady_clock::now();
    const ResultDocument serial = run_benchmark(experiment, backend, ExecutionPolicy::kSerial);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const ResultDocument parallel =
        run_benchmark(experiment, backend, ExecutionPolicy::kParallel);
    const double t_parallel = seconds_since(start);

    const bool identical =
        serialize_result_document(serial) == serialize_result_document(parallel);
    std::printf("  serial   %.3fs\n  parallel %.3fs  (%.2fx)\n  identical: %s\n", t_serial,
                t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");
    if (!identical) {
      ++mismatches;
    }
  }

  if (mismatches != 0) {
    std::printf("parallel output diverged from the serial reference\n");
    return 1;
  }
  return 0;
}
