// Acceptance suite: every release-gating behavior of the library and CLI is
// checked here, one line of output per criterion.  The binary exits nonzero
// when any criterion fails, so a plain run doubles as a release gate.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mdbench/config.hpp"
#include "mdbench/linalg.hpp"
#include "mdbench/mitigation.hpp"
#include "mdbench/rng.hpp"
#include "mdbench/schemes.hpp"
#include "mdbench/simulator.hpp"
#include "mdbench/strategy.hpp"
#include "mdbench/workflow.hpp"
#include "testutil.hpp"

using namespace mdbench;
using testutil::kHadamardP;
using testutil::kPi;

namespace {

int g_failures = 0;

// Runs one numbered criterion, timing it and catching stray exceptions.
void criterion(int number, const char* description, double time_limit_seconds,
               const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  const auto started = std::chrono::steady_clock::now();
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" [exception: ") + e.what() + "]";
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (time_limit_seconds > 0.0 && elapsed > time_limit_seconds) {
    ok = false;
    note += " [over time budget]";
  }
  std::printf("%s %d %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", number, description, elapsed,
              note.c_str());
  if (!ok) {
    ++g_failures;
  }
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("mdbench_acceptance_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::string file(const std::string& name, const std::string& content) const {
    const std::string full = (path / name).string();
    std::ofstream out(full, std::ios::binary);
    out << content;
    return full;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CMat direct_sum_block(const CMat& top, const CMat& bottom) {
  CMat m = CMat::zero(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m.at(i, j) = top(i, j);
      m.at(2 + i, 2 + j) = bottom(i, j);
    }
  }
  return m;
}

const std::string kPipelineExperiment = R"(type: discrimination-fourier
qubits:
- target: 0
  ancilla: 1
- target: 1
  ancilla: 2
angles:
  start: 0
  stop: 2 * pi
  num_steps: 3
gateset: generic
method: direct_sum
num_shots: 100000
)";

const std::string kPipelineBackend = R"(name: local-simulator
asynchronous: false
simulator:
  seed: 1234
)";

}  // namespace

int main() {
  criterion(1, "closed-form success probability hits the quarter-turn values", 0.0, [] {
    const double expected[] = {0.5, kHadamardP, 1.0, kHadamardP, 0.5};
    const double angles[] = {0.0, kPi / 2, kPi, 3 * kPi / 2, 2 * kPi};
    for (int k = 0; k < 5; ++k) {
      if (std::abs(fourier_p_succ(angles[k]) - expected[k]) > 1e-12) {
        return false;
      }
    }
    return true;
  });

  criterion(2, "noiseless sampling reproduces the Hadamard optimum in both schemes", 1.0, [] {
    const DiscriminationComponents components = testutil::hadamard_circuits();
    const long long shots = 10000;
    const auto sample = [&](const Circuit& c, std::uint64_t key) {
      return sample_histogram(exact_distribution(c, std::nullopt), shots, derive_seed(11, key));
    };
    const PostselectionCircuits ps = assemble_postselection_circuits(components, 0, 1);
    const double p_post = postselection_probability(sample(ps.id_v0, 0), sample(ps.id_v1, 1),
                                                    sample(ps.u_v0, 2), sample(ps.u_v1, 3));
    const DirectSumCircuits ds = assemble_direct_sum_circuits(components, 0, 1);
    const double p_direct = direct_sum_probability(sample(ds.id, 4), sample(ds.u, 5));
    return std::abs(p_post - kHadamardP) < 0.02 && std::abs(p_direct - kHadamardP) < 0.02;
  });

  criterion(3, "strong readout noise drags the raw estimate toward chance", 1.0, [] {
    const DiscriminationComponents components = testutil::hadamard_circuits();
    NoiseModel noise;
    noise.target = ReadoutCalibration{0.25, 0.8};
    noise.ancilla = ReadoutCalibration{0.25, 0.8};
    const long long shots = 10000;
    const auto sample = [&](const Circuit& c, std::uint64_t key) {
      return sample_histogram(exact_distribution(c, noise), shots, derive_seed(7, key));
    };
    const PostselectionCircuits ps = assemble_postselection_circuits(components, 0, 1);
    const double p = postselection_probability(sample(ps.id_v0, 0), sample(ps.id_v1, 1),
                                               sample(ps.u_v0, 2), sample(ps.u_v1, 3));
    return p > 0.45 && p < 0.55;
  });

  criterion(4, "diamond-norm distances match their closed forms", 1.0, [] {
    for (int k = 0; k < 100; ++k) {
      const double phi = 2.0 * kPi * k / 99.0;
      const double expected = std::abs(1.0 - std::exp(cdouble(0.0, phi)));
      if (std::abs(diamond_norm_unitary(fourier_u(phi)) - expected) > 1e-12) {
        return false;
      }
    }
    return std::abs(diamond_norm_measurements(hadamard_matrix()) - std::sqrt(2.0)) < 1e-9;
  });

  criterion(5, "synthesized strategies achieve the optimal probability", 1.0, [] {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> angle(1e-3, 2.0 * kPi - 1e-3);
    for (int trial = 0; trial < 50; ++trial) {
      const double phi = angle(rng);
      const SynthesizedStrategy s = synthesize_strategy(fourier_u(phi));
      const double expected = 0.5 + std::abs(1.0 - std::exp(cdouble(0.0, phi))) / 4.0;
      if (std::abs(s.exact_p_succ - expected) > 1e-9) {
        return false;
      }
    }
    // For the Hadamard measurement the synthesized final bases agree with the
    // closed-form ones column by column, up to phases.
    const SynthesizedStrategy s = synthesize_strategy(hadamard_matrix());
    const HadamardComponents h = hadamard_components();
    for (int col = 0; col < 2; ++col) {
      if (std::abs(testutil::overlap(testutil::column(s.v0, col),
                                     testutil::column(h.v0, col)) -
                   1.0) > 1e-9 ||
          std::abs(testutil::overlap(testutil::column(s.v1, col),
                                     testutil::column(h.v1, col)) -
                   1.0) > 1e-9) {
        return false;
      }
    }
    return std::abs(s.exact_p_succ - kHadamardP) < 1e-9;
  });

  criterion(6, "both schemes score identically for arbitrary final bases", 2.0, [] {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 20; ++trial) {
      const double phi = angle(rng);
      const CMat w0 = testutil::random_unitary(2, rng);
      const CMat w1 = testutil::random_unitary(2, rng);

      DiscriminationComponents c;
      c.state_prep.append(Gate::h(0));
      c.state_prep.append(Gate::cnot(0, 1));
      c.u_dag.append(Gate::unitary1(dagger(fourier_u(phi)), 0));
      c.v0_dag.append(Gate::unitary1(dagger(w0), 0));
      c.v1_dag.append(Gate::unitary1(dagger(w1), 0));
      c.v0v1_direct_sum_dag.append(
          Gate::unitary2(direct_sum_block(dagger(w0), dagger(w1))));
      validate_components(c);

      const PostselectionCircuits ps = assemble_postselection_circuits(c, 0, 1);
      const double p_post = postselection_score(
          exact_distribution(ps.id_v0, std::nullopt), exact_distribution(ps.id_v1, std::nullopt),
          exact_distribution(ps.u_v0, std::nullopt), exact_distribution(ps.u_v1, std::nullopt));
      const DirectSumCircuits ds = assemble_direct_sum_circuits(c, 0, 1);
      const double p_direct = direct_sum_score(exact_distribution(ds.id, std::nullopt),
                                               exact_distribution(ds.u, std::nullopt));
      if (std::abs(p_post - p_direct) > 1e-12) {
        return false;
      }
    }
    return true;
  });

  criterion(7, "the benchmark pipeline reproduces the analytic curve", 5.0, [] {
    const TempDir dir("pipeline");
    const std::string experiment = dir.file("experiment.yml", kPipelineExperiment);
    const std::string backend = dir.file("backend.yml", kPipelineBackend);
    const std::string out = (dir.path / "result.yml").string();
    std::ostringstream sink;
    command_benchmark(experiment, backend, out, sink);

    const ResultDocument document = parse_result_document(slurp(out));
    if (document.data.size() != 6) {
      return false;
    }
    const std::string csv = tabulate_csv(document);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    const std::string ideals[] = {"0.5", "1", "0.5"};
    while (std::getline(lines, line)) {
      std::vector<std::string> cells;
      std::istringstream cell_stream(line);
      std::string cell;
      while (std::getline(cell_stream, cell, ',')) {
        cells.push_back(cell);
      }
      if (cells.size() != 5 || cells[3] != ideals[rows % 3]) {
        return false;
      }
      if (std::abs(std::stod(cells[4]) - std::stod(cells[3])) > 0.01) {
        return false;
      }
      ++rows;
    }
    return rows == 6;
  });

  criterion(8, "asynchronous submission resolves to the synchronous document", 10.0, [] {
    const TempDir dir("resolve");
    const std::string experiment = dir.file("experiment.yml", kPipelineExperiment);
    const std::string sync_backend = dir.file("sync.yml", kPipelineBackend);
    const std::string async_backend = dir.file(
        "async.yml", "name: local-simulator\nasynchronous: true\nsimulator:\n  seed: 1234\n");
    const std::string sync_out = (dir.path / "sync.yml").string();
    const std::string intermediate = (dir.path / "jobs.yml").string();
    const std::string resolved = (dir.path / "resolved.yml").string();

    std::ostringstream sink;
    command_benchmark(experiment, sync_backend, sync_out, sink);
    command_benchmark(experiment, async_backend, intermediate, sink);
    command_resolve(intermediate, resolved);

    std::string text = slurp(resolved);
    const std::size_t flag = text.find("asynchronous: true");
    if (flag == std::string::npos) {
      return false;
    }
    text.replace(flag, 18, "asynchronous: false");
    return text == slurp(sync_out) && !text.empty();
  });

  criterion(9, "mitigation inverts readout noise and improves estimates", 5.0, [] {
    // Inversion: for random calibrations and histograms, pushing the
    // mitigated quasi-probabilities back through the confusion matrices
    // recovers the measured frequencies.
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> prob(0.0, 0.45);
    std::uniform_int_distribution<long long> count(0, 1000);
    const std::string keys[] = {"00", "01", "10", "11"};
    for (int trial = 0; trial < 100; ++trial) {
      const ReadoutCalibration cal_t{prob(rng), prob(rng)};
      const ReadoutCalibration cal_a{prob(rng), prob(rng)};
      Histogram hist;
      long long total = 0;
      for (const std::string& key : keys) {
        const long long c = count(rng);
        if (c > 0) {
          hist[key] = c;
          total += c;
        }
      }
      if (total == 0) {
        hist["00"] = total = 1;
      }
      const MitigatedHistogram mitigated = mitigate(hist, cal_t, cal_a);
      const CMat forward = kron(confusion_matrix(cal_t), confusion_matrix(cal_a));
      CVec quasi(4);
      double quasi_sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        const auto it = mitigated.quasi_probs.find(keys[k]);
        quasi.at(k) = it == mitigated.quasi_probs.end() ? 0.0 : it->second;
        quasi_sum += quasi(k).real();
      }
      if (std::abs(quasi_sum - 1.0) > 1e-9) {
        return false;
      }
      const CVec pushed = matvec(forward, quasi);
      for (int k = 0; k < 4; ++k) {
        const auto it = hist.find(keys[k]);
        const double freq =
            (it == hist.end() ? 0.0 : static_cast<double>(it->second)) / total;
        if (std::abs(pushed(k).real() - freq) > 1e-9 || std::abs(pushed(k).imag()) > 1e-12) {
          return false;
        }
      }
    }

    // Improvement: across seeded noisy runs, the mitigated estimate ends up
    // closer to the analytic value than the raw one almost always.
    const DiscriminationComponents components = testutil::hadamard_circuits();
    const PostselectionCircuits ps = assemble_postselection_circuits(components, 0, 1);
    NoiseModel noise;
    noise.target = ReadoutCalibration{0.25, 0.8};
    noise.ancilla = ReadoutCalibration{0.25, 0.8};
    const long long shots = 10000;
    int improved = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const auto sample = [&](const Circuit& c, std::uint64_t key) {
        return sample_histogram(exact_distribution(c, noise), shots, derive_seed(seed, key));
      };
      const Histogram id_v0 = sample(ps.id_v0, 0);
      const Histogram id_v1 = sample(ps.id_v1, 1);
      const Histogram u_v0 = sample(ps.u_v0, 2);
      const Histogram u_v1 = sample(ps.u_v1, 3);
      const double raw = postselection_probability(id_v0, id_v1, u_v0, u_v1);
      const MitigatedProbability mitigated = mitigated_probability_postselection(
          mitigate(id_v0, noise.target, noise.ancilla),
          mitigate(id_v1, noise.target, noise.ancilla),
          mitigate(u_v0, noise.target, noise.ancilla),
          mitigate(u_v1, noise.target, noise.ancilla));
      if (std::abs(mitigated.value - kHadamardP) < std::abs(raw - kHadamardP)) {
        ++improved;
      }
    }
    return improved >= 9;
  });

  criterion(10, "result documents and tables are byte-stable across runs and policies", 20.0,
            [] {
              const ExperimentConfig experiment = parse_experiment_config(
                  R"(type: discrimination-fourier
qubits:
- target: 0
  ancilla: 1
- target: 1
  ancilla: 2
angles:
  start: 0
  stop: 2 * pi
  num_steps: 3
gateset: generic
method: postselection
num_shots: 2000
)");
              const BackendConfig backend = parse_backend_config(
                  R"(name: noisy-simulator
asynchronous: false
simulator:
  seed: 4242
  noise:
    target:
      prob_meas0_prep1: 0.8
      prob_meas1_prep0: 0.25
    ancilla:
      prob_meas0_prep1: 0.8
      prob_meas1_prep0: 0.25
)");
              const ResultDocument serial_1 =
                  run_benchmark(experiment, backend, ExecutionPolicy::kSerial);
              const ResultDocument serial_2 =
                  run_benchmark(experiment, backend, ExecutionPolicy::kSerial);
              const ResultDocument parallel_1 =
                  run_benchmark(experiment, backend, ExecutionPolicy::kParallel);
              const ResultDocument parallel_2 =
                  run_benchmark(experiment, backend, ExecutionPolicy::kParallel);
              const std::string text = serialize_result_document(serial_1);
              if (text.empty()) {
                return false;
              }
              return serialize_result_document(serial_2) == text &&
                     serialize_result_document(parallel_1) == text &&
                     serialize_result_document(parallel_2) == text &&
                     tabulate_csv(parallel_1) == tabulate_csv(serial_1);
            });

  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
