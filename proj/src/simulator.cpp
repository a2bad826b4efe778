#include "mdbench/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "mdbench/mitigation.hpp"

namespace mdbench {

namespace {

constexpr const char* kKeys[4] = {"00", "01", "10", "11"};

std::array<double, 4> ideal_probabilities(const Circuit& circuit) {
  if (circuit.num_wires != 2) {
    throw ValidationError("simulation requires a two-wire circuit");
  }
  // Evolve |00> gate by gate.
  std::array<cdouble, 4> state = {1.0, 0.0, 0.0, 0.0};
  for (const Gate& g : circuit.gates) {
    const CMat m = g.expanded_matrix();
    std::array<cdouble, 4> next = {0.0, 0.0, 0.0, 0.0};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        next[r] += m(r, c) * state[c];
      }
    }
    state = next;
  }
  std::array<double, 4> p{};
  for (int b = 0; b < 4; ++b) {
    p[b] = std::norm(state[b]);
  }
  return p;
}

std::array<double, 4> to_array(const QuasiHistogram& dist) {
  std::array<double, 4> p{};
  double sum = 0.0;
  for (const auto& [key, value] : dist) {
    int index = -1;
    for (int b = 0; b < 4; ++b) {
      if (key == kKeys[b]) {
        index = b;
      }
    }
    if (index < 0) {
      throw ValidationError("distribution key must be one of 00/01/10/11, got '" + key + "'");
    }
    if (value < -1e-12) {
      throw ValidationError("distribution entry for '" + key + "' is negative");
    }
    p[index] = std::max(value, 0.0);
    sum += p[index];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("distribution does not sum to 1");
  }
  return p;
}

// Picks the outcome bucket of a uniform draw via the inverse CDF.
int pick_outcome(const std::array<double, 4>& cdf, double u) {
  for (int b = 0; b < 3; ++b) {
    if (u < cdf[b]) {
      return b;
    }
  }
  return 3;
}

Histogram counts_to_histogram(const std::array<long long, 4>& counts) {
  Histogram hist;
  for (int b = 0; b < 4; ++b) {
    if (counts[b] > 0) {
      hist[kKeys[b]] = counts[b];
    }
  }
  return hist;
}

}  // namespace

void validate_calibration(const ReadoutCalibration& cal) {
  if (!(cal.prob_meas1_prep0 >= 0.0 && cal.prob_meas1_prep0 <= 1.0)) {
    throw ValidationError("prob_meas1_prep0 must lie in [0, 1]");
  }
  if (!(cal.prob_meas0_prep1 >= 0.0 && cal.prob_meas0_prep1 <= 1.0)) {
    throw ValidationError("prob_meas0_prep1 must lie in [0, 1]");
  }
}

QuasiHistogram exact_distribution(const Circuit& circuit,
                                  const std::optional<NoiseModel>& noise) {
  std::array<double, 4> p = ideal_probabilities(circuit);

  if (noise.has_value()) {
    validate_calibration(noise->target);
    validate_calibration(noise->ancilla);
    const CMat c_t = confusion_matrix(noise->target);
    const CMat c_a = confusion_matrix(noise->ancilla);
    // p[read rs] = sum_{true tu} p_ideal[tu] * C_t[r][t] * C_a[s][u].
    std::array<double, 4> mixed{};
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < 2; ++s) {
        double acc = 0.0;
        for (int t = 0; t < 2; ++t) {
          for (int u = 0; u < 2; ++u) {
            acc += p[2 * t + u] * c_t(r, t).real() * c_a(s, u).real();
          }
        }
        mixed[2 * r + s] = acc;
      }
    }
    p = mixed;
  }

  QuasiHistogram out;
  double sum = 0.0;
  for (int b = 0; b < 4; ++b) {
    out[kKeys[b]] = p[b];
    sum += p[b];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("internal error: outcome distribution does not sum to 1");
  }
  return out;
}

Histogram sample_histogram(const QuasiHistogram& dist, long long shots, std::uint64_t seed) {
  if (shots < 1) {
    throw ValidationError("shots must be at least 1");
  }
  const std::array<double, 4> p = to_array(dist);
  const std::array<double, 4> cdf = {p[0], p[0] + p[1], p[0] + p[1] + p[2], 1.0};

  std::array<long long, 4> counts{};
  for (long long i = 0; i < shots; ++i) {
    ++counts[pick_outcome(cdf, unit_double(seed, static_cast<std::uint64_t>(i)))];
  }
  return counts_to_histogram(counts);
}

Histogram sample_histogram_parallel(const QuasiHistogram& dist, long long shots,
                                    std::uint64_t seed) {
  if (shots < 1) {
    throw ValidationError("shots must be at least 1");
  }
  const std::array<double, 4> p = to_array(dist);
  const std::array<double, 4> cdf = {p[0], p[0] + p[1], p[0] + p[1] + p[2], 1.0};

  long long c0 = 0, c1 = 0, c2 = 0, c3 = 0;
#pragma omp parallel for reduction(+ : c0, c1, c2, c3) schedule(static)
  for (long long i = 0; i < shots; ++i) {
    switch (pick_outcome(cdf, unit_double(seed, static_cast<std::uint64_t>(i)))) {
      case 0: ++c0; break;
      case 1: ++c1; break;
      case 2: ++c2; break;
      default: ++c3; break;
    }
  }
  return counts_to_histogram({c0, c1, c2, c3});
}

Histogram run(const Circuit& circuit, long long shots, const Backend& backend) {
  if (shots < 1) {
    throw ValidationError("shots must be at least 1");
  }
  if (!circuit.measured) {
    throw ValidationError("cannot sample a circuit without a terminal measurement");
  }
  return sample_histogram(exact_distribution(circuit, backend.noise), shots, backend.seed);
}

}  // namespace mdbench
