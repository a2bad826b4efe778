#pragma once

// Deterministic, seedable two-qubit statevector simulator: exact outcome
// distributions, inverse-CDF shot sampling, and per-qubit readout noise
// applied as classical confusion mixing.

#include <cstdint>
#include <optional>

#include "mdbench/rng.hpp"
#include "mdbench/schemes.hpp"

namespace mdbench {

// Readout calibration of a single qubit, in the usual hardware convention:
// the probability of misreading a prepared |0> as 1, and a prepared |1> as 0.
struct ReadoutCalibration {
  double prob_meas1_prep0 = 0.0;
  double prob_meas0_prep1 = 0.0;
};

// Throws ValidationError unless both probabilities lie in [0, 1].
void validate_calibration(const ReadoutCalibration& cal);

// Per-wire readout noise.  Wire 0 carries the target qubit and wire 1 the
// ancilla (the CLI maps physical qubit labels onto these logical wires, so
// the simulator never sees device numbering).
struct NoiseModel {
  ReadoutCalibration target;
  ReadoutCalibration ancilla;
};

// Execution backend: a seed for the deterministic sampler plus optional
// readout noise.  Identical (circuit, shots, seed, noise) always yields an
// identical histogram.
struct Backend {
  std::uint64_t seed = kDefaultSeed;
  std::optional<NoiseModel> noise;
};

// Exact outcome distribution of a measured two-wire circuit over the keys
// {"00","01","10","11"} (first character = wire 0 = target).  Applies each
// gate to |00>, squares the amplitudes, then mixes with the confusion
// matrices when noise is present.  All four keys are always present and the
// values sum to 1 within 1e-12.
QuasiHistogram exact_distribution(const Circuit& circuit,
                                  const std::optional<NoiseModel>& noise);

// Serial reference sampler: `shots` inverse-CDF draws from `dist` using the
// counter-based generator of stream `seed`.  Keys with zero sampled count
// are omitted from the histogram.
Histogram sample_histogram(const QuasiHistogram& dist, long long shots, std::uint64_t seed);

// OpenMP sampler.  Produces bit-identical histograms to sample_histogram
// for every (dist, shots, seed): each draw depends only on (seed, shot
// index) and the per-outcome counts are integer reductions.
Histogram sample_histogram_parallel(const QuasiHistogram& dist, long long shots,
                                    std::uint64_t seed);

// Samples `shots` outcomes of the measured circuit on `backend`.
Histogram run(const Circuit& circuit, long long shots, const Backend& backend);

}  // namespace mdbench
