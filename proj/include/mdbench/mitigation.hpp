#pragma once

// Readout-error mitigation by exact inversion of the two-qubit
// tensor-product confusion matrix.  At two qubits the matrix is 4x4, so the
// inverse is applied directly; the resulting quasi-probabilities may be
// negative and are preserved as such in output documents.  Only the final
// scored probability is clamped into [0, 1].

#include "mdbench/schemes.hpp"
#include "mdbench/simulator.hpp"

namespace mdbench {

// Quasi-probability distribution produced by mitigation.  Values sum to 1
// within 1e-9; individual entries may be negative.
struct MitigatedHistogram {
  QuasiHistogram quasi_probs;
};

// Column-stochastic confusion matrix of one qubit:
//   [[1 - p(1|0), p(0|1)], [p(1|0), 1 - p(0|1)]]
// Column t holds the distribution of the read bit given true bit t.  The
// same matrix drives the simulator's forward noise mixing, so mitigation is
// its exact inverse.
CMat confusion_matrix(const ReadoutCalibration& cal);

// Inverts (C_target (x) C_ancilla) on the empirical frequency vector of
// `hist`.  Throws SingularCalibration when either confusion matrix has
// |determinant| = |1 - p(1|0) - p(0|1)| <= 1e-9, and ValidationError when
// the histogram is empty.
MitigatedHistogram mitigate(const Histogram& hist, const ReadoutCalibration& cal_target,
                            const ReadoutCalibration& cal_ancilla);

// A scored probability after mitigation: `raw` is the counting-formula
// output over quasi-probabilities, `value` is raw clamped into [0, 1] for
// reporting.
struct MitigatedProbability {
  double raw = 0.0;
  double value = 0.0;
};

// The scheme estimators applied to quasi-probabilities.  Throw NoValidShots
// when the valid quasi-probability mass is not positive.
MitigatedProbability mitigated_probability_postselection(const MitigatedHistogram& id_v0,
                                                         const MitigatedHistogram& id_v1,
                                                         const MitigatedHistogram& u_v0,
                                                         const MitigatedHistogram& u_v1);
MitigatedProbability mitigated_probability_direct_sum(const MitigatedHistogram& id,
                                                      const MitigatedHistogram& u);

}  // namespace mdbench
