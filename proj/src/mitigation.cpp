#include "mdbench/mitigation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mdbench {

namespace {

constexpr double kSingularTol = 1e-9;
constexpr const char* kKeys[4] = {"00", "01", "10", "11"};

// Inverse of the 2x2 confusion matrix, exploiting det C = 1 - p(1|0) - p(0|1).
CMat inverse_confusion(const ReadoutCalibration& cal) {
  const double p10 = cal.prob_meas1_prep0;
  const double p01 = cal.prob_meas0_prep1;
  const double det = 1.0 - p10 - p01;
  if (std::abs(det) <= kSingularTol) {
    throw SingularCalibration(
        "confusion matrix is singular: p(1|0) + p(0|1) = " + std::to_string(p10 + p01));
  }
  return CMat::of(2, 2, {(1.0 - p01) / det, -p01 / det, -p10 / det, (1.0 - p10) / det});
}

MitigatedProbability clamp_scored(double raw) {
  MitigatedProbability out;
  out.raw = raw;
  out.value = std::clamp(raw, 0.0, 1.0);
  return out;
}

}  // namespace

CMat confusion_matrix(const ReadoutCalibration& cal) {
  validate_calibration(cal);
  const double p10 = cal.prob_meas1_prep0;
  const double p01 = cal.prob_meas0_prep1;
  return CMat::of(2, 2, {1.0 - p10, p01, p10, 1.0 - p01});
}

MitigatedHistogram mitigate(const Histogram& hist, const ReadoutCalibration& cal_target,
                            const ReadoutCalibration& cal_ancilla) {
  validate_histogram(hist);
  validate_calibration(cal_target);
  validate_calibration(cal_ancilla);
  const long long total = histogram_total(hist);
  if (total < 1) {
    throw ValidationError("cannot mitigate an empty histogram");
  }

  // Frequency vector indexed 2*target_bit + ancilla_bit, matching the
  // bitstring key convention.
  std::array<double, 4> freq{};
  for (const auto& [key, count] : hist) {
    const int index = (key[0] - '0') * 2 + (key[1] - '0');
    freq[index] = static_cast<double>(count) / static_cast<double>(total);
  }

  // (C_t (x) C_a)^-1 = C_t^-1 (x) C_a^-1.
  const CMat inverse = kron(inverse_confusion(cal_target), inverse_confusion(cal_ancilla));
  MitigatedHistogram out;
  for (int r = 0; r < 4; ++r) {
    double acc = 0.0;
    for (int c = 0; c < 4; ++c) {
      acc += inverse(r, c).real() * freq[c];
    }
    out.quasi_probs[kKeys[r]] = acc;
  }
  return out;
}

MitigatedProbability mitigated_probability_postselection(const MitigatedHistogram& id_v0,
                                                         const MitigatedHistogram& id_v1,
                                                         const MitigatedHistogram& u_v0,
                                                         const MitigatedHistogram& u_v1) {
  return clamp_scored(postselection_score(id_v0.quasi_probs, id_v1.quasi_probs,
                                          u_v0.quasi_probs, u_v1.quasi_probs));
}

MitigatedProbability mitigated_probability_direct_sum(const MitigatedHistogram& id,
                                                      const MitigatedHistogram& u) {
  return clamp_scored(direct_sum_score(id.quasi_probs, u.quasi_probs));
}

}  // namespace mdbench
