#include "mdbench/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mdbench/errors.hpp"

namespace mdbench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDensityTol = 1e-9;     // Hermiticity / trace / positivity of rho
constexpr double kDegenerateTol = 1e-12; // trace norm below which X carries no signal
constexpr double kThetaTol = 1e-10;      // golden-section stopping width

void require_unitary2(const CMat& u, const char* what) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u)) {
    throw ValidationError(std::string(what) + " must be a 2x2 unitary matrix");
  }
}

void require_finite(double phi) {
  if (!std::isfinite(phi)) {
    throw ValidationError("angle must be finite");
  }
}

// Minimum |a + t (b - a)| over t in [0, 1]: the perpendicular foot when it
// lies inside the segment, the nearer endpoint otherwise.
double segment_distance_to_origin(cdouble a, cdouble b) {
  const cdouble d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) {
    return std::abs(a);
  }
  const double t = std::clamp(-(std::conj(d) * a).real() / len2, 0.0, 1.0);
  return std::abs(a + t * d);
}

CMat diagonal_phase(double theta) {
  return CMat::of(2, 2, {1.0, 0.0, 0.0, std::polar(1.0, theta)});
}

CMat bell_projector() {
  const CVec psi = bell_state();
  CMat rho(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho.at(i, j) = psi(i) * std::conj(psi(j));
    }
  }
  return rho;
}

}  // namespace

CVec bell_state() {
  CVec psi(4);
  const double r = 1.0 / std::sqrt(2.0);
  psi.at(0) = r;
  psi.at(3) = r;
  return psi;
}

CMat fourier_u(double phi) {
  require_finite(phi);
  const cdouble e = std::polar(1.0, phi);
  const cdouble p = (1.0 + e) / 2.0;
  const cdouble m = (1.0 - e) / 2.0;
  return CMat::of(2, 2, {p, m, m, p});
}

CMat fourier_v0(double phi) {
  require_finite(phi);
  const double s = std::sin((kPi - phi) / 4.0);
  const double c = std::cos((kPi - phi) / 4.0);
  const cdouble i(0.0, 1.0);
  return CMat::of(2, 2, {-i * s, i * c, c, s});
}

CMat fourier_v1(double phi) {
  require_finite(phi);
  const double s = std::sin((kPi - phi) / 4.0);
  const double c = std::cos((kPi - phi) / 4.0);
  const cdouble i(0.0, 1.0);
  return CMat::of(2, 2, {i * c, -i * s, s, c});
}

double fourier_p_succ(double phi) {
  require_finite(phi);
  return 0.5 + std::abs(1.0 - std::polar(1.0, phi)) / 4.0;
}

FourierComponents fourier_components(double phi) {
  FourierComponents out;
  out.phi = phi;
  out.u = fourier_u(phi);
  out.v0 = fourier_v0(phi);
  out.v1 = fourier_v1(phi);
  out.discriminator = bell_state();
  return out;
}

HadamardComponents hadamard_components() {
  const double a = std::cos(3.0 * kPi / 8.0);
  const double b = std::sin(3.0 * kPi / 8.0);
  HadamardComponents out;
  out.v0 = CMat::of(2, 2, {a, -b, b, a});
  out.v1 = CMat::of(2, 2, {-b, a, a, b});
  out.discriminator = bell_state();
  out.p_succ = 0.5 + std::sqrt(2.0) / 4.0;
  return out;
}

double nu_min_numerical_range(const CMat& u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw ValidationError("numerical range helper expects a 2x2 matrix");
  }
  if (max_abs_diff(matmul(u, dagger(u)), matmul(dagger(u), u)) > 1e-10) {
    throw ValidationError(
        "numerical range is only computed for normal matrices (segment form)");
  }
  // Eigenvalues of a 2x2 matrix in closed form; for a normal matrix the
  // numerical range is the segment joining them.
  const cdouble tr = u(0, 0) + u(1, 1);
  const cdouble det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const cdouble disc = std::sqrt(tr * tr - 4.0 * det);
  return segment_distance_to_origin((tr - disc) / 2.0, (tr + disc) / 2.0);
}

double diamond_norm_unitary(const CMat& u) {
  require_unitary2(u, "diamond-norm argument");
  const double nu = nu_min_numerical_range(dagger(u));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - nu * nu));
}

double diamond_norm_measurements(const CMat& u) {
  require_unitary2(u, "diamond-norm argument");
  const auto objective = [&u](double theta) {
    return diamond_norm_unitary(matmul(u, diagonal_phase(theta)));
  };

  // Dense scan to land in the global basin, then golden-section refinement.
  constexpr int kGridPoints = 1024;
  constexpr double kStep = 2.0 * kPi / kGridPoints;
  double best_theta = 0.0;
  double best = objective(0.0);
  for (int k = 1; k < kGridPoints; ++k) {
    const double value = objective(k * kStep);
    if (value < best) {
      best = value;
      best_theta = k * kStep;
    }
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - kStep;
  double hi = best_theta + kStep;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > kThetaTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = objective(x2);
    }
  }
  return std::min({best, f1, f2});
}

CMat measure_and_prepare(const CMat& u, const CMat& rho) {
  require_unitary2(u, "measurement basis");
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw ValidationError("density matrix must be 4x4");
  }
  if (max_abs_diff(rho, dagger(rho)) > kDensityTol) {
    throw ValidationError("density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - cdouble(1.0)) > kDensityTol) {
    throw ValidationError("density matrix must have unit trace");
  }
  const CMat herm = (rho + dagger(rho)) * cdouble(0.5, 0.0);
  const HermEig eig = hermitian_eig(herm);
  if (eig.values.front() < -kDensityTol) {
    throw ValidationError("density matrix must be positive semidefinite");
  }

  // Block i of the output is (<u_i| (x) 1) rho (|u_i> (x) 1); everything
  // off the block diagonal is discarded by the measurement.
  CMat out = CMat::zero(4);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        cdouble acc = 0.0;
        for (int m = 0; m < 2; ++m) {
          for (int n = 0; n < 2; ++n) {
            acc += std::conj(u(m, i)) * rho(2 * m + k, 2 * n + l) * u(n, i);
          }
        }
        out.at(2 * i + k, 2 * i + l) = acc;
      }
    }
  }
  return out;
}

SynthesizedStrategy synthesize_strategy(const CMat& u) {
  require_unitary2(u, "measurement basis");
  const CMat omega = bell_projector();
  const CMat x = measure_and_prepare(u, omega) - measure_and_prepare(CMat::identity(2), omega);

  // The two target-outcome blocks always share their +/- eigenvalue pair,
  // so each block is diagonalized on its own; a single 4x4 decomposition
  // would be free to mix the degenerate eigenspaces across blocks.
  double trace_norm = 0.0;
  CMat basis[2];
  for (int b = 0; b < 2; ++b) {
    CMat block(2, 2);
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        block.at(k, l) = x(2 * b + k, 2 * b + l);
      }
    }
    const HermEig eig = hermitian_eig((block + dagger(block)) * cdouble(0.5, 0.0));
    trace_norm += std::abs(eig.values[0]) + std::abs(eig.values[1]);
    // Ascending eigenvalue order: column 1 spans the positive part P and
    // becomes V_b |0>, column 0 the negative part Q and becomes V_b |1>.
    CMat v(2, 2);
    for (int k = 0; k < 2; ++k) {
      v.at(k, 0) = eig.vectors(k, 1);
      v.at(k, 1) = eig.vectors(k, 0);
    }
    basis[b] = v;
  }
  if (trace_norm < kDegenerateTol) {
    throw DegenerateDiscrimination(
        "the two measurements coincide; only coin-flipping discriminates them");
  }

  SynthesizedStrategy out;
  out.v0 = basis[0];
  out.v1 = basis[1];
  out.exact_p_succ = exact_success_probability(u, bell_state(), out.v0, out.v1);
  out.diamond_distance = 2.0 * (out.exact_p_succ - 0.5) * 2.0;
  return out;
}

double exact_success_probability(const CMat& u, const CVec& discriminator, const CMat& v0,
                                 const CMat& v1) {
  require_unitary2(u, "measurement basis");
  require_unitary2(v0, "final measurement v0");
  require_unitary2(v1, "final measurement v1");
  if (discriminator.size() != 4) {
    throw ValidationError("discriminator must be a two-qubit state vector");
  }
  double norm2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    norm2 += std::norm(discriminator(i));
  }
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw ValidationError("discriminator must be normalized");
  }

  const CMat* finals[2] = {&v0, &v1};
  double p = 0.0;
  for (int i = 0; i < 2; ++i) {
    // Unnormalized ancilla states after target outcome i: w when the
    // unknown measured in the basis of u, z when it measured in the
    // computational basis.  Their squared norms carry the outcome
    // probabilities, so no renormalization is needed.
    cdouble w[2];
    cdouble z[2];
    for (int k = 0; k < 2; ++k) {
      w[k] = std::conj(u(0, i)) * discriminator(k) + std::conj(u(1, i)) * discriminator(2 + k);
      z[k] = discriminator(2 * i + k);
    }
    const CMat& v = *finals[i];
    // Answer rule: ancilla outcome 0 means "it was U", outcome 1 "identity".
    const cdouble hit_u = std::conj(v(0, 0)) * w[0] + std::conj(v(1, 0)) * w[1];
    const cdouble hit_id = std::conj(v(0, 1)) * z[0] + std::conj(v(1, 1)) * z[1];
    p += 0.5 * (std::norm(hit_u) + std::norm(hit_id));
  }
  return p;
}

}  // namespace mdbench
