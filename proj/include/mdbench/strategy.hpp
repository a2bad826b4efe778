#pragma once

// Analytic side of the benchmark: closed-form components for the
// phase-parametrized (Fourier) measurement family and the Hadamard case,
// diamond-norm distances computed through the numerical range of a 2x2
// matrix, and a general strategy synthesizer that derives the optimal final
// measurements for an arbitrary single-qubit basis change from the
// Hahn-Jordan decomposition.
//
// Conventions.  A von Neumann measurement is described by the unitary whose
// columns are the measured basis; the benchmark always discriminates the
// measurement of U from the computational-basis measurement (U = identity).
// The discriminator is the two-qubit input state of the protocol, ordered
// (target, ancilla) as everywhere else in this library.

#include "mdbench/linalg.hpp"

namespace mdbench {

// (|00> + |11>)/sqrt(2), the discriminator used by every strategy here.
CVec bell_state();

// Closed-form building blocks of the Fourier-family experiment at angle phi.
struct FourierComponents {
  double phi = 0.0;
  CMat u;             // H diag(1, e^{i phi}) H
  CMat v0;            // final ancilla basis after target outcome 0
  CMat v1;            // final ancilla basis after target outcome 1
  CVec discriminator; // Bell state
};

// U_phi = H diag(1, e^{i phi}) H = [[(1+e)/2, (1-e)/2], [(1-e)/2, (1+e)/2]]
// with e = e^{i phi}.  Throws ValidationError when phi is not finite.
CMat fourier_u(double phi);

// The optimal final measurements of the Fourier family, built from
// s = sin((pi-phi)/4) and c = cos((pi-phi)/4):
//   V0 = [[-i s,  i c], [c, s]],   V1 = [[ i c, -i s], [s, c]] = V0 X.
// Column j of V_i is the ancilla state announcing answer j after target
// outcome i; the circuits apply the dagger and read the computational
// basis.  These columns agree (up to phases) with the eigenvectors that
// synthesize_strategy extracts for fourier_u(phi), and they achieve
// fourier_p_succ(phi) exactly.
CMat fourier_v0(double phi);
CMat fourier_v1(double phi);

// Optimal discrimination probability 1/2 + |1 - e^{i phi}|/4.
double fourier_p_succ(double phi);

// Bundles the four pieces above.
FourierComponents fourier_components(double phi);

// The Hadamard experiment in closed form, with a = cos(3 pi/8) and
// b = sin(3 pi/8):
//   V0 = [[a, -b], [b, a]] = RY(3 pi/4),   V1 = [[-b, a], [a, b]] = V0 X,
// Bell discriminator, and p_succ = (2 + sqrt 2)/4.
struct HadamardComponents {
  CMat v0;
  CMat v1;
  CVec discriminator;
  double p_succ = 0.0;
};
HadamardComponents hadamard_components();

// Minimum modulus over the numerical range of a normal 2x2 matrix, which is
// the segment joining its eigenvalues.  Throws ValidationError when the
// matrix is not normal within 1e-10 (the general elliptical range is not
// needed here).
double nu_min_numerical_range(const CMat& u);

// Diamond-norm distance between the unitary channel of `u` and the identity
// channel: 2 sqrt(1 - nu^2) with nu = nu_min_numerical_range(u^dag).
double diamond_norm_unitary(const CMat& u);

// Diamond-norm distance between the measurement of `u` and the
// computational-basis measurement: the minimum of diamond_norm_unitary(u E)
// over diagonal unitaries E = diag(1, e^{i theta}).  Minimized by a dense
// 1024-point scan of theta followed by golden-section refinement to 1e-10.
double diamond_norm_measurements(const CMat& u);

// Applies "measure the first qubit in the basis of u, record the outcome"
// to a two-qubit density matrix: sum_i (|i><u_i| (x) 1) rho (|u_i><i| (x) 1).
// The result is block-diagonal and Hermitian with the trace of rho.  Throws
// ValidationError unless rho is Hermitian, positive semidefinite and of
// unit trace, all within 1e-9.
CMat measure_and_prepare(const CMat& u, const CMat& rho);

// Output of synthesize_strategy.  The invariant
// exact_p_succ = 1/2 + diamond_distance/4 holds within 1e-9.
struct SynthesizedStrategy {
  CMat v0;
  CMat v1;
  double exact_p_succ = 0.0;
  double diamond_distance = 0.0;
};

// Derives optimal final measurements for discriminating the measurement of
// `u` from the computational-basis measurement with the Bell discriminator.
// The difference X of the two measure-and-prepare channels applied to the
// Bell projector splits as X = P - Q with P, Q >= 0 (Hahn-Jordan); within
// target-outcome block i, V_i maps |0> to the positive-part eigenvector and
// |1> to the negative-part one.  The blocks are always degenerate with each
// other, so they are diagonalized separately rather than through a single
// 4x4 decomposition that could mix them.  Eigenvector phases follow the
// deterministic convention of hermitian_eig; success probabilities are
// phase-invariant.  Throws DegenerateDiscrimination when the trace norm of
// X falls below 1e-12, i.e. the two measurements coincide.
SynthesizedStrategy synthesize_strategy(const CMat& u);

// Exact (infinite-shot) success probability of the discrimination protocol:
// prepare `discriminator`, measure the target in the basis of `u` (the
// unknown was U) or the computational basis (the unknown was identity) with
// prior 1/2 each, then measure the ancilla in basis V_i conditioned on the
// target outcome i and answer "U" on ancilla outcome 0.  Both benchmark
// schemes converge to this value.
double exact_success_probability(const CMat& u, const CVec& discriminator, const CMat& v0,
                                 const CMat& v1);

}  // namespace mdbench
