#pragma once

// Shared helpers for the test binaries: deterministic random matrices and a
// few comparison utilities.  Every generator takes an explicit engine so
// individual test cases stay reproducible in isolation.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mdbench/linalg.hpp"
#include "mdbench/schemes.hpp"

namespace testutil {

using mdbench::cdouble;
using mdbench::CMat;
using mdbench::CVec;

inline constexpr double kPi = std::numbers::pi;

// Analytic success probability of the Hadamard discrimination experiment.
inline constexpr double kHadamardP = 0.8535533905932737;

inline cdouble random_entry(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng)};
}

inline CMat random_matrix(int rows, int cols, std::mt19937& rng) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.at(i, j) = random_entry(rng);
    }
  }
  return m;
}

inline CMat random_hermitian(int n, std::mt19937& rng) {
  const CMat g = random_matrix(n, n, rng);
  return (g + mdbench::dagger(g)) * cdouble(0.5, 0.0);
}

// Haar-like random unitary: Gram-Schmidt over the columns of a Gaussian
// matrix.  Quality is ample for property tests.
inline CMat random_unitary(int n, std::mt19937& rng) {
  CMat g = random_matrix(n, n, rng);
  for (int c = 0; c < n; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cdouble proj = 0.0;
      for (int i = 0; i < n; ++i) {
        proj += std::conj(g(i, prev)) * g(i, c);
      }
      for (int i = 0; i < n; ++i) {
        g.at(i, c) -= proj * g(i, prev);
      }
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      nrm += std::norm(g(i, c));
    }
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) {
      g.at(i, c) /= nrm;
    }
  }
  return g;
}

// |<a|b>| for unit vectors; 1 exactly when the vectors agree up to a phase.
inline double overlap(const CVec& a, const CVec& b) {
  return std::abs(mdbench::inner(a, b));
}

inline CVec column(const CMat& m, int c) {
  CVec v(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    v.at(i) = m(i, c);
  }
  return v;
}

// Circuit fragments of the Hadamard discrimination experiment, used as a
// fixture by the simulator, mitigation, and workflow tests (the schemes
// tests build their own copy so the assembly checks stay self-contained).
inline mdbench::DiscriminationComponents hadamard_circuits() {
  using mdbench::Gate;
  mdbench::DiscriminationComponents c;
  c.state_prep.append(Gate::h(0));
  c.state_prep.append(Gate::cnot(0, 1));
  c.u_dag.append(Gate::h(0));
  c.v0_dag.append(Gate::ry(-3.0 * kPi / 4.0, 0));
  c.v1_dag.append(Gate::ry(-3.0 * kPi / 4.0, 0));
  c.v1_dag.append(Gate::x(0));
  c.v0v1_direct_sum_dag.append(Gate::ry(-3.0 * kPi / 4.0, 1));
  c.v0v1_direct_sum_dag.append(Gate::cnot(0, 1));
  return c;
}

}  // namespace testutil
