#pragma once

// Gate and circuit model for the two-qubit discrimination experiments.
// Circuits are ordered gate lists over logical wires {0, 1} (or a single
// wire for one-qubit fragments); an optional terminal flag marks a Z-basis
// measurement of both wires.

#include <array>
#include <vector>

#include "mdbench/linalg.hpp"

namespace mdbench {

enum class GateKind { kH, kX, kRy, kPhase, kCnot, kUnitary1, kUnitary2 };

// A single gate.  One-qubit kinds use `qubit`; kCnot uses control/target;
// kUnitary1 embeds an explicit 2x2 unitary on `qubit` and kUnitary2 an
// explicit 4x4 unitary spanning both wires (wire 0 = first tensor factor).
struct Gate {
  GateKind kind = GateKind::kH;
  int qubit = 0;
  int control = 0;
  int target = 1;
  double angle = 0.0;  // theta for kRy, phi for kPhase
  CMat matrix;         // kUnitary1 / kUnitary2 payload

  static Gate h(int qubit);
  static Gate x(int qubit);
  static Gate ry(double theta, int qubit);
  static Gate phase(double phi, int qubit);
  static Gate cnot(int control, int target);
  // Embedded matrices are validated with is_unitary at 1e-10.
  static Gate unitary1(const CMat& m, int qubit);
  static Gate unitary2(const CMat& m);

  // Number of wires this gate touches (1 or 2).
  int arity() const;
  // 2x2 matrix of a one-qubit gate; throws for two-qubit kinds.
  CMat local_matrix() const;
  // Full 4x4 matrix on the two-wire register.
  CMat expanded_matrix() const;
  // Copy with wire w renamed to wires[w] (wires is a permutation of {0,1};
  // a kUnitary2 payload is conjugated by SWAP when the map swaps the wires).
  Gate remapped(const std::array<int, 2>& wires) const;
};

// Ordered gate list.  `num_wires` is 1 for single-qubit fragments and 2 for
// full experiment circuits; gates must fit within the declared wires.
struct Circuit {
  int num_wires = 2;
  std::vector<Gate> gates;
  bool measured = false;

  static Circuit fragment1() { return Circuit{1, {}, false}; }
  static Circuit fragment2() { return Circuit{2, {}, false}; }

  // Appends a gate; throws if the gate's wires do not fit or the circuit is
  // already measured (measurement must stay last).
  void append(const Gate& g);
  // Appends a one-wire fragment, placing its single wire on `wire`.
  void append_fragment(const Circuit& fragment, int wire);
  // Appends a two-wire fragment, renaming its wires 0,1 to wire0,wire1.
  void append_fragment(const Circuit& fragment, int wire0, int wire1);
  // Marks the terminal measurement.
  void measure();

  // Composite matrix: product of the gate matrices, later gates on the
  // left.  2x2 for one-wire circuits, 4x4 for two-wire circuits.
  CMat unitary() const;
};

// Common fixed matrices.
CMat hadamard_matrix();
CMat pauli_x_matrix();
CMat ry_matrix(double theta);
CMat phase_matrix(double phi);
CMat cnot_matrix(int control, int target);
CMat swap_matrix();

}  // namespace mdbench
