#include "mdbench/circuit.hpp"

#include <cmath>

namespace mdbench {

namespace {

void check_wire(int w) {
  if (w != 0 && w != 1) {
    throw ValidationError("wire index must be 0 or 1, got " + std::to_string(w));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixed matrices
// ---------------------------------------------------------------------------

CMat hadamard_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  return CMat::of(2, 2, {r, r, r, -r});
}

CMat pauli_x_matrix() { return CMat::of(2, 2, {0.0, 1.0, 1.0, 0.0}); }

CMat ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return CMat::of(2, 2, {c, -s, s, c});
}

CMat phase_matrix(double phi) {
  return CMat::of(2, 2, {1.0, 0.0, 0.0, std::polar(1.0, phi)});
}

CMat cnot_matrix(int control, int target) {
  check_wire(control);
  check_wire(target);
  if (control == target) {
    throw ValidationError("CNOT control and target must differ");
  }
  const CMat p0 = CMat::of(2, 2, {1.0, 0.0, 0.0, 0.0});
  const CMat p1 = CMat::of(2, 2, {0.0, 0.0, 0.0, 1.0});
  const CMat x = pauli_x_matrix();
  const CMat i2 = CMat::identity(2);
  if (control == 0) {
    return kron(p0, i2) + kron(p1, x);
  }
  return kron(i2, p0) + kron(x, p1);
}

CMat swap_matrix() {
  CMat s = CMat::zero(4);
  s.at(0, 0) = 1.0;
  s.at(1, 2) = 1.0;
  s.at(2, 1) = 1.0;
  s.at(3, 3) = 1.0;
  return s;
}

// ---------------------------------------------------------------------------
// Gate
// ---------------------------------------------------------------------------

Gate Gate::h(int qubit) {
  check_wire(qubit);
  Gate g;
  g.kind = GateKind::kH;
  g.qubit = qubit;
  return g;
}

Gate Gate::x(int qubit) {
  check_wire(qubit);
  Gate g;
  g.kind = GateKind::kX;
  g.qubit = qubit;
  return g;
}

Gate Gate::ry(double theta, int qubit) {
  check_wire(qubit);
  Gate g;
  g.kind = GateKind::kRy;
  g.qubit = qubit;
  g.angle = theta;
  return g;
}

Gate Gate::phase(double phi, int qubit) {
  check_wire(qubit);
  Gate g;
  g.kind = GateKind::kPhase;
  g.qubit = qubit;
  g.angle = phi;
  return g;
}

Gate Gate::cnot(int control, int target) {
  check_wire(control);
  check_wire(target);
  if (control == target) {
    throw ValidationError("CNOT control and target must differ");
  }
  Gate g;
  g.kind = GateKind::kCnot;
  g.control = control;
  g.target = target;
  return g;
}

Gate Gate::unitary1(const CMat& m, int qubit) {
  check_wire(qubit);
  if (m.rows() != 2 || m.cols() != 2) {
    throw ValidationError("U1 gate requires a 2x2 matrix");
  }
  if (!is_unitary(m, 1e-10)) {
    throw ValidationError("U1 gate matrix is not unitary within 1e-10");
  }
  Gate g;
  g.kind = GateKind::kUnitary1;
  g.qubit = qubit;
  g.matrix = m;
  return g;
}

Gate Gate::unitary2(const CMat& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw ValidationError("U2 gate requires a 4x4 matrix");
  }
  if (!is_unitary(m, 1e-10)) {
    throw ValidationError("U2 gate matrix is not unitary within 1e-10");
  }
  Gate g;
  g.kind = GateKind::kUnitary2;
  g.matrix = m;
  return g;
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::kCnot:
    case GateKind::kUnitary2:
      return 2;
    default:
      return 1;
  }
}

CMat Gate::local_matrix() const {
  switch (kind) {
    case GateKind::kH:
      return hadamard_matrix();
    case GateKind::kX:
      return pauli_x_matrix();
    case GateKind::kRy:
      return ry_matrix(angle);
    case GateKind::kPhase:
      return phase_matrix(angle);
    case GateKind::kUnitary1:
      return matrix;
    default:
      throw ValidationError("two-qubit gate has no 2x2 local matrix");
  }
}

CMat Gate::expanded_matrix() const {
  switch (kind) {
    case GateKind::kCnot:
      return cnot_matrix(control, target);
    case GateKind::kUnitary2:
      return matrix;
    default: {
      const CMat m = local_matrix();
      const CMat i2 = CMat::identity(2);
      return qubit == 0 ? kron(m, i2) : kron(i2, m);
    }
  }
}

Gate Gate::remapped(const std::array<int, 2>& wires) const {
  check_wire(wires[0]);
  check_wire(wires[1]);
  if (wires[0] == wires[1]) {
    throw ValidationError("wire map must be a permutation of {0, 1}");
  }
  Gate g = *this;
  switch (kind) {
    case GateKind::kCnot:
      g.control = wires[control];
      g.target = wires[target];
      break;
    case GateKind::kUnitary2:
      if (wires[0] == 1) {
        const CMat s = swap_matrix();
        g.matrix = matmul(matmul(s, matrix), s);
      }
      break;
    default:
      g.qubit = wires[qubit];
      break;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

void Circuit::append(const Gate& g) {
  if (measured) {
    throw ValidationError("cannot append gates after the terminal measurement");
  }
  if (num_wires != 1 && num_wires != 2) {
    throw ValidationError("circuit must declare 1 or 2 wires");
  }
  if (num_wires == 1) {
    if (g.arity() != 1 || g.qubit != 0) {
      throw ValidationError("one-wire fragment only accepts single-qubit gates on wire 0");
    }
  }
  gates.push_back(g);
}

void Circuit::append_fragment(const Circuit& fragment, int wire) {
  if (fragment.num_wires != 1) {
    throw ValidationError("append_fragment(wire) requires a one-wire fragment");
  }
  if (fragment.measured) {
    throw ValidationError("cannot splice a measured fragment into a circuit");
  }
  check_wire(wire);
  for (Gate g : fragment.gates) {
    g.qubit = wire;
    append(g);
  }
}

void Circuit::append_fragment(const Circuit& fragment, int wire0, int wire1) {
  if (fragment.num_wires != 2) {
    throw ValidationError("append_fragment(wire0, wire1) requires a two-wire fragment");
  }
  if (fragment.measured) {
    throw ValidationError("cannot splice a measured fragment into a circuit");
  }
  const std::array<int, 2> wires = {wire0, wire1};
  for (const Gate& g : fragment.gates) {
    append(g.remapped(wires));
  }
}

void Circuit::measure() {
  if (measured) {
    throw ValidationError("circuit is already measured");
  }
  measured = true;
}

CMat Circuit::unitary() const {
  if (num_wires == 1) {
    CMat u = CMat::identity(2);
    for (const Gate& g : gates) {
      u = matmul(g.local_matrix(), u);
    }
    return u;
  }
  CMat u = CMat::identity(4);
  for (const Gate& g : gates) {
    u = matmul(g.expanded_matrix(), u);
  }
  return u;
}

}  // namespace mdbench
