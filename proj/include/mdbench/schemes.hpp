#pragma once

// Assembly of benchmark circuits for the two discrimination schemes
// (postselection and direct-sum) from user-supplied circuit fragments, and
// conversion of measured histograms into discrimination probabilities.
//
// Histogram key convention used throughout: the first character is the
// target-qubit outcome i, the second character the ancilla-qubit outcome j.

#include <map>
#include <string>

#include "mdbench/circuit.hpp"

namespace mdbench {

// Measured counts per outcome bitstring.  Missing keys mean zero counts.
using Histogram = std::map<std::string, long long>;

// Real-valued histogram; used for exact distributions and for mitigated
// quasi-probabilities (entries may then be negative).
using QuasiHistogram = std::map<std::string, double>;

// The user-supplied building blocks of a discrimination experiment.
//  * state_prep: two-wire fragment preparing the discriminator from |00>
//    (wire 0 = target, wire 1 = ancilla);
//  * u_dag: one-wire fragment with composite U-dagger, applied to the target;
//  * v0_dag / v1_dag: one-wire fragments applied to the ancilla;
//  * v0v1_direct_sum_dag: two-wire fragment implementing V0^dag (+) V1^dag,
//    authored with the controlling (target) wire as fragment wire 0.
struct DiscriminationComponents {
  Circuit state_prep = Circuit::fragment2();
  Circuit u_dag = Circuit::fragment1();
  Circuit v0_dag = Circuit::fragment1();
  Circuit v1_dag = Circuit::fragment1();
  Circuit v0v1_direct_sum_dag = Circuit::fragment2();
};

// Checks fragment arities and that every composite matrix is unitary within
// 1e-10; throws ValidationError otherwise.
void validate_components(const DiscriminationComponents& components);

// Throws ValidationError on keys outside {"00","01","10","11"} or negative
// counts.
void validate_histogram(const Histogram& hist);

long long histogram_total(const Histogram& hist);

struct PostselectionCircuits {
  Circuit id_v0;
  Circuit id_v1;
  Circuit u_v0;
  Circuit u_v1;
};

struct DirectSumCircuits {
  Circuit id;
  Circuit u;
};

// Builds the four postselection circuits.  Each is: state_prep; then u_dag
// on the target wire for the "u_*" pair; then v0_dag or v1_dag on the
// ancilla wire; then measurement of both wires.  `target` and `ancilla`
// name the logical wires (a permutation of {0, 1}).
PostselectionCircuits assemble_postselection_circuits(const DiscriminationComponents& components,
                                                      int target, int ancilla);

// Builds the two direct-sum circuits: state_prep; optional u_dag on the
// target; the direct-sum fragment with the target as controlling wire; then
// measurement of both wires.
DirectSumCircuits assemble_direct_sum_circuits(const DiscriminationComponents& components,
                                               int target, int ancilla);

// Postselection counting.  A shot is valid when the target outcome i equals
// the circuit's final-measurement label k (0 for *_v0, 1 for *_v1).  Valid
// shots count as success when the ancilla outcome j is 0 in the u_* circuits
// and 1 in the id_* circuits.  Returns successes / valid.  Throws
// NoValidShots when every shot was discarded.
double postselection_probability(const Histogram& id_v0, const Histogram& id_v1,
                                 const Histogram& u_v0, const Histogram& u_v1);

// Direct-sum counting over all shots: success when j=0 in the "u" circuit
// and j=1 in the "id" circuit, irrespective of i.  Throws NoValidShots when
// both histograms are empty.
double direct_sum_probability(const Histogram& id, const Histogram& u);

// Real-valued scoring cores shared by the raw estimators above and by the
// readout-mitigation path (quasi-probability inputs).  The returned value is
// not clamped; for genuine counts it always lies in [0, 1].
double postselection_score(const QuasiHistogram& id_v0, const QuasiHistogram& id_v1,
                           const QuasiHistogram& u_v0, const QuasiHistogram& u_v1);
double direct_sum_score(const QuasiHistogram& id, const QuasiHistogram& u);

}  // namespace mdbench
