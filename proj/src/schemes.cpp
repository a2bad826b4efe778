#include "mdbench/schemes.hpp"

#include <cmath>

namespace mdbench {

namespace {

constexpr const char* kKeys[] = {"00", "01", "10", "11"};

double get(const QuasiHistogram& h, const char* key) {
  const auto it = h.find(key);
  return it == h.end() ? 0.0 : it->second;
}

QuasiHistogram to_quasi(const Histogram& h) {
  validate_histogram(h);
  QuasiHistogram q;
  for (const auto& [key, count] : h) {
    q[key] = static_cast<double>(count);
  }
  return q;
}

void check_labels(int target, int ancilla) {
  if ((target != 0 && target != 1) || (ancilla != 0 && ancilla != 1)) {
    throw ValidationError("target and ancilla must be logical wires 0 or 1");
  }
  if (target == ancilla) {
    throw ValidationError("target and ancilla wires must differ");
  }
}

void check_fragment(const Circuit& fragment, int wires, const char* name) {
  if (fragment.num_wires != wires) {
    throw ValidationError(std::string(name) + " fragment must span " +
                          std::to_string(wires) + " wire(s)");
  }
  if (fragment.measured) {
    throw ValidationError(std::string(name) + " fragment must not be measured");
  }
  if (!is_unitary(fragment.unitary(), 1e-10)) {
    throw ValidationError(std::string(name) + " fragment composite is not unitary within 1e-10");
  }
}

}  // namespace

void validate_components(const DiscriminationComponents& components) {
  check_fragment(components.state_prep, 2, "state_prep");
  check_fragment(components.u_dag, 1, "u_dag");
  check_fragment(components.v0_dag, 1, "v0_dag");
  check_fragment(components.v1_dag, 1, "v1_dag");
  check_fragment(components.v0v1_direct_sum_dag, 2, "v0v1_direct_sum_dag");
}

void validate_histogram(const Histogram& hist) {
  for (const auto& [key, count] : hist) {
    if (key != "00" && key != "01" && key != "10" && key != "11") {
      throw ValidationError("histogram key must be one of 00/01/10/11, got '" + key + "'");
    }
    if (count < 0) {
      throw ValidationError("histogram count for '" + key + "' is negative");
    }
  }
}

long long histogram_total(const Histogram& hist) {
  long long total = 0;
  for (const auto& [key, count] : hist) {
    total += count;
  }
  return total;
}

PostselectionCircuits assemble_postselection_circuits(const DiscriminationComponents& components,
                                                      int target, int ancilla) {
  check_labels(target, ancilla);
  validate_components(components);

  Circuit id = Circuit::fragment2();
  id.append_fragment(components.state_prep, target, ancilla);
  Circuit u = id;
  u.append_fragment(components.u_dag, target);

  PostselectionCircuits out;
  out.id_v0 = id;
  out.id_v0.append_fragment(components.v0_dag, ancilla);
  out.id_v1 = id;
  out.id_v1.append_fragment(components.v1_dag, ancilla);
  out.u_v0 = u;
  out.u_v0.append_fragment(components.v0_dag, ancilla);
  out.u_v1 = u;
  out.u_v1.append_fragment(components.v1_dag, ancilla);
  out.id_v0.measure();
  out.id_v1.measure();
  out.u_v0.measure();
  out.u_v1.measure();
  return out;
}

DirectSumCircuits assemble_direct_sum_circuits(const DiscriminationComponents& components,
                                               int target, int ancilla) {
  check_labels(target, ancilla);
  validate_components(components);

  DirectSumCircuits out;
  out.id = Circuit::fragment2();
  out.id.append_fragment(components.state_prep, target, ancilla);
  out.u = out.id;
  out.u.append_fragment(components.u_dag, target);
  // Fragment wire 0 is the controlling wire and goes onto the target.
  out.id.append_fragment(components.v0v1_direct_sum_dag, target, ancilla);
  out.u.append_fragment(components.v0v1_direct_sum_dag, target, ancilla);
  out.id.measure();
  out.u.measure();
  return out;
}

double postselection_score(const QuasiHistogram& id_v0, const QuasiHistogram& id_v1,
                           const QuasiHistogram& u_v0, const QuasiHistogram& u_v1) {
  // Valid shots: target outcome i equals the circuit label k.  The *_v0
  // circuits keep keys "0j", the *_v1 circuits keep keys "1j".
  const double valid = get(id_v0, "00") + get(id_v0, "01") +  //
                       get(id_v1, "10") + get(id_v1, "11") +  //
                       get(u_v0, "00") + get(u_v0, "01") +    //
                       get(u_v1, "10") + get(u_v1, "11");
  if (valid <= 0.0) {
    throw NoValidShots("postselection kept no valid shot mass");
  }
  // Successes: j=0 in the u_* circuits (measurement was P_U), j=1 in the
  // id_* circuits (measurement was P_1).
  const double successes = get(u_v0, "00") + get(u_v1, "10") +  //
                           get(id_v0, "01") + get(id_v1, "11");
  return successes / valid;
}

double direct_sum_score(const QuasiHistogram& id, const QuasiHistogram& u) {
  double total = 0.0;
  for (const char* key : kKeys) {
    total += get(id, key) + get(u, key);
  }
  if (total <= 0.0) {
    throw NoValidShots("direct-sum histograms carry no shot mass");
  }
  const double successes = get(u, "00") + get(u, "10") +  //
                           get(id, "01") + get(id, "11");
  return successes / total;
}

double postselection_probability(const Histogram& id_v0, const Histogram& id_v1,
                                 const Histogram& u_v0, const Histogram& u_v1) {
  return postselection_score(to_quasi(id_v0), to_quasi(id_v1), to_quasi(u_v0), to_quasi(u_v1));
}

double direct_sum_probability(const Histogram& id, const Histogram& u) {
  return direct_sum_score(to_quasi(id), to_quasi(u));
}

}  // namespace mdbench
