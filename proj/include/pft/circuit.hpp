#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pft {

// Encoded-level gate set.  prep0/h/xxp90/measz are native to the encoded
// layer; cnot, cz, prep_plus and measx are convenience gates removed by
// convert_to_native.
enum class gk : uint8_t { prep0, prep_plus, h, cnot, cz, xxp90, measz, measx };

const char* gate_name(gk k);
int gate_arity(gk k);
bool gate_is_native(gk k);

struct gate {
  gk kind;
  int16_t q0 = -1;
  int16_t q1 = -1;
  int32_t t = -1;  // layer index, assigned by assign_times
};

struct circuit {
  int nq = 0;
  std::vector<gate> gates;
  std::vector<int> external_inputs;  // qubits arriving already prepared
  std::vector<int> outputs;          // qubits left unmeasured on purpose

  void add(gk kind, int q0, int q1 = -1);
  bool is_native() const;
  int num_layers() const;  // 1 + max assigned time

  // "<t> <name> <q0> [q1]" per line.
  std::string dump() const;
  static circuit parse(std::istream& in);

  // Prep-before-use, single prep, no use after measurement, every qubit
  // prepared or external, measured or declared an output.
  void validate() const;

  // As-soon-as-possible layering that respects per-qubit gate order; the
  // layers of gates at or after the online barrier start one past the
  // offline maximum.
  void assign_times(std::size_t online_start_index = SIZE_MAX);
};

// Rewrites cnot/cz/prep_plus/measx in terms of prep0/h/xxp90/measz, then
// cancels adjacent self-inverse h pairs per qubit.
circuit convert_to_native(const circuit& c);

// Removes h-h pairs with no intervening gate on the same qubit.
void cancel_hadamard_pairs(circuit& c);

}  // namespace pft
