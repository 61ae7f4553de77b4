#pragma once
#include <array>
#include <cstddef>
#include <vector>

#include "pft/circuit.hpp"
#include "pft/css_code.hpp"

namespace pft {

// One-round teleported error correction of a data block D against a CSS
// code: two code blocks R1, R2 are prepared offline into a logical Bell
// pair, each verified by an X-sector check block (V) and a Z-sector check
// block (P, itself pre-verified by Q); online, D is Bell-measured against
// R1 and the outcome words steer Pauli-frame corrections onto R2, which
// carries the corrected logical state.
struct telecorrector {
  enum word_id {
    w_q1 = 0,  // X-basis readout certifying P1's preparation
    w_q2,
    w_v1,  // X-sector check of R1
    w_v2,
    w_p1,  // Z-sector check of R1
    w_p2,
    w_mz,  // online Z readout of R1 (X-sector information)
    w_mx,  // online X readout of D (Z-sector information)
    w_count
  };

  const css_code* code = nullptr;
  circuit native;            // converted to the native set and layered
  std::size_t online_start;  // index of the first online gate in native
  std::vector<int> D, R1, R2, V1, V2, P1, P2, Q1, Q2;
  std::vector<int> word_of_qubit;  // word_id per qubit, -1 if unmeasured
  std::vector<int> bit_of_qubit;   // bit position inside the word

  static telecorrector build(const css_code& code);

  // Native gate tally: [prep0, h, xxp90, measz].
  std::array<int, 4> gate_counts() const;
  int online_layers() const;
};

}  // namespace pft
