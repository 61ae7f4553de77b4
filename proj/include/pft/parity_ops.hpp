#pragma once
#include <array>
#include <vector>

#include "pft/fusion.hpp"
#include "pft/pure_state.hpp"

namespace pft {

// alpha |0bar> + beta |1bar> on an n-qubit even/odd-parity block (n >= 1).
pure_state parity_state(int n, cplx alpha, cplx beta);
inline pure_state parity_zero(int n) { return parity_state(n, 1, 0); }

// Two parity blocks, block1 (n1 qubits) in the high bits: logical amplitudes
// ordered (00, 01, 10, 11) with block1 the most significant logical bit.
pure_state parity_pair(int n1, int n2, const std::array<cplx, 4>& amps);

struct logical_amplitudes {
  cplx alpha, beta;
  double residual;  // norm of the component outside the code space
};
logical_amplitudes read_logical(const pure_state& block);

// Logical Pauli on the listed qubits of a block: X = bit flip on one qubit,
// Z = transversal phase flip, Y = both.
void apply_logical(pure_state& s, const std::vector<int>& block_qubits,
                   char pauli);

// dst bit i takes the amplitude bit src_of_dst[i].
pure_state permute_qubits(const pure_state& s,
                          const std::vector<int>& src_of_dst);

// ------------------------------------------------------------------ resource
// Entangling-gate resource state: the symmetric involution
// (I + X(x)I + I(x)X - X(x)X)/2 applied across the two middle qubits of a
// pair of even-parity blocks.  Qubit roles for the 4-qubit form
// (bits 3..0): port1, out1, out2, port2; the 6-qubit form adds one retry
// qubit behind each port: port1, retry1, out1, out2, retry2, port2.
struct rxx_resource {
  pure_state state;
  int bells = 0;    // Bell pairs consumed when built by fusion
  int fusions = 0;  // fusion attempts performed when built by fusion
};

rxx_resource rxx4_reference();
rxx_resource rxx6_reference();
rxx_resource rxx4_built();  // linear-optics construction (Bells + fusions)
rxx_resource rxx6_built();
pure_state rxx4_closed_form();  // the two-branch superposition form

// --------------------------------------------------------------- teleported
struct teleport_result {
  fusion_branch side1, side2;
  double probability;
  pure_state state;  // corrected; qubit order block1' high, block2' low
  int n1, n2;        // output block sizes
};

// Gate teleportation of the encoded XX'(90) through the 4-qubit resource:
// one fusion per side, all four success branch pairs, byproducts removed.
std::vector<teleport_result> teleport_xx90(const pure_state& block1, int n1,
                                           const pure_state& block2, int n2);

// Same gate with a forced first-attempt fusion failure on side 1, retried on
// the 6-qubit resource's spare port, then both sides succeeding on Phi+.
teleport_result teleport_xx90_retry(const pure_state& block1, int n1,
                                    const pure_state& block2, int n2,
                                    fusion_branch first_fail);

// ------------------------------------------------------------- re-encoding
struct merge_result {
  fusion_branch fb;
  double probability;
  pure_state state;  // corrected; success: one block of n+m-2 qubits,
                     // failure: old-rest (n-1, high) x ancilla-rest (m-1)
  bool merged;
};

// Fuses one qubit of the block with one qubit of a fresh m-qubit |0bar>;
// success grows the block to n+m-2 qubits.
std::vector<merge_result> merge_parity_blocks(const pure_state& block, int m);

struct reencode_result {
  fusion_branch fb;
  int meas_parity;          // parity of the old-rest readout (success only)
  double probability;
  pure_state state;         // corrected output block (success: n qubits;
                            // failure: old-rest (n-1) x anc-rest (n))
  bool rotation_applied;    // success branches carry the rotation
  char correction;          // Pauli that was applied ('I','X','Y','Z')
  int anc_remnant_parity;   // failure only: parity of the ancilla leftover
};

// 90-degree logical Z rotation by re-encoding: the unencoded rotation acts on
// the fusion-input qubit, which is fused into a fresh (n+1)-qubit |0bar>;
// the remaining old qubits are read out computationally.
std::vector<reencode_result> z90_reencode(const pure_state& block,
                                          bool with_rotation);

// H-dressed keep-one fusion join of two blocks: logical content combines by
// parity addition; the minus branch leaves an extra logical X.
struct join_result {
  fusion_branch fb;  // success_plus / success_minus only
  double probability;
  pure_state state;  // corrected; one block of na+nb-1 qubits
};
std::vector<join_result> join_blocks(const pure_state& block_a, int na,
                                     const pure_state& block_b, int nb);

}  // namespace pft
