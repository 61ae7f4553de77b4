#pragma once
#include <string>
#include <vector>

#include "pft/pure_state.hpp"

namespace pft {

// Branches of a polarising-beam-splitter fusion attempt between two qubits.
// Success distinguishes the two Bell-pair parities; failure performs a
// separable computational readout of both qubits.
enum class fusion_branch { success_plus, success_minus, fail_01, fail_10 };

std::string to_string(fusion_branch b);

struct fusion_outcome {
  fusion_branch branch;
  double probability;   // branch probability in the supplied state
  pure_state state;     // post-branch state, normalised, fused qubits removed
};

// Type-II fusion of qubits (q_a, q_b): success projects onto the Bell pair
// (|00> +/- |11>)/sqrt(2) over (q_a, q_b) with q_a the high bit; failure
// projects onto |01> or |10>.  Both fused qubits are consumed.
std::vector<fusion_outcome> fuse_type2(const pure_state& s, int q_a, int q_b);

// Type-I fusion of (q_keep, q_other): success keeps one photon, merging the
// two qubits into q_keep; failure measures both out.  Outcomes use the same
// labels, with success_plus/minus the two heralded interferometer signs.
std::vector<fusion_outcome> fuse_type1(const pure_state& s, int q_keep,
                                       int q_other);

pure_state bell_pair();          // (|00> + |11>)/sqrt(2)
pure_state ghz_state(int n);     // (|0..0> + |1..1>)/sqrt(2)

}  // namespace pft
