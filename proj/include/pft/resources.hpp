#pragma once
#include <array>
#include <string>
#include <vector>

#include "pft/css_code.hpp"

namespace pft {

// Expected Bell-pair consumption per successfully delivered object, with a
// failed type-II fusion discarding the partial build (restart from scratch).
long long fusion_build_cost(int bells, int fusions);

// Average Bell pairs per n-qubit encoded |0> block.
long long parity_state_cost(int n);

// Average Bell pairs per 90-degree encoded Z rotation: two expected
// re-encoding attempts, each consuming a fresh (n+1)-qubit block.
long long z90_cost();

// Quoted average Bell-pair cost of one teleportation resource for the
// encoded two-qubit gate.
long long rxx_cost();

// The construction implemented here: two three-qubit blocks entangled by a
// fusion, six Bell pairs and five fusions in total.
struct route_audit {
  int bells = 0;
  int fusions = 0;
  long long restart_cost = 0;
};
route_audit rxx_resource_route();

// Expected Bell pairs per completed encoded two-qubit gate: one resource
// per attempt, success probability 3/4, at most seven attempts.
double xx90_expected_bells();

// Encoded Hadamard: two transversal (free) 90-degree X rotations around one
// Z rotation.
long long hadamard_cost();

// Bell-pair bill of one teleported-correction round for a code, split by
// native gate kind.
struct cost_breakdown {
  std::array<int, 4> counts{};       // prep0, h, xxp90, measz
  std::array<double, 4> per_gate{};  // Bell pairs each
  double total = 0;
};
cost_breakdown telecorrector_cost(const css_code& code);

// Threshold/cost comparison rows for the summary table.
struct comparison_row {
  std::string scheme;
  double loss_threshold = 0;
  double depol_threshold = 0;
  double bell_cost = 0;
  std::string note;
};
std::vector<comparison_row> comparison_table(const css_code& code);

}  // namespace pft
