#pragma once
#include <string>

namespace pft {

// Physical error model: gamma = photon loss probability per gate-timestep,
// eta = depolarisation probability per gate-timestep (split 2/3 into the
// X-type and 2/3 into the Z-type marginal as X, Y, Z each occur with eta/3).
struct physical_noise {
  double gamma = 0;
  double eta = 0;
  double eta_x() const { return 2.0 * eta / 3.0; }
  double eta_z() const { return 2.0 * eta / 3.0; }
};

// Per-encoded-operation error triple at the first encoded level.
struct level1_rates {
  double located = 0;      // heralded loss of the whole encoded block
  double x_unlocated = 0;  // unheralded logical X flip
  double z_unlocated = 0;  // unheralded logical Z flip
};

// Effective fault-location exponents for the first-level encoded operations
// on 7-qubit blocks (4 physical timesteps per encoded operation).
namespace exponents {
inline constexpr int source_prep_loss = 21;
inline constexpr int source_prep_x = 41;
inline constexpr int z90_x = 69;
inline constexpr int z90_z = 10;
inline constexpr int z90_attempts = 7;
inline constexpr int xx90_loss = 40;
inline constexpr int xx90_x = 28;
inline constexpr int xx90_z = 4;
inline constexpr int memory_loss = 28;
inline constexpr int memory_x = 28;
inline constexpr int memory_z = 4;
inline constexpr int meas_loss = 7;
inline constexpr int meas_x = 7;
}  // namespace exponents

// Loss-location count for the j-th re-encoding attempt of the 90-degree
// Z rotation (block shrinks by one per failed attempt).
int z90_attempt_loss_exponent(int j);

level1_rates rates_source_prep(const physical_noise& p);
level1_rates rates_z90(const physical_noise& p);
level1_rates rates_xx90(const physical_noise& p);
level1_rates rates_memory(const physical_noise& p);
level1_rates rates_measurement(const physical_noise& p);

// Noise injected per encoded operation kind during gadget simulation.
struct noise_table {
  level1_rates prep;   // encoded |0> preparation
  level1_rates h;      // encoded Hadamard (built from two Z90-class steps)
  level1_rates xx;     // encoded two-qubit entangling gate (per output qubit)
  level1_rates mem;    // idle encoded block, per circuit layer
  level1_rates meas;   // encoded destructive measurement
  level1_rates input;  // arrival noise on externally supplied data blocks
};

// Tables for the direct (level-1) model at given physical rates.
noise_table level1_noise(const physical_noise& p);
// Homogeneous table used when iterating the level-to-level map: every
// operation kind carries the same triple.
noise_table uniform_noise(const level1_rates& r);

// Block size minimising the encoded two-qubit gate error at loss rate gamma.
int optimal_code_size(const physical_noise& p, int n_min = 2, int n_max = 40);

std::string describe(const level1_rates& r);

}  // namespace pft
