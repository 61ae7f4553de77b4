#pragma once
#include <cstdint>

#include "pft/rates.hpp"
#include "pft/telecorrector.hpp"

namespace pft {

struct mc_params {
  uint64_t seed = 1;
  long long samples = 100000;
  int workers = 1;
  // When set, a heralded loss at a two-qubit gate flags both outputs (a lost
  // photon voids the joint gate).  Off by default: losses are drawn and
  // tracked independently per output qubit.
  bool located_flags_partner = false;
  // Failed offline verification discards the production run and retries with
  // fresh randomness; a sample that exhausts the retry budget is counted as
  // heralded.
  int max_production_retries = 200;
};

struct sim_estimate {
  long long located_count = 0, x_count = 0, z_count = 0;
  long long samples = 0;
  uint64_t seed = 0;
  double located() const { return double(located_count) / double(samples); }
  double x_unlocated() const { return double(x_count) / double(samples); }
  double z_unlocated() const { return double(z_count) / double(samples); }
  double se_located() const { return se(located()); }
  double se_x() const { return se(x_unlocated()); }
  double se_z() const { return se(z_unlocated()); }

 private:
  double se(double p) const;
};

// Estimates the gadget's output error triple: heralded failures are
// exclusive; X and Z flags may co-occur on one sample.
sim_estimate simulate_telecorrector(const telecorrector& tc,
                                    const noise_table& nt,
                                    const mc_params& mp);

// Deterministic single-fault classification (no stochastic noise, no
// production retry): used to demonstrate that no single fault produces a
// silent logical error.
struct gate_fault {
  std::size_t gate_index;  // fault lands right after this native gate
  int which;               // 0 = first qubit, 1 = second
  char type;               // 'X', 'Z', or 'L' (heralded loss flag)
};
struct idle_fault {
  int qubit;
  int layer;  // start of this layer; -1 = on arrival of an external input
  char type;
};
struct outcome_class {
  bool rejected = false;  // failed an offline verification word
  bool located = false;
  bool x = false;
  bool z = false;
  bool silent_logical() const { return !rejected && !located && (x || z); }
};
outcome_class classify_with_fault(const telecorrector& tc,
                                  const gate_fault& f);
outcome_class classify_with_fault(const telecorrector& tc,
                                  const idle_fault& f);
outcome_class classify_noiseless(const telecorrector& tc);

}  // namespace pft
