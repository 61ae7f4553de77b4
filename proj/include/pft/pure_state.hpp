#pragma once
#include <cstdint>
#include <vector>

#include "pft/linalg.hpp"

namespace pft {

// Dense state vector over n qubits.  Qubit q addresses bit q of the basis
// index (qubit 0 = least significant bit).  Two-qubit operators act on the
// ordered pair (q_hi, q_lo) where q_hi indexes the most significant bit of
// the 2-qubit sub-space, matching kron(A, B) acting as A on q_hi, B on q_lo.
class pure_state {
 public:
  pure_state() = default;
  explicit pure_state(int n_qubits)
      : n_(n_qubits), amp_(std::size_t(1) << n_qubits, 0) {
    amp_[0] = 1;
  }
  static pure_state from_amplitudes(int n_qubits, std::vector<cplx> amps);

  int num_qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

  double norm2() const;
  void normalize();

  void apply1(int q, const mat2& m);
  void apply2(int q_hi, int q_lo, const mat4& m);

  // Projects qubit q onto |bit> and removes it; returns the branch
  // probability (state left unnormalised).
  double project_out(int q, int bit);

  // Projects the pair (q_hi, q_lo) onto the two-qubit bra and removes both
  // qubits; returns the branch probability (state left unnormalised).
  double project_pair_out(int q_hi, int q_lo, const std::array<cplx, 4>& bra);

  // Tensor product: this (high bits) x other (low bits).
  static pure_state tensor(const pure_state& high, const pure_state& low);

  double fidelity(const pure_state& other) const {
    return overlap_mod(amp_, other.amp_);
  }

 private:
  int n_ = 0;
  std::vector<cplx> amp_;
};

}  // namespace pft
