#include "pft/pure_state.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pft {

pure_state pure_state::from_amplitudes(int n_qubits, std::vector<cplx> amps) {
  if (amps.size() != (std::size_t(1) << n_qubits))
    throw std::invalid_argument("amplitude count does not match qubit count");
  pure_state s;
  s.n_ = n_qubits;
  s.amp_ = std::move(amps);
  return s;
}

double pure_state::norm2() const {
  double t = 0;
  for (const auto& a : amp_) t += std::norm(a);
  return t;
}

void pure_state::normalize() {
  const double n = std::sqrt(norm2());
  if (n == 0) throw std::runtime_error("cannot normalise zero state");
  for (auto& a : amp_) a /= n;
}

void pure_state::apply1(int q, const mat2& m) {
  assert(q >= 0 && q < n_);
  const std::size_t step = std::size_t(1) << q;
  for (std::size_t base = 0; base < amp_.size(); base += 2 * step)
    for (std::size_t i = base; i < base + step; ++i) {
      const cplx a0 = amp_[i], a1 = amp_[i + step];
      amp_[i] = m[0] * a0 + m[1] * a1;
      amp_[i + step] = m[2] * a0 + m[3] * a1;
    }
}

void pure_state::apply2(int q_hi, int q_lo, const mat4& m) {
  assert(q_hi != q_lo && q_hi >= 0 && q_lo >= 0 && q_hi < n_ && q_lo < n_);
  const std::size_t hi = std::size_t(1) << q_hi;
  const std::size_t lo = std::size_t(1) << q_lo;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & (hi | lo)) continue;
    cplx v[4] = {amp_[i], amp_[i | lo], amp_[i | hi], amp_[i | hi | lo]};
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0;
      for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * v[c];
      std::size_t idx = i;
      if (r & 1) idx |= lo;
      if (r & 2) idx |= hi;
      amp_[idx] = acc;
    }
  }
}

double pure_state::project_out(int q, int bit) {
  assert(q >= 0 && q < n_);
  const std::size_t step = std::size_t(1) << q;
  std::vector<cplx> out(amp_.size() >> 1);
  double p = 0;
  std::size_t w = 0;
  for (std::size_t base = 0; base < amp_.size(); base += 2 * step)
    for (std::size_t i = base; i < base + step; ++i) {
      const cplx a = bit ? amp_[i + step] : amp_[i];
      p += std::norm(a);
      out[w++] = a;
    }
  amp_ = std::move(out);
  --n_;
  return p;
}

double pure_state::project_pair_out(int q_hi, int q_lo,
                                    const std::array<cplx, 4>& bra) {
  assert(q_hi != q_lo);
  const std::size_t hi = std::size_t(1) << q_hi;
  const std::size_t lo = std::size_t(1) << q_lo;
  const int blo = std::min(q_hi, q_lo), bhi = std::max(q_hi, q_lo);
  std::vector<cplx> out(amp_.size() >> 2);
  double p = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    // Expand compact index k by inserting zero bits at the removed positions.
    std::size_t i = k;
    std::size_t m = (std::size_t(1) << blo) - 1;
    i = ((i & ~m) << 1) | (i & m);
    m = (std::size_t(1) << bhi) - 1;
    i = ((i & ~m) << 1) | (i & m);
    const cplx a = std::conj(bra[0]) * amp_[i] +
                   std::conj(bra[1]) * amp_[i | lo] +
                   std::conj(bra[2]) * amp_[i | hi] +
                   std::conj(bra[3]) * amp_[i | hi | lo];
    p += std::norm(a);
    out[k] = a;
  }
  amp_ = std::move(out);
  n_ -= 2;
  return p;
}

pure_state pure_state::tensor(const pure_state& high, const pure_state& low) {
  pure_state s;
  s.n_ = high.n_ + low.n_;
  s.amp_.assign(std::size_t(1) << s.n_, 0);
  for (std::size_t i = 0; i < high.amp_.size(); ++i)
    for (std::size_t j = 0; j < low.amp_.size(); ++j)
      s.amp_[(i << low.n_) | j] = high.amp_[i] * low.amp_[j];
  return s;
}

}  // namespace pft
