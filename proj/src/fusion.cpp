#include "pft/fusion.hpp"

#include <cmath>

namespace pft {

std::string to_string(fusion_branch b) {
  switch (b) {
    case fusion_branch::success_plus: return "success_plus";
    case fusion_branch::success_minus: return "success_minus";
    case fusion_branch::fail_01: return "fail_01";
    case fusion_branch::fail_10: return "fail_10";
  }
  return "?";
}

std::vector<fusion_outcome> fuse_type2(const pure_state& s, int q_a, int q_b) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> phi_plus = {r, 0, 0, r};
  const std::array<cplx, 4> phi_minus = {r, 0, 0, -r};
  const std::array<cplx, 4> b01 = {0, 1, 0, 0};
  const std::array<cplx, 4> b10 = {0, 0, 1, 0};
  std::vector<fusion_outcome> out;
  const std::array<std::pair<fusion_branch, std::array<cplx, 4>>, 4> table = {
      {{fusion_branch::success_plus, phi_plus},
       {fusion_branch::success_minus, phi_minus},
       {fusion_branch::fail_01, b01},
       {fusion_branch::fail_10, b10}}};
  for (const auto& [branch, bra] : table) {
    pure_state t = s;
    const double p = t.project_pair_out(q_a, q_b, bra);
    if (p < 1e-14) continue;
    t.normalize();
    out.push_back({branch, p, std::move(t)});
  }
  return out;
}

std::vector<fusion_outcome> fuse_type1(const pure_state& s, int q_keep,
                                       int q_other) {
  std::vector<fusion_outcome> out;
  const double r = 1.0 / std::sqrt(2.0);
  // Success Kraus operators (|0><00| +/- |1><11|)/sqrt(2): merge the diagonal
  // subspace of (q_keep, q_other) back onto q_keep.
  for (int sign = 0; sign < 2; ++sign) {
    pure_state t = s;
    const std::size_t keep = std::size_t(1) << q_keep;
    const std::size_t other = std::size_t(1) << q_other;
    auto& amp = t.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
      const bool bk = i & keep, bo = i & other;
      if (bk != bo)
        amp[i] = 0;
      else
        amp[i] *= (sign && bk) ? -r : r;
    }
    // Merge the surviving diagonal terms onto q_keep, leaving q_other = |0>.
    std::vector<cplx> folded(amp.size(), 0);
    for (std::size_t i = 0; i < amp.size(); ++i)
      if (amp[i] != cplx(0)) folded[i & ~other] += amp[i];
    amp = std::move(folded);
    const double p = t.project_out(q_other, 0);
    if (p < 1e-14) continue;
    t.normalize();
    out.push_back({sign ? fusion_branch::success_minus
                        : fusion_branch::success_plus,
                   p, std::move(t)});
  }
  for (int bk = 0; bk < 2; ++bk) {
    // Failure reads both qubits computationally; branch label gives
    // (q_keep, q_other) bits.
    pure_state t = s;
    const int hi = std::max(q_keep, q_other);
    const int lo = std::min(q_keep, q_other);
    t.project_out(hi, (hi == q_keep) ? bk : 1 - bk);
    const double p = t.project_out(lo, (lo == q_keep) ? bk : 1 - bk);
    if (p < 1e-14) continue;
    t.normalize();
    out.push_back({bk ? fusion_branch::fail_10 : fusion_branch::fail_01,
                   p, std::move(t)});
  }
  return out;
}

pure_state bell_pair() {
  const double r = 1.0 / std::sqrt(2.0);
  return pure_state::from_amplitudes(2, {r, 0, 0, r});
}

pure_state ghz_state(int n) {
  std::vector<cplx> a(std::size_t(1) << n, 0);
  const double r = 1.0 / std::sqrt(2.0);
  a.front() = r;
  a.back() = r;
  return pure_state::from_amplitudes(n, std::move(a));
}

}  // namespace pft
