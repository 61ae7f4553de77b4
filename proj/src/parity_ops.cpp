#include "pft/parity_ops.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pft {
namespace {

int popcount(std::size_t v) { return std::popcount(v); }

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

std::array<cplx, 4> branch_bra(fusion_branch b) {
  switch (b) {
    case fusion_branch::success_plus:
      return {inv_sqrt2, 0, 0, inv_sqrt2};
    case fusion_branch::success_minus:
      return {inv_sqrt2, 0, 0, -inv_sqrt2};
    case fusion_branch::fail_01:
      return {0, 1, 0, 0};
    case fusion_branch::fail_10:
      return {0, 0, 1, 0};
  }
  throw std::logic_error("branch");
}

mat2 pauli_mat(char p) {
  switch (p) {
    case 'I': return gates::identity2();
    case 'X': return gates::pauli_x();
    case 'Y': return gates::pauli_y();
    case 'Z': return gates::pauli_z();
  }
  throw std::invalid_argument("pauli");
}

// Wraps a state with stable qubit labels so fusions/measurements can be
// chained without tracking index shifts by hand.
struct labeled {
  pure_state s;
  std::vector<int> lab;  // lab[i] = label of the qubit at bit i

  int pos(int label) const {
    for (std::size_t i = 0; i < lab.size(); ++i)
      if (lab[i] == label) return int(i);
    throw std::logic_error("unknown qubit label");
  }
  double fuse2(int label_hi, int label_lo, fusion_branch b) {
    int ph = pos(label_hi), pl = pos(label_lo);
    const double p = s.project_pair_out(ph, pl, branch_bra(b));
    if (ph < pl) std::swap(ph, pl);
    lab.erase(lab.begin() + ph);
    lab.erase(lab.begin() + pl);
    return p;
  }
  double measure(int label, int bit) {
    const int p0 = pos(label);
    const double p = s.project_out(p0, bit);
    lab.erase(lab.begin() + p0);
    return p;
  }
  void apply(int label, const mat2& m) { s.apply1(pos(label), m); }
};

// Logical two-qubit action of the teleported gate:
// (I*I + X*I + I*X - X*X)/2.
mat4 logical_m() {
  const mat2 i2 = gates::identity2(), x = gates::pauli_x();
  mat4 m{};
  const mat4 terms[4] = {kron(i2, i2), kron(x, i2), kron(i2, x), kron(x, x)};
  const double sg[4] = {0.5, 0.5, 0.5, -0.5};
  for (int t = 0; t < 4; ++t)
    for (int k = 0; k < 16; ++k) m[k] += sg[t] * terms[t][k];
  return m;
}

// Labels used throughout: block1 qubit i -> 1000+i, block2 -> 2000+i,
// resource roles: 3000 port1, 3001 out1, 3002 out2, 3003 port2,
// 3004 retry1, 3005 retry2.
constexpr int L_B1 = 1000, L_B2 = 2000;
constexpr int L_PORT1 = 3000, L_OUT1 = 3001, L_OUT2 = 3002, L_PORT2 = 3003;
constexpr int L_RETRY1 = 3004, L_RETRY2 = 3005;

labeled assemble(const pure_state& b1, int n1, const pure_state& b2, int n2,
                 const pure_state& res, const std::vector<int>& res_labels) {
  labeled L;
  L.s = pure_state::tensor(pure_state::tensor(b1, b2), res);
  L.lab = res_labels;
  for (int i = 0; i < n2; ++i) L.lab.push_back(L_B2 + i);
  for (int i = 0; i < n1; ++i) L.lab.push_back(L_B1 + i);
  return L;
}

const std::vector<int> r4_labels = {L_PORT2, L_OUT2, L_OUT1, L_PORT1};
const std::vector<int> r6_labels = {L_PORT2, L_RETRY2, L_OUT2,
                                    L_OUT1, L_RETRY1, L_PORT1};

pure_state canonical_order(labeled& L, int n1_rest, int n2_rest) {
  // dst low..high: block2 rest, out2 | out1, block1 rest.
  std::vector<int> want;
  for (int i = 0; i < n2_rest; ++i) want.push_back(L_B2 + 1 + i);
  want.push_back(L_OUT2);
  want.push_back(L_OUT1);
  for (int i = 0; i < n1_rest; ++i) want.push_back(L_B1 + 1 + i);
  std::vector<int> src_of_dst;
  for (int w : want) src_of_dst.push_back(L.pos(w));
  return permute_qubits(L.s, src_of_dst);
}

struct tele_raw {
  pure_state state;
  double probability;
};

tele_raw teleport_raw(const pure_state& b1, int n1, const pure_state& b2,
                      int n2, fusion_branch f1, fusion_branch f2, char c1,
                      char c2) {
  labeled L = assemble(b1, n1, b2, n2, rxx4_reference().state, r4_labels);
  L.fuse2(L_B1 + 0, L_PORT1, f1);
  const double p = L.fuse2(L_B2 + 0, L_PORT2, f2);
  L.apply(L_OUT1, pauli_mat(c1));
  L.apply(L_OUT2, pauli_mat(c2));
  pure_state out = canonical_order(L, n1 - 1, n2 - 1);
  out.normalize();
  return {std::move(out), p};
}

// Byproduct table, calibrated once on single-qubit blocks against the exact
// logical action; indexed [side1 == minus][side2 == minus].
const std::array<std::array<std::pair<char, char>, 2>, 2>& byproducts() {
  static const auto table = [] {
    std::array<std::array<std::pair<char, char>, 2>, 2> t{};
    const cplx a1(0.374, 0.521), b1(0.644, -0.419);
    const cplx a2(-0.237, 0.485), b2(0.731, 0.412);
    pure_state in1 = parity_state(1, a1, b1);
    pure_state in2 = parity_state(1, a2, b2);
    std::array<cplx, 4> v = {a1 * a2, a1 * b2, b1 * a2, b1 * b2};
    const mat4 m = logical_m();
    std::array<cplx, 4> mv{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) mv[r] += m[4 * r + c] * v[c];
    const pure_state target = parity_pair(1, 1, mv);
    const char paulis[4] = {'I', 'X', 'Y', 'Z'};
    const fusion_branch succ[2] = {fusion_branch::success_plus,
                                   fusion_branch::success_minus};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        bool found = false;
        for (char p1 : paulis) {
          for (char p2 : paulis) {
            const tele_raw r =
                teleport_raw(in1, 1, in2, 1, succ[i], succ[j], p1, p2);
            if (r.state.fidelity(target) > 1 - 1e-10) {
              t[i][j] = {p1, p2};
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found) throw std::logic_error("teleport byproduct calibration");
      }
    return t;
  }();
  return table;
}

}  // namespace

pure_state parity_state(int n, cplx alpha, cplx beta) {
  if (n < 1) throw std::invalid_argument("parity block needs n >= 1");
  std::vector<cplx> a(std::size_t(1) << n);
  const double norm = std::sqrt(std::ldexp(1.0, n - 1));
  for (std::size_t x = 0; x < a.size(); ++x)
    a[x] = ((popcount(x) & 1) ? beta : alpha) / norm;
  return pure_state::from_amplitudes(n, std::move(a));
}

pure_state parity_pair(int n1, int n2, const std::array<cplx, 4>& amps) {
  std::vector<cplx> a(std::size_t(1) << (n1 + n2));
  const double norm =
      std::sqrt(std::ldexp(1.0, n1 - 1)) * std::sqrt(std::ldexp(1.0, n2 - 1));
  for (std::size_t x1 = 0; x1 < (std::size_t(1) << n1); ++x1)
    for (std::size_t x2 = 0; x2 < (std::size_t(1) << n2); ++x2)
      a[(x1 << n2) | x2] =
          amps[((popcount(x1) & 1) << 1) | (popcount(x2) & 1)] / norm;
  return pure_state::from_amplitudes(n1 + n2, std::move(a));
}

logical_amplitudes read_logical(const pure_state& block) {
  const int n = block.num_qubits();
  const pure_state zero = parity_state(n, 1, 0), one = parity_state(n, 0, 1);
  cplx a = 0, b = 0;
  for (std::size_t i = 0; i < block.amplitudes().size(); ++i) {
    a += std::conj(zero.amplitudes()[i]) * block.amplitudes()[i];
    b += std::conj(one.amplitudes()[i]) * block.amplitudes()[i];
  }
  double res2 = 0;
  for (std::size_t i = 0; i < block.amplitudes().size(); ++i) {
    const cplx d = block.amplitudes()[i] - a * zero.amplitudes()[i] -
                   b * one.amplitudes()[i];
    res2 += std::norm(d);
  }
  return {a, b, std::sqrt(std::max(0.0, res2))};
}

void apply_logical(pure_state& s, const std::vector<int>& block_qubits,
                   char pauli) {
  if (block_qubits.empty()) throw std::invalid_argument("empty block");
  switch (pauli) {
    case 'I':
      return;
    case 'X':
      s.apply1(block_qubits[0], gates::pauli_x());
      return;
    case 'Z':
      for (int q : block_qubits) s.apply1(q, gates::pauli_z());
      return;
    case 'Y':
      s.apply1(block_qubits[0], gates::pauli_x());
      for (int q : block_qubits) s.apply1(q, gates::pauli_z());
      return;
  }
  throw std::invalid_argument("pauli");
}

pure_state permute_qubits(const pure_state& s,
                          const std::vector<int>& src_of_dst) {
  const int n = s.num_qubits();
  if (int(src_of_dst.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<cplx> out(s.amplitudes().size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    std::size_t src = 0;
    for (int i = 0; i < n; ++i)
      if ((d >> i) & 1) src |= std::size_t(1) << src_of_dst[i];
    out[d] = s.amplitudes()[src];
  }
  return pure_state::from_amplitudes(n, std::move(out));
}

rxx_resource rxx4_reference() {
  pure_state s = pure_state::tensor(bell_pair(), bell_pair());
  s.apply2(2, 1, logical_m());
  return {std::move(s), 0, 0};
}

rxx_resource rxx6_reference() {
  pure_state s = pure_state::tensor(parity_zero(3), parity_zero(3));
  s.apply2(3, 2, logical_m());
  return {std::move(s), 0, 0};
}

pure_state rxx4_closed_form() {
  // (|++>_{port1,out1} (|00>+|11>)_{out2,port2}
  //  + |-->_{port1,out1} (|01>+|10>)_{out2,port2}) / 2
  std::vector<cplx> a(16, 0);
  auto add = [&](int b3, int b2, int b1, int b0, double v) {
    a[(b3 << 3) | (b2 << 2) | (b1 << 1) | b0] += v;
  };
  for (int p = 0; p < 2; ++p)
    for (int o = 0; o < 2; ++o) {
      // |++> component, weight 1/2 each amplitude.
      add(p, o, 0, 0, 0.25);
      add(p, o, 1, 1, 0.25);
      // |--> component with sign (-1)^{p+o}.
      const double sg = ((p + o) & 1) ? -0.25 : 0.25;
      add(p, o, 0, 1, sg);
      add(p, o, 1, 0, sg);
    }
  return pure_state::from_amplitudes(4, std::move(a));
}

namespace {

pure_state ghz_by_fusion(int n, int& bells, int& fusions) {
  // Chain Bell pairs with keep-one fusions, post-selecting the plus branch.
  pure_state g = bell_pair();
  bells = 1;
  fusions = 0;
  for (int k = 2; k < n; ++k) {
    pure_state s = pure_state::tensor(g, bell_pair());
    ++bells;
    // Fuse the low qubit of g (bit 2) with the high qubit of the new Bell
    // (bit 1).
    auto outs = fuse_type1(s, 2, 1);
    bool ok = false;
    for (auto& o : outs)
      if (o.branch == fusion_branch::success_plus) {
        g = std::move(o.state);
        ok = true;
      }
    if (!ok) throw std::logic_error("ghz fusion branch missing");
    ++fusions;
  }
  return g;
}

rxx_resource rxx_built(int half) {
  int bells = 0, fusions = 0;
  int b1, f1c, b2, f2c;
  pure_state ga = ghz_by_fusion(half + 1, b1, f1c);
  pure_state gb = ghz_by_fusion(half + 1, b2, f2c);
  bells = b1 + b2;
  fusions = f1c + f2c;
  pure_state s = pure_state::tensor(ga, gb);
  const int nb = half + 1;
  // Dress the second block's fusion qubit, fuse, keep the plus branch.
  s.apply1(nb - 1, gates::hadamard());
  auto outs = fuse_type2(s, nb, nb - 1);
  ++fusions;
  pure_state r;
  bool ok = false;
  for (auto& o : outs)
    if (o.branch == fusion_branch::success_plus) {
      r = std::move(o.state);
      ok = true;
    }
  if (!ok) throw std::logic_error("resource fusion branch missing");
  for (int q = 0; q < 2 * half; ++q) r.apply1(q, gates::hadamard());
  return {std::move(r), bells, fusions};
}

}  // namespace

rxx_resource rxx4_built() { return rxx_built(2); }
rxx_resource rxx6_built() { return rxx_built(3); }

std::vector<teleport_result> teleport_xx90(const pure_state& block1, int n1,
                                           const pure_state& block2, int n2) {
  if (block1.num_qubits() != n1 || block2.num_qubits() != n2)
    throw std::invalid_argument("block size mismatch");
  const auto& table = byproducts();
  const fusion_branch succ[2] = {fusion_branch::success_plus,
                                 fusion_branch::success_minus};
  std::vector<teleport_result> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto [c1, c2] = table[i][j];
      tele_raw r =
          teleport_raw(block1, n1, block2, n2, succ[i], succ[j], c1, c2);
      out.push_back({succ[i], succ[j], r.probability, std::move(r.state),
                     n1, n2});
    }
  return out;
}

teleport_result teleport_xx90_retry(const pure_state& block1, int n1,
                                    const pure_state& block2, int n2,
                                    fusion_branch first_fail) {
  if (n1 < 2) throw std::invalid_argument("retry needs n1 >= 2");
  if (first_fail != fusion_branch::fail_01 &&
      first_fail != fusion_branch::fail_10)
    throw std::invalid_argument("first branch must be a failure");
  labeled L =
      assemble(block1, n1, block2, n2, rxx6_reference().state, r6_labels);
  L.fuse2(L_B1 + 0, L_PORT1, first_fail);
  L.fuse2(L_B1 + 1, L_RETRY1, fusion_branch::success_plus);
  const double p = L.fuse2(L_B2 + 0, L_PORT2, fusion_branch::success_plus);
  const auto [c1, c2] = byproducts()[0][0];
  L.apply(L_OUT1, pauli_mat(c1));
  L.apply(L_OUT2, pauli_mat(c2));
  // Failed first attempt leaves a logical X on the shrunken input side.
  L.apply(L_OUT1, gates::pauli_x());
  // Side 2 succeeded on the first try, so its spare port joins the output
  // block; read it out computationally (outcome 0: no relabel needed).
  L.measure(L_RETRY2, 0);
  // canonical order with block1 rest starting at qubit 2 (qubit 0 consumed by
  // the failed attempt, qubit 1 by the retry).
  std::vector<int> want;
  for (int i = 0; i < n2 - 1; ++i) want.push_back(L_B2 + 1 + i);
  want.push_back(L_OUT2);
  want.push_back(L_OUT1);
  for (int i = 0; i < n1 - 2; ++i) want.push_back(L_B1 + 2 + i);
  std::vector<int> src_of_dst;
  for (int w : want) src_of_dst.push_back(L.pos(w));
  pure_state outs = permute_qubits(L.s, src_of_dst);
  outs.normalize();
  return {first_fail, fusion_branch::success_plus, p, std::move(outs), n1 - 1,
          n2};
}

std::vector<merge_result> merge_parity_blocks(const pure_state& block, int m) {
  const int n = block.num_qubits();
  if (m < 2) throw std::invalid_argument("ancilla needs m >= 2");
  std::vector<merge_result> out;
  for (fusion_branch fb :
       {fusion_branch::success_plus, fusion_branch::success_minus,
        fusion_branch::fail_01, fusion_branch::fail_10}) {
    labeled L;
    L.s = pure_state::tensor(block, parity_zero(m));
    for (int i = 0; i < m; ++i) L.lab.push_back(L_B2 + i);
    for (int i = 0; i < n; ++i) L.lab.push_back(L_B1 + i);
    const double p = L.fuse2(L_B1 + 0, L_B2 + 0, fb);
    L.s.normalize();
    merge_result r;
    r.fb = fb;
    r.probability = p;
    switch (fb) {
      case fusion_branch::success_plus:
        r.merged = true;
        break;
      case fusion_branch::success_minus:
        // Phase twist sits on the ancilla part: transversal Z there.
        for (int i = 1; i < m; ++i) L.apply(L_B2 + i, gates::pauli_z());
        r.merged = true;
        break;
      case fusion_branch::fail_01:
        // Block qubit read 0: content intact; ancilla leftover has odd
        // parity.
        r.merged = false;
        break;
      case fusion_branch::fail_10:
        // Block qubit read 1: logical X on the remainder.
        if (n >= 2) L.apply(L_B1 + 1, gates::pauli_x());
        r.merged = false;
        break;
    }
    r.state = std::move(L.s);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<reencode_result> z90_reencode(const pure_state& block,
                                          bool with_rotation) {
  const int n = block.num_qubits();
  const int m = n + 1;
  std::vector<reencode_result> out;
  auto base = [&] {
    labeled L;
    L.s = pure_state::tensor(block, parity_zero(m));
    for (int i = 0; i < m; ++i) L.lab.push_back(L_B2 + i);
    for (int i = 0; i < n; ++i) L.lab.push_back(L_B1 + i);
    if (with_rotation) L.apply(L_B1 + 0, gates::z_rot(90));
    return L;
  };
  for (fusion_branch fb :
       {fusion_branch::success_plus, fusion_branch::success_minus}) {
    labeled L0 = base();
    L0.fuse2(L_B1 + 0, L_B2 + 0, fb);
    for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 1)); ++mask) {
      labeled L = L0;
      for (int k = 0; k < n - 1; ++k)
        L.measure(L_B1 + 1 + k, int((mask >> k) & 1));
      const double p = L.s.norm2();
      L.s.normalize();
      const int parity = popcount(mask) & 1;
      char corr;
      if (with_rotation)
        corr = (fb == fusion_branch::success_plus) ? (parity ? 'Y' : 'I')
                                                   : (parity ? 'X' : 'Z');
      else
        corr = (fb == fusion_branch::success_plus) ? (parity ? 'X' : 'I')
                                                   : (parity ? 'Y' : 'Z');
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      apply_logical(L.s, all, corr);
      out.push_back({fb, parity, p, std::move(L.s), with_rotation, corr, -1});
    }
  }
  for (fusion_branch fb : {fusion_branch::fail_01, fusion_branch::fail_10}) {
    labeled L = base();
    const double p = L.fuse2(L_B1 + 0, L_B2 + 0, fb);
    L.s.normalize();
    reencode_result r;
    r.fb = fb;
    r.meas_parity = -1;
    r.probability = p;
    r.rotation_applied = false;
    if (fb == fusion_branch::fail_01) {
      r.correction = 'I';
      r.anc_remnant_parity = 1;
    } else {
      r.correction = 'X';
      r.anc_remnant_parity = 0;
      if (n >= 2) L.apply(L_B1 + 1, gates::pauli_x());
    }
    r.state = std::move(L.s);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<join_result> join_blocks(const pure_state& block_a, int na,
                                     const pure_state& block_b, int nb) {
  if (block_a.num_qubits() != na || block_b.num_qubits() != nb)
    throw std::invalid_argument("block size mismatch");
  pure_state s = pure_state::tensor(block_a, block_b);
  const int qa = nb;      // low qubit of block a
  const int qb = nb - 1;  // high qubit of block b
  s.apply1(qa, gates::hadamard());
  s.apply1(qb, gates::hadamard());
  auto outs = fuse_type1(s, qa, qb);
  std::vector<join_result> res;
  for (auto& o : outs) {
    if (o.branch != fusion_branch::success_plus &&
        o.branch != fusion_branch::success_minus)
      continue;
    const int kept = qa - 1;  // index shift after removing qb (< qa)
    o.state.apply1(kept, gates::hadamard());
    if (o.branch == fusion_branch::success_minus)
      o.state.apply1(kept, gates::pauli_x());
    res.push_back({o.branch, o.probability, std::move(o.state)});
  }
  return res;
}

}  // namespace pft
