#include "pft/telecorrector.hpp"

#include <stdexcept>

namespace pft {
namespace {

void encode_zero(circuit& c, const css_code& code, const std::vector<int>& b) {
  std::vector<bool> seeded(code.n, false);
  for (int s : code.seeds) seeded[s] = true;
  for (int i = 0; i < code.n; ++i)
    c.add(seeded[i] ? gk::prep_plus : gk::prep0, b[i]);
  for (const auto& [ctl, tgt] : code.encode_cnots)
    c.add(gk::cnot, b[ctl], b[tgt]);
}

}  // namespace

telecorrector telecorrector::build(const css_code& code) {
  telecorrector t;
  t.code = &code;
  const int n = code.n;
  auto block = [&](int k) {
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) b[i] = k * n + i;
    return b;
  };
  t.D = block(0);
  t.R1 = block(1);
  t.R2 = block(2);
  t.V1 = block(3);
  t.V2 = block(4);
  t.P1 = block(5);
  t.P2 = block(6);
  t.Q1 = block(7);
  t.Q2 = block(8);

  circuit off;
  off.nq = 9 * n;
  for (const auto* b : {&t.R1, &t.R2, &t.V1, &t.V2, &t.P1, &t.P2, &t.Q1,
                        &t.Q2})
    encode_zero(off, code, *b);

  t.word_of_qubit.assign(9 * n, -1);
  t.bit_of_qubit.assign(9 * n, -1);
  auto mark = [&](const std::vector<int>& b, int w) {
    for (int i = 0; i < n; ++i) {
      t.word_of_qubit[b[i]] = w;
      t.bit_of_qubit[b[i]] = i;
    }
  };

  // Certify each P block's preparation with its Q block, then move P into
  // the dual frame for the Z-sector check.
  const std::vector<int>* Qs[2] = {&t.Q1, &t.Q2};
  const std::vector<int>* Ps[2] = {&t.P1, &t.P2};
  const std::vector<int>* Vs[2] = {&t.V1, &t.V2};
  const std::vector<int>* Rs[2] = {&t.R1, &t.R2};
  for (int k = 0; k < 2; ++k) {
    const auto &Q = *Qs[k], &P = *Ps[k];
    for (int i = 0; i < n; ++i) off.add(gk::h, Q[i]);
    for (int i = 0; i < n; ++i) off.add(gk::cnot, Q[i], P[i]);
    for (int i = 0; i < n; ++i) off.add(gk::measx, Q[i]);
    for (int i = 0; i < n; ++i) off.add(gk::h, P[i]);
    mark(Q, k == 0 ? w_q1 : w_q2);
  }
  // X-sector check first, then the Z-sector check so that any phase noise
  // dumped back from the X-check ancilla is still caught.
  for (int k = 0; k < 2; ++k) {
    const auto &R = *Rs[k], &V = *Vs[k], &P = *Ps[k];
    for (int i = 0; i < n; ++i) off.add(gk::cnot, R[i], V[i]);
    for (int i = 0; i < n; ++i) off.add(gk::measz, V[i]);
    for (int i = 0; i < n; ++i) off.add(gk::cnot, P[i], R[i]);
    for (int i = 0; i < n; ++i) off.add(gk::measx, P[i]);
    mark(V, k == 0 ? w_v1 : w_v2);
    mark(P, k == 0 ? w_p1 : w_p2);
  }
  // Logical Bell pair between the two verified blocks, pre-rotated on the
  // measured half: with H applied to R1 in the factory, the online joint
  // rotation plus two computational readouts form a complete twisted-basis
  // Bell measurement (D record -> Z byproduct, R1 record -> X byproduct), so
  // nothing but the entangling gate and readouts sits on the online path.
  for (int i = 0; i < n; ++i) off.add(gk::h, t.R2[i]);
  for (int i = 0; i < n; ++i) off.add(gk::cnot, t.R2[i], t.R1[i]);
  for (int i = 0; i < n; ++i) off.add(gk::h, t.R1[i]);

  circuit on;
  on.nq = 9 * n;
  for (int i = 0; i < n; ++i) on.add(gk::xxp90, t.D[i], t.R1[i]);
  for (int i = 0; i < n; ++i) on.add(gk::measz, t.D[i]);
  for (int i = 0; i < n; ++i) on.add(gk::measz, t.R1[i]);
  mark(t.D, w_mx);
  mark(t.R1, w_mz);

  circuit off_native = convert_to_native(off);
  circuit on_native = convert_to_native(on);
  t.native.nq = 9 * n;
  t.native.gates = off_native.gates;
  t.online_start = t.native.gates.size();
  t.native.gates.insert(t.native.gates.end(), on_native.gates.begin(),
                        on_native.gates.end());
  t.native.external_inputs = t.D;
  t.native.outputs = t.R2;
  t.native.validate();
  t.native.assign_times(t.online_start);
  if (!t.native.is_native()) throw std::logic_error("conversion incomplete");
  return t;
}

std::array<int, 4> telecorrector::gate_counts() const {
  std::array<int, 4> c{};
  for (const auto& g : native.gates) {
    switch (g.kind) {
      case gk::prep0: ++c[0]; break;
      case gk::h: ++c[1]; break;
      case gk::xxp90: ++c[2]; break;
      case gk::measz: ++c[3]; break;
      default: throw std::logic_error("non-native gate");
    }
  }
  return c;
}

int telecorrector::online_layers() const {
  int first = -1, last = -1;
  for (std::size_t i = online_start; i < native.gates.size(); ++i) {
    const int tt = native.gates[i].t;
    if (first < 0 || tt < first) first = tt;
    if (tt > last) last = tt;
  }
  return last - first + 1;
}

}  // namespace pft
