#include "pft/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pft/rng.hpp"

namespace pft {
namespace {

// Static execution schedule: gates grouped by layer, plus the set of live
// but idle qubits per layer (those accrue memory noise).
struct schedule {
  const telecorrector* tc = nullptr;
  int layers = 0;
  int online_floor = 0;  // first online layer
  std::vector<std::vector<int>> gates_at;
  std::vector<std::vector<int>> idle_at;
};

schedule make_schedule(const telecorrector& tc) {
  schedule s;
  s.tc = &tc;
  const circuit& c = tc.native;
  s.layers = c.num_layers();
  if (tc.online_start >= c.gates.size())
    throw std::logic_error("gadget has no online phase");
  s.online_floor = c.gates[tc.online_start].t;

  s.gates_at.assign(s.layers, {});
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    s.gates_at[c.gates[i].t].push_back(int(i));

  std::vector<int> live_from(c.nq, -1), live_to(c.nq, -1);
  std::vector<std::vector<uint8_t>> busy(s.layers,
                                         std::vector<uint8_t>(c.nq, 0));
  for (const gate& g : c.gates) {
    busy[g.t][g.q0] = 1;
    if (gate_arity(g.kind) == 2) busy[g.t][g.q1] = 1;
    if (g.kind == gk::prep0) live_from[g.q0] = g.t;
    if (g.kind == gk::measz) live_to[g.q0] = g.t;
  }
  for (int q : c.external_inputs) live_from[q] = s.online_floor;
  for (int q : c.outputs) live_to[q] = s.layers - 1;

  s.idle_at.assign(s.layers, {});
  for (int q = 0; q < c.nq; ++q) {
    if (live_from[q] < 0 || live_to[q] < 0)
      throw std::logic_error("qubit with open live range");
    for (int t = live_from[q]; t <= live_to[q]; ++t)
      if (!busy[t][q]) s.idle_at[t].push_back(q);
  }
  return s;
}

struct frame {
  std::vector<uint8_t> x, z, loc;
  std::array<uint32_t, telecorrector::w_count> wflip{}, wloc{};
  void reset(int nq) {
    x.assign(nq, 0);
    z.assign(nq, 0);
    loc.assign(nq, 0);
    wflip.fill(0);
    wloc.fill(0);
  }
};

struct injected_faults {
  const gate_fault* at_gate = nullptr;
  const idle_fault* at_idle = nullptr;
};

void apply_frame_fault(frame& f, int q, char type) {
  switch (type) {
    case 'X': f.x[q] ^= 1; break;
    case 'Z': f.z[q] ^= 1; break;
    case 'L': f.loc[q] = 1; break;
    default: throw std::invalid_argument("fault type must be X, Z or L");
  }
}

// Every potential fault site consumes its uniforms unconditionally so the
// draw count per sample is fixed: results stay bitwise identical across
// worker splits and monotone under rate changes.
void draw_single(frame& f, int q, const level1_rates& r, bool online,
                 rng& g) {
  if (online && g.uniform() < r.located) f.loc[q] = 1;
  if (g.uniform() < r.x_unlocated) f.x[q] ^= 1;
  if (g.uniform() < r.z_unlocated) f.z[q] ^= 1;
}

class engine {
 public:
  engine(const schedule& s, const noise_table& nt, const mc_params& mp)
      : s_(s), tc_(*s.tc), c_(s.tc->native), nt_(nt), mp_(mp) {}

  // Runs one production attempt + online phase for a sample; g may be null
  // (noiseless single-fault mode, no retries).
  outcome_class run(rng* g, const injected_faults& fault) {
    frame f;
    bool pass = false;
    const int budget = g ? mp_.max_production_retries : 1;
    for (int attempt = 0; attempt < budget && !pass; ++attempt) {
      f.reset(c_.nq);
      run_phase(f, g, fault, 0, s_.online_floor);
      pass = offline_accept(f);
    }
    outcome_class out;
    if (!pass) {
      out.rejected = true;
      out.located = true;  // the factory heralds the discard
      return out;
    }
    input_draws(f, g, fault);
    run_phase(f, g, fault, s_.online_floor, s_.layers);
    classify(f, out);
    return out;
  }

 private:
  const schedule& s_;
  const telecorrector& tc_;
  const circuit& c_;
  const noise_table& nt_;
  const mc_params& mp_;

  const level1_rates& rates_for(gk kind) const {
    switch (kind) {
      case gk::prep0: return nt_.prep;
      case gk::h: return nt_.h;
      case gk::xxp90: return nt_.xx;
      case gk::measz: return nt_.meas;
      default: throw std::logic_error("non-native gate in schedule");
    }
  }

  void run_phase(frame& f, rng* g, const injected_faults& fault, int t_begin,
                 int t_end) {
    for (int t = t_begin; t < t_end; ++t) {
      if (fault.at_idle && fault.at_idle->layer == t)
        apply_frame_fault(f, fault.at_idle->qubit, fault.at_idle->type);
      if (g)
        for (int q : s_.idle_at[t])
          draw_single(f, q, nt_.mem, t >= s_.online_floor, *g);
      for (int gi : s_.gates_at[t]) apply_gate(f, g, fault, std::size_t(gi));
    }
  }

  void apply_gate(frame& f, rng* g, const injected_faults& fault,
                  std::size_t gi) {
    const gate& gt = c_.gates[gi];
    const bool online = gt.t >= s_.online_floor;
    switch (gt.kind) {
      case gk::prep0:
        f.x[gt.q0] = f.z[gt.q0] = f.loc[gt.q0] = 0;
        if (g) draw_single(f, gt.q0, nt_.prep, online, *g);
        break;
      case gk::h:
        std::swap(f.x[gt.q0], f.z[gt.q0]);
        if (g) draw_single(f, gt.q0, nt_.h, online, *g);
        break;
      case gk::xxp90: {
        // Conjugation: X_a -> X_a Z_b and X_b -> X_b Z_a; Z stays put.
        const uint8_t xa = f.x[gt.q0], xb = f.x[gt.q1];
        f.x[gt.q0] = uint8_t(xa ^ f.z[gt.q1]);
        f.x[gt.q1] = uint8_t(xb ^ f.z[gt.q0]);
        if (mp_.located_flags_partner) {
          // Pessimistic variant: a heralded loss voids the joint gate.
          const uint8_t both = uint8_t(f.loc[gt.q0] | f.loc[gt.q1]);
          f.loc[gt.q0] = f.loc[gt.q1] = both;
        }
        if (g) {
          const level1_rates& r = nt_.xx;
          if (online) {
            const bool l0 = g->uniform() < r.located;
            const bool l1 = g->uniform() < r.located;
            if (mp_.located_flags_partner) {
              if (l0 || l1) f.loc[gt.q0] = f.loc[gt.q1] = 1;
            } else {
              if (l0) f.loc[gt.q0] = 1;
              if (l1) f.loc[gt.q1] = 1;
            }
          }
          if (g->uniform() < r.x_unlocated) f.x[gt.q0] ^= 1;
          if (g->uniform() < r.z_unlocated) f.z[gt.q0] ^= 1;
          if (g->uniform() < r.x_unlocated) f.x[gt.q1] ^= 1;
          if (g->uniform() < r.z_unlocated) f.z[gt.q1] ^= 1;
        }
        break;
      }
      case gk::measz: {
        if (g) draw_single(f, gt.q0, nt_.meas, online, *g);
        if (fault.at_gate && fault.at_gate->gate_index == gi) {
          // Faults on a readout act on its record.
          const gate_fault& gf = *fault.at_gate;
          if (gf.type == 'X') f.x[gt.q0] ^= 1;
          if (gf.type == 'L') f.loc[gt.q0] = 1;
        }
        const int w = tc_.word_of_qubit[gt.q0];
        const int b = tc_.bit_of_qubit[gt.q0];
        f.wflip[w] |= uint32_t(f.x[gt.q0]) << b;
        f.wloc[w] |= uint32_t(f.loc[gt.q0]) << b;
        return;  // gate fault already folded into the record
      }
      default:
        throw std::logic_error("non-native gate in schedule");
    }
    if (fault.at_gate && fault.at_gate->gate_index == gi) {
      const gate_fault& gf = *fault.at_gate;
      const int q = gf.which == 0 ? gt.q0 : gt.q1;
      if (q < 0) throw std::invalid_argument("fault on absent operand");
      apply_frame_fault(f, q, gf.type);
    }
  }

  void input_draws(frame& f, rng* g, const injected_faults& fault) {
    for (int q : c_.external_inputs) {
      if (g) draw_single(f, q, nt_.input, true, *g);
      if (fault.at_idle && fault.at_idle->layer == -1 &&
          fault.at_idle->qubit == q)
        apply_frame_fault(f, q, fault.at_idle->type);
    }
  }

  bool offline_accept(const frame& f) const {
    const css_code& code = *tc_.code;
    static constexpr telecorrector::word_id kChecks[] = {
        telecorrector::w_q1, telecorrector::w_q2, telecorrector::w_v1,
        telecorrector::w_v2, telecorrector::w_p1, telecorrector::w_p2};
    for (auto w : kChecks) {
      if (f.wloc[w] != 0) return false;  // loss herald inside the factory
      const uint32_t word = f.wflip[w];
      if (code.syndrome(word) != 0) return false;
      if (std::popcount(word) & 1) return false;
    }
    return true;
  }

  void classify(frame& f, outcome_class& out) const {
    const css_code& code = *tc_.code;
    const uint32_t bell_erasure =
        f.wloc[telecorrector::w_mz] | f.wloc[telecorrector::w_mx];
    const class_decode dz =
        decode_word_class(code, f.wflip[telecorrector::w_mz], bell_erasure);
    const class_decode dx =
        decode_word_class(code, f.wflip[telecorrector::w_mx], bell_erasure);
    if (dz.heralded || dx.heralded) {
      out.located = true;
      return;
    }
    // Teleportation byproducts: the Z-readout class commands a logical X on
    // the output, the X-readout class a logical Z.
    for (int i = 0; i < code.n; ++i) {
      if (!((code.logical_support >> i) & 1)) continue;
      f.x[tc_.R2[i]] ^= uint8_t(dz.cls);
      f.z[tc_.R2[i]] ^= uint8_t(dx.cls);
    }
    uint32_t xw = 0, zw = 0, out_erasure = 0;
    for (int i = 0; i < code.n; ++i) {
      xw |= uint32_t(f.x[tc_.R2[i]]) << i;
      zw |= uint32_t(f.z[tc_.R2[i]]) << i;
      out_erasure |= uint32_t(f.loc[tc_.R2[i]]) << i;
    }
    const class_decode rx = decode_word_class(code, xw, out_erasure);
    const class_decode rz = decode_word_class(code, zw, out_erasure);
    if (rx.heralded || rz.heralded) {
      out.located = true;
      return;
    }
    out.x = rx.cls != 0;
    out.z = rz.cls != 0;
  }
};

}  // namespace

double sim_estimate::se(double p) const {
  if (samples <= 0) return 0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / double(samples));
}

sim_estimate simulate_telecorrector(const telecorrector& tc,
                                    const noise_table& nt,
                                    const mc_params& mp) {
  if (mp.samples <= 0) throw std::invalid_argument("samples must be positive");
  if (mp.workers <= 0) throw std::invalid_argument("workers must be positive");
  const schedule s = make_schedule(tc);

  struct counts {
    long long located = 0, x = 0, z = 0;
  };
  auto run_range = [&](long long lo, long long hi, counts& c) {
    engine e(s, nt, mp);
    for (long long i = lo; i < hi; ++i) {
      rng g(mp.seed, uint64_t(i));
      const outcome_class oc = e.run(&g, {});
      if (oc.located) {
        ++c.located;
      } else {
        if (oc.x) ++c.x;
        if (oc.z) ++c.z;
      }
    }
  };

  std::vector<counts> per(std::size_t(mp.workers));
  if (mp.workers == 1) {
    run_range(0, mp.samples, per[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < mp.workers; ++w) {
      const long long lo = mp.samples * w / mp.workers;
      const long long hi = mp.samples * (w + 1) / mp.workers;
      pool.emplace_back(run_range, lo, hi, std::ref(per[std::size_t(w)]));
    }
    for (auto& t : pool) t.join();
  }

  sim_estimate est;
  est.samples = mp.samples;
  est.seed = mp.seed;
  for (const counts& c : per) {
    est.located_count += c.located;
    est.x_count += c.x;
    est.z_count += c.z;
  }
  return est;
}

outcome_class classify_with_fault(const telecorrector& tc,
                                  const gate_fault& f) {
  const schedule s = make_schedule(tc);
  if (f.gate_index >= tc.native.gates.size())
    throw std::invalid_argument("fault gate index out of range");
  mc_params mp;
  noise_table nt{};
  engine e(s, nt, mp);
  injected_faults inj;
  inj.at_gate = &f;
  return e.run(nullptr, inj);
}

outcome_class classify_with_fault(const telecorrector& tc,
                                  const idle_fault& f) {
  const schedule s = make_schedule(tc);
  mc_params mp;
  noise_table nt{};
  engine e(s, nt, mp);
  injected_faults inj;
  inj.at_idle = &f;
  return e.run(nullptr, inj);
}

outcome_class classify_noiseless(const telecorrector& tc) {
  const schedule s = make_schedule(tc);
  mc_params mp;
  noise_table nt{};
  engine e(s, nt, mp);
  return e.run(nullptr, {});
}

}  // namespace pft
