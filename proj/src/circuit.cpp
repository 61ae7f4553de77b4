#include "pft/circuit.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace pft {

const char* gate_name(gk k) {
  switch (k) {
    case gk::prep0: return "prep0";
    case gk::prep_plus: return "prep+";
    case gk::h: return "h";
    case gk::cnot: return "cnot";
    case gk::cz: return "cz";
    case gk::xxp90: return "xxp90";
    case gk::measz: return "measz";
    case gk::measx: return "measx";
  }
  return "?";
}

int gate_arity(gk k) {
  switch (k) {
    case gk::cnot:
    case gk::cz:
    case gk::xxp90:
      return 2;
    default:
      return 1;
  }
}

bool gate_is_native(gk k) {
  switch (k) {
    case gk::prep0:
    case gk::h:
    case gk::xxp90:
    case gk::measz:
      return true;
    default:
      return false;
  }
}

void circuit::add(gk kind, int q0, int q1) {
  gate g;
  g.kind = kind;
  g.q0 = int16_t(q0);
  g.q1 = int16_t(q1);
  if (gate_arity(kind) == 2 && q1 < 0)
    throw std::invalid_argument("two-qubit gate needs q1");
  gates.push_back(g);
  nq = std::max({nq, q0 + 1, q1 + 1});
}

bool circuit::is_native() const {
  for (const auto& g : gates)
    if (!gate_is_native(g.kind)) return false;
  return true;
}

int circuit::num_layers() const {
  int m = -1;
  for (const auto& g : gates) m = std::max(m, g.t);
  return m + 1;
}

std::string circuit::dump() const {
  std::ostringstream os;
  for (const auto& g : gates) {
    os << g.t << ' ' << gate_name(g.kind) << ' ' << g.q0;
    if (gate_arity(g.kind) == 2) os << ' ' << g.q1;
    os << '\n';
  }
  return os.str();
}

circuit circuit::parse(std::istream& in) {
  circuit c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int t, q0, q1 = -1;
    std::string name;
    if (!(ls >> t >> name >> q0))
      throw std::runtime_error("bad circuit line: " + line);
    gk kind;
    bool found = false;
    for (gk k : {gk::prep0, gk::prep_plus, gk::h, gk::cnot, gk::cz, gk::xxp90,
                 gk::measz, gk::measx})
      if (name == gate_name(k)) {
        kind = k;
        found = true;
      }
    if (!found) throw std::runtime_error("unknown gate: " + name);
    if (gate_arity(kind) == 2 && !(ls >> q1))
      throw std::runtime_error("missing qubit: " + line);
    c.add(kind, q0, q1);
    c.gates.back().t = t;
  }
  return c;
}

void circuit::validate() const {
  enum state { untouched, live, measured };
  std::vector<state> st(nq, untouched);
  for (int q : external_inputs) {
    if (q < 0 || q >= nq) throw std::logic_error("bad external input");
    st[q] = live;
  }
  for (const auto& g : gates) {
    const int qs[2] = {g.q0, g.q1};
    const int arity = gate_arity(g.kind);
    const bool is_prep = (g.kind == gk::prep0 || g.kind == gk::prep_plus);
    const bool is_meas = (g.kind == gk::measz || g.kind == gk::measx);
    for (int i = 0; i < arity; ++i) {
      const int q = qs[i];
      if (q < 0 || q >= nq) throw std::logic_error("qubit out of range");
      if (is_prep) {
        if (st[q] != untouched)
          throw std::logic_error("double preparation of qubit " +
                                 std::to_string(q));
        st[q] = live;
      } else {
        if (st[q] != live)
          throw std::logic_error("use of unprepared or measured qubit " +
                                 std::to_string(q));
        if (is_meas) st[q] = measured;
      }
    }
  }
  std::vector<bool> is_output(nq, false);
  for (int q : outputs) is_output[q] = true;
  for (int q = 0; q < nq; ++q) {
    if (st[q] == live && !is_output[q])
      throw std::logic_error("qubit " + std::to_string(q) +
                             " neither measured nor an output");
    if (st[q] != live && is_output[q])
      throw std::logic_error("declared output " + std::to_string(q) +
                             " not live at the end");
  }
}

void circuit::assign_times(std::size_t online_start_index) {
  std::vector<int> avail(nq, 0);
  int offline_max = -1;
  int online_floor = -1;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    auto& g = gates[i];
    int t = avail[g.q0];
    if (gate_arity(g.kind) == 2) t = std::max(t, avail[g.q1]);
    if (i >= online_start_index) {
      if (online_floor < 0) online_floor = offline_max + 1;
      t = std::max(t, online_floor);
    }
    g.t = t;
    avail[g.q0] = t + 1;
    if (gate_arity(g.kind) == 2) avail[g.q1] = t + 1;
    if (i < online_start_index) offline_max = std::max(offline_max, t);
  }
}

void cancel_hadamard_pairs(circuit& c) {
  std::vector<bool> active(c.gates.size(), true);
  std::vector<std::vector<std::size_t>> stack(c.nq);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const gate& g = c.gates[i];
    if (g.kind == gk::h) {
      auto& s = stack[g.q0];
      if (!s.empty() && c.gates[s.back()].kind == gk::h) {
        active[s.back()] = false;
        active[i] = false;
        s.pop_back();
        continue;
      }
      s.push_back(i);
      continue;
    }
    stack[g.q0].push_back(i);
    if (gate_arity(g.kind) == 2) stack[g.q1].push_back(i);
  }
  std::vector<gate> kept;
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (active[i]) kept.push_back(c.gates[i]);
  c.gates = std::move(kept);
}

circuit convert_to_native(const circuit& c) {
  circuit out;
  out.nq = c.nq;
  out.external_inputs = c.external_inputs;
  out.outputs = c.outputs;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case gk::cnot:
        out.add(gk::h, g.q0);
        out.add(gk::xxp90, g.q0, g.q1);
        out.add(gk::h, g.q0);
        break;
      case gk::cz:
        out.add(gk::h, g.q1);
        out.add(gk::h, g.q0);
        out.add(gk::xxp90, g.q0, g.q1);
        out.add(gk::h, g.q0);
        out.add(gk::h, g.q1);
        break;
      case gk::prep_plus:
        out.add(gk::prep0, g.q0);
        out.add(gk::h, g.q0);
        break;
      case gk::measx:
        out.add(gk::h, g.q0);
        out.add(gk::measz, g.q0);
        break;
      default:
        out.add(g.kind, g.q0, g.q1);
    }
  }
  cancel_hadamard_pairs(out);
  return out;
}

}  // namespace pft
