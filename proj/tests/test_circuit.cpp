#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "pft/circuit.hpp"
#include "pft/linalg.hpp"
#include "pft/pure_state.hpp"

using namespace pft;

namespace {

// Applies the unitary part of a circuit to a state (no prep/measure).
pure_state run_unitary(const circuit& c, pure_state s) {
  for (const gate& g : c.gates) {
    switch (g.kind) {
      case gk::h: s.apply1(g.q0, gates::hadamard()); break;
      case gk::xxp90: s.apply2(g.q0, g.q1, gates::xxp90()); break;
      case gk::cnot: s.apply2(g.q0, g.q1, gates::cnot()); break;
      case gk::cz: s.apply2(g.q0, g.q1, gates::cz()); break;
      default: REQUIRE(false);
    }
  }
  return s;
}

pure_state random_two_qubit_state(unsigned seed) {
  std::mt19937 g(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> a(4);
  for (auto& v : a) v = cplx(nd(g), nd(g));
  pure_state s = pure_state::from_amplitudes(2, std::move(a));
  s.normalize();
  return s;
}

}  // namespace

TEST_CASE("controlled gates reduce to the dressed entangling gate") {
  const std::tuple<gk, int, int> cases[] = {
      {gk::cnot, 0, 1}, {gk::cnot, 1, 0}, {gk::cz, 0, 1}, {gk::cz, 1, 0}};
  for (unsigned seed = 1; seed <= 8; ++seed) {
    const pure_state in = random_two_qubit_state(seed);
    for (auto [kind, c, t] : cases) {
      circuit orig;
      orig.nq = 2;
      orig.add(kind, c, t);
      const circuit native = convert_to_native(orig);
      CHECK(native.is_native());
      const pure_state a = run_unitary(orig, in);
      const pure_state b = run_unitary(native, in);
      CHECK(a.fidelity(b) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("conversion rewrites preps and measurements structurally") {
  circuit c;
  c.add(gk::prep_plus, 0);
  c.add(gk::measx, 0);
  const circuit n = convert_to_native(c);
  CHECK(n.is_native());
  // prep+ -> prep0,h and measx -> h,measz; the inner h pair cancels.
  REQUIRE(n.gates.size() == 2);
  CHECK(n.gates[0].kind == gk::prep0);
  CHECK(n.gates[1].kind == gk::measz);
}

TEST_CASE("adjacent self-inverse pairs cancel, separated ones do not") {
  circuit c;
  c.nq = 2;
  c.add(gk::h, 0);
  c.add(gk::h, 0);
  c.add(gk::h, 1);
  c.add(gk::xxp90, 0, 1);
  c.add(gk::h, 1);
  cancel_hadamard_pairs(c);
  REQUIRE(c.gates.size() == 3);  // the pair on qubit 0 is gone
  CHECK(c.gates[0].kind == gk::h);
  CHECK(c.gates[0].q0 == 1);
  CHECK(c.gates[1].kind == gk::xxp90);
  CHECK(c.gates[2].kind == gk::h);
}

TEST_CASE("text dump round-trips through parse") {
  circuit c;
  c.add(gk::prep0, 0);
  c.add(gk::prep0, 1);
  c.add(gk::h, 0);
  c.add(gk::xxp90, 0, 1);
  c.add(gk::measz, 0);
  c.add(gk::measz, 1);
  c.assign_times();
  std::istringstream in(c.dump());
  const circuit r = circuit::parse(in);
  REQUIRE(r.gates.size() == c.gates.size());
  CHECK(r.nq == c.nq);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(r.gates[i].kind == c.gates[i].kind);
    CHECK(r.gates[i].q0 == c.gates[i].q0);
    CHECK(r.gates[i].q1 == c.gates[i].q1);
    CHECK(r.gates[i].t == c.gates[i].t);
  }
  std::istringstream bad("0 frobnicate 3\n");
  CHECK_THROWS_AS(circuit::parse(bad), std::runtime_error);
}

TEST_CASE("validation rejects malformed qubit lifecycles") {
  {
    circuit c;  // double preparation
    c.add(gk::prep0, 0);
    c.add(gk::prep0, 0);
    c.add(gk::measz, 0);
    CHECK_THROWS_AS(c.validate(), std::logic_error);
  }
  {
    circuit c;  // gate on a never-prepared qubit
    c.nq = 1;
    c.add(gk::h, 0);
    c.add(gk::measz, 0);
    CHECK_THROWS_AS(c.validate(), std::logic_error);
  }
  {
    circuit c;  // use after measurement
    c.add(gk::prep0, 0);
    c.add(gk::measz, 0);
    c.add(gk::h, 0);
    CHECK_THROWS_AS(c.validate(), std::logic_error);
  }
  {
    circuit c;  // live qubit neither measured nor declared an output
    c.add(gk::prep0, 0);
    CHECK_THROWS_AS(c.validate(), std::logic_error);
  }
  {
    circuit c;  // declared output already consumed
    c.add(gk::prep0, 0);
    c.add(gk::measz, 0);
    c.outputs = {0};
    CHECK_THROWS_AS(c.validate(), std::logic_error);
  }
  {
    circuit c;  // well-formed: external input flows to an output
    c.nq = 2;
    c.external_inputs = {0};
    c.add(gk::prep0, 1);
    c.add(gk::xxp90, 0, 1);
    c.add(gk::measz, 1);
    c.outputs = {0};
    CHECK_NOTHROW(c.validate());
  }
}

TEST_CASE("layer assignment is greedy and respects the online barrier") {
  circuit c;
  c.add(gk::prep0, 0);
  c.add(gk::prep0, 1);
  c.add(gk::h, 0);
  c.add(gk::xxp90, 0, 1);  // first online gate
  c.add(gk::measz, 0);
  c.add(gk::measz, 1);
  c.assign_times(3);

  // Offline part packs as soon as possible.
  CHECK(c.gates[0].t == 0);
  CHECK(c.gates[1].t == 0);
  CHECK(c.gates[2].t == 1);
  // Online gates start strictly after every offline layer.
  for (std::size_t i = 3; i < c.gates.size(); ++i) CHECK(c.gates[i].t >= 2);
  CHECK(c.gates[3].t == 2);
  CHECK(c.gates[4].t == 3);
  CHECK(c.gates[5].t == 3);
  CHECK(c.num_layers() == 4);

  // No layer touches the same qubit twice.
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    for (std::size_t j = i + 1; j < c.gates.size(); ++j) {
      if (c.gates[i].t != c.gates[j].t) continue;
      const int a[2] = {c.gates[i].q0, c.gates[i].q1};
      const int b[2] = {c.gates[j].q0, c.gates[j].q1};
      for (int qa : a)
        for (int qb : b)
          if (qa >= 0 && qb >= 0) CHECK(qa != qb);
    }
}
