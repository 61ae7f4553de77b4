#include <complex>
#include <sstream>

#include "doctest.h"
#include "pft/fusion.hpp"
#include "pft/oracle_suite.hpp"
#include "pft/parity_ops.hpp"
#include "pft/pure_state.hpp"

using namespace pft;

TEST_CASE("full state-level cross-check suite passes") {
  std::ostringstream log;
  const oracle_report r = run_oracle_suite(log);
  INFO(log.str());
  CHECK(r.failed == 0);
  CHECK(r.passed == (int)oracle_checks().size());
  CHECK(r.passed >= 12);
  CHECK(oracle_random_state_count() >= 100);
}

TEST_CASE("bell pair is the two-qubit ghz state") {
  CHECK(bell_pair().fidelity(ghz_state(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parity blocks carry one logical qubit") {
  const cplx a(0.6, 0.0), b(0.0, 0.8);
  for (int n : {1, 2, 4, 5}) {
    pure_state s = parity_state(n, a, b);
    CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
    const logical_amplitudes la = read_logical(s);
    CHECK(la.residual == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::abs(la.alpha) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(std::abs(la.beta) == doctest::Approx(0.8).epsilon(1e-10));
    // Round-trip: re-encoding the readout reproduces the block.
    CHECK(parity_state(n, la.alpha, la.beta).fidelity(s) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("logical paulis act as expected on a block") {
  const cplx a(0.48, 0.36), b(0.64, -0.48);
  std::vector<int> qs{0, 1, 2, 3};
  pure_state s = parity_state(4, a, b);

  pure_state sx = s;
  apply_logical(sx, qs, 'X');
  CHECK(sx.fidelity(parity_state(4, b, a)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  apply_logical(sx, qs, 'X');
  CHECK(sx.fidelity(s) == doctest::Approx(1.0).epsilon(1e-10));

  pure_state sz = s;
  apply_logical(sz, qs, 'Z');
  CHECK(sz.fidelity(parity_state(4, a, -b)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entangling resource: fusion build matches references") {
  const rxx_resource r4 = rxx4_built();
  CHECK(r4.bells == 4);
  CHECK(r4.fusions == 3);
  CHECK(r4.state.fidelity(rxx4_reference().state) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r4.state.fidelity(rxx4_closed_form()) ==
        doctest::Approx(1.0).epsilon(1e-10));

  const rxx_resource r6 = rxx6_built();
  CHECK(r6.bells == 6);
  CHECK(r6.fusions == 5);
  CHECK(r6.state.fidelity(rxx6_reference().state) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gate teleportation success branches") {
  const cplx a1(0.8, 0.0), b1(0.0, 0.6);
  const cplx a2(1 / std::sqrt(2.0), 0.0), b2(-1 / std::sqrt(2.0), 0.0);
  const pure_state s1 = parity_state(3, a1, b1);
  const pure_state s2 = parity_state(2, a2, b2);
  const auto outs = teleport_xx90(s1, 3, s2, 2);
  REQUIRE(outs.size() == 4);
  double total = 0;
  for (const auto& o : outs) {
    total += o.probability;
    CHECK(o.state.num_qubits() == o.n1 + o.n2);
    CHECK(o.state.norm2() == doctest::Approx(1.0).epsilon(1e-10));
  }
  // Two independent fusions, each heralding success half the time.
  CHECK(total == doctest::Approx(0.25).epsilon(1e-10));
  // All corrected branches agree with each other.
  for (std::size_t i = 1; i < outs.size(); ++i)
    CHECK(outs[i].state.fidelity(outs[0].state) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("type-II fusion branch bookkeeping on a bell pair") {
  // Fusing the two halves of (|00>+|11>)/sqrt(2) always heralds success_plus.
  const auto outs = fuse_type2(bell_pair(), 1, 0);
  double p_plus = 0, p_other = 0;
  for (const auto& o : outs) {
    if (o.branch == fusion_branch::success_plus)
      p_plus += o.probability;
    else
      p_other += o.probability;
  }
  CHECK(p_plus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p_other == doctest::Approx(0.0).epsilon(1e-12));
}
