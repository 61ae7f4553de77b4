#include <cmath>

#include "doctest.h"
#include "pft/rates.hpp"
#include "pft/walk.hpp"

using namespace pft;

namespace {

// Independent reference for the staged-re-encoding loss rate: attempt j
// succeeds with probability 2^-j and survives e(j) loss locations.
double z90_located_reference(double gamma) {
  double keep = 0;
  for (int j = 1; j <= exponents::z90_attempts; ++j)
    keep += std::pow(2.0, -j) *
            std::pow(1.0 - gamma, z90_attempt_loss_exponent(j));
  return 1.0 - keep;
}

}  // namespace

TEST_CASE("zero-noise floors are exact") {
  const physical_noise off{0.0, 0.0};
  const level1_rates sp = rates_source_prep(off);
  const level1_rates z90 = rates_z90(off);
  const level1_rates xx = rates_xx90(off);
  const level1_rates mem = rates_memory(off);
  const level1_rates meas = rates_measurement(off);

  CHECK(z90.located == 0.0078125);  // 2^-7, exactly representable
  CHECK(xx.located == 1.0 - walk_success(7));
  CHECK(sp.located == 0.0);
  CHECK(sp.x_unlocated == 0.0);
  CHECK(sp.z_unlocated == 0.0);
  CHECK(z90.x_unlocated == 0.0);
  CHECK(z90.z_unlocated == 0.0);
  CHECK(xx.x_unlocated == 0.0);
  CHECK(xx.z_unlocated == 0.0);
  CHECK(mem.located == 0.0);
  CHECK(mem.x_unlocated == 0.0);
  CHECK(mem.z_unlocated == 0.0);
  CHECK(meas.located == 0.0);
  CHECK(meas.x_unlocated == 0.0);
  CHECK(meas.z_unlocated == 0.0);
}

TEST_CASE("frozen reference values") {
  CHECK(rates_z90({1e-3, 0}).located ==
        doctest::Approx(0.030135601043203453).epsilon(1e-12));
  CHECK(rates_xx90({1e-3, 0}).located ==
        doctest::Approx(0.0619700121204505).epsilon(1e-12));
  CHECK(rates_source_prep({0, 1e-4}).x_unlocated ==
        doctest::Approx(0.002729692045407739).epsilon(1e-12));
}

TEST_CASE("rates agree with independent closed forms") {
  const physical_noise p{7e-4, 3e-5};
  const double ex = p.eta_x(), ez = p.eta_z();

  CHECK(rates_source_prep(p).located ==
        doctest::Approx(1.0 - std::pow(1.0 - p.gamma,
                                       exponents::source_prep_loss))
            .epsilon(1e-12));
  CHECK(rates_source_prep(p).x_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ex, exponents::source_prep_x))
            .epsilon(1e-12));
  CHECK(rates_source_prep(p).z_unlocated == 0.0);

  CHECK(rates_z90(p).located ==
        doctest::Approx(z90_located_reference(p.gamma)).epsilon(1e-12));
  CHECK(rates_z90(p).x_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ex, exponents::z90_x))
            .epsilon(1e-12));
  CHECK(rates_z90(p).z_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ez, exponents::z90_z))
            .epsilon(1e-12));

  CHECK(rates_xx90(p).located ==
        doctest::Approx(1.0 - walk_success(7) *
                                  std::pow(1.0 - p.gamma,
                                           exponents::xx90_loss))
            .epsilon(1e-12));
  CHECK(rates_xx90(p).x_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ex, exponents::xx90_x))
            .epsilon(1e-12));
  CHECK(rates_xx90(p).z_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ez, exponents::xx90_z))
            .epsilon(1e-12));

  CHECK(rates_memory(p).located ==
        doctest::Approx(1.0 - std::pow(1.0 - p.gamma,
                                       exponents::memory_loss))
            .epsilon(1e-12));
  CHECK(rates_measurement(p).x_unlocated ==
        doctest::Approx(1.0 - std::pow(1.0 - ex, exponents::meas_x))
            .epsilon(1e-12));
  CHECK(rates_measurement(p).z_unlocated == 0.0);
}

TEST_CASE("staged re-encoding exponents shrink with the block") {
  // e(j) = j(1+j)/2 + 3j + (1+j)(7-j): frozen against the derivation.
  CHECK(z90_attempt_loss_exponent(1) == 16);
  CHECK(z90_attempt_loss_exponent(7) == 49);
  for (int j = 1; j < 7; ++j)
    CHECK(z90_attempt_loss_exponent(j) ==
          j * (1 + j) / 2 + 3 * j + (1 + j) * (7 - j));
}

TEST_CASE("every rate is monotone in gamma and eta") {
  using rate_fn = level1_rates (*)(const physical_noise&);
  const rate_fn fns[] = {rates_source_prep, rates_z90, rates_xx90,
                         rates_memory, rates_measurement};
  const double gs[] = {0, 1e-4, 5e-4, 2e-3, 8e-3};
  const double es[] = {0, 1e-6, 1e-5, 1e-4, 5e-4};
  for (rate_fn f : fns) {
    for (double e : es) {
      level1_rates prev = f({gs[0], e});
      for (int i = 1; i < 5; ++i) {
        const level1_rates cur = f({gs[i], e});
        CHECK(cur.located >= prev.located);
        CHECK(cur.x_unlocated >= prev.x_unlocated);
        CHECK(cur.z_unlocated >= prev.z_unlocated);
        prev = cur;
      }
    }
    for (double g : gs) {
      level1_rates prev = f({g, es[0]});
      for (int i = 1; i < 5; ++i) {
        const level1_rates cur = f({g, es[i]});
        CHECK(cur.located >= prev.located);
        CHECK(cur.x_unlocated >= prev.x_unlocated);
        CHECK(cur.z_unlocated >= prev.z_unlocated);
        prev = cur;
      }
    }
  }
}

TEST_CASE("first-order slopes at zero match the location exponents") {
  const double eps = 1e-8;
  CHECK(rates_source_prep({eps, 0}).located / eps ==
        doctest::Approx(exponents::source_prep_loss).epsilon(1e-6));
  CHECK(rates_memory({eps, 0}).located / eps ==
        doctest::Approx(exponents::memory_loss).epsilon(1e-6));
  CHECK(rates_measurement({eps, 0}).located / eps ==
        doctest::Approx(exponents::meas_loss).epsilon(1e-6));
  // Unlocated rates scale with the 2/3 depolarisation marginal.
  const double ex = physical_noise{0, eps}.eta_x();
  CHECK(rates_z90({0, eps}).x_unlocated / ex ==
        doctest::Approx(exponents::z90_x).epsilon(1e-6));
  CHECK(rates_xx90({0, eps}).z_unlocated / ex ==
        doctest::Approx(exponents::xx90_z).epsilon(1e-6));
}

TEST_CASE("noise tables wire the operation rates consistently") {
  const physical_noise p{1.3e-3, 2.1e-5};
  const noise_table t = level1_noise(p);
  const level1_rates z90 = rates_z90(p), xx = rates_xx90(p);

  CHECK(t.h.located == z90.located);
  CHECK(t.h.x_unlocated == z90.x_unlocated);
  CHECK(t.h.z_unlocated == z90.z_unlocated);
  CHECK(t.xx.located == xx.located);
  CHECK(t.input.located == xx.located);
  CHECK(t.input.x_unlocated == xx.x_unlocated);
  CHECK(t.mem.located == rates_memory(p).located);
  CHECK(t.meas.x_unlocated == rates_measurement(p).x_unlocated);
  CHECK(t.prep.x_unlocated == rates_source_prep(p).x_unlocated);

  const level1_rates u{0.125, 0.25, 0.5};
  const noise_table ut = uniform_noise(u);
  for (const level1_rates* op :
       {&ut.prep, &ut.h, &ut.xx, &ut.mem, &ut.meas, &ut.input}) {
    CHECK(op->located == 0.125);
    CHECK(op->x_unlocated == 0.25);
    CHECK(op->z_unlocated == 0.5);
  }
}

TEST_CASE("optimal block size tracks the loss rate") {
  CHECK(optimal_code_size({1e-3, 0}) == 9);
  const int n24 = optimal_code_size({2.4e-3, 0});
  CHECK(n24 >= 7);
  CHECK(n24 <= 8);
  // Heavier loss favours smaller blocks.
  CHECK(optimal_code_size({8e-3, 0}) <= optimal_code_size({5e-4, 0}));
}
