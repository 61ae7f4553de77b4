#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "pft/walk.hpp"

using namespace pft;

namespace {

uint64_t binom_u64(int t, int k) {
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * uint64_t(t - k + i) / uint64_t(i);
  return r;
}

}  // namespace

TEST_CASE("path counts match hand-enumerated small cases") {
  CHECK(walk_paths(1, 1) == 1);
  CHECK(walk_paths(1, 3) == 1);   // down-up-down is the only return
  CHECK(walk_paths(2, 2) == 1);
  CHECK(walk_paths(2, 4) == 2);
  CHECK(walk_paths(2, 5) == 0);   // parity mismatch
  CHECK(walk_paths(3, 5) == 3);
  CHECK(walk_paths(5, 9) == 20);
  CHECK(walk_paths(7, 7) == 1);
  CHECK(walk_paths(7, 9) == 7);
  CHECK(walk_paths(4, 2) == 0);   // cannot reach the origin that fast
}

TEST_CASE("path counts equal the ballot formula n/t * C(t, (t-n)/2)") {
  for (int n = 1; n <= 8; ++n) {
    for (int j = 0; j <= 6; ++j) {
      const int t = n + 2 * j;
      const uint64_t expect =
          uint64_t(n) * binom_u64(t, j) / uint64_t(t);
      CHECK(walk_paths(n, t) == mpz_class(static_cast<unsigned long>(expect)));
    }
  }
}

TEST_CASE("path counts satisfy the one-step recurrence") {
  // First-passage counts: N(n, t) = N(n-1, t-1) + N(n+1, t-1) for n >= 2.
  for (int n = 2; n <= 9; ++n)
    for (int t = n; t <= n + 14; ++t)
      CHECK(walk_paths(n, t) ==
            walk_paths(n - 1, t - 1) + walk_paths(n + 1, t - 1));
}

TEST_CASE("absorption terms weight the path counts correctly") {
  for (int n : {1, 2, 3, 5, 7}) {
    for (int j = 0; j <= 10; ++j) {
      const int t = n + 2 * j;
      const double expect =
          walk_paths(n, t).get_d() * std::pow(2.0, -0.5 * (3.0 * t - n));
      CHECK(walk_absorption_term(n, t) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(walk_absorption_term(n, n + 1) == 0.0);
  }
}

TEST_CASE("success probability has the closed form 1 - (2 - sqrt 2)^n") {
  // From height 1 the failure weight f solves f = 1/2 + f^2/4, giving
  // f = 2 - sqrt(2); independent heights multiply.
  const double f = 2.0 - std::sqrt(2.0);
  for (int n = 1; n <= 25; ++n)
    CHECK(walk_success(n) ==
          doctest::Approx(1.0 - std::pow(f, n)).epsilon(1e-11));
  CHECK(walk_success(7) == doctest::Approx(0.9763312573577333).epsilon(1e-12));
  CHECK(walk_success(2) == doctest::Approx(0.6568542494923804).epsilon(1e-12));
  CHECK(std::abs(walk_success(7) - 0.9763) < 5e-5);
}

TEST_CASE("success probability increases strictly with the start height") {
  double prev = 0;
  for (int n = 1; n <= 25; ++n) {
    const double s = walk_success(n);
    CHECK(s > prev);
    CHECK(s < 1.0);
    prev = s;
  }
}

TEST_CASE("absorption series complements the success probability") {
  for (int n : {2, 5, 7}) {
    double fail = 0;
    for (int t = n; t <= 400; t += 2) fail += walk_absorption_term(n, t);
    CHECK(fail == doctest::Approx(1.0 - walk_success(n)).epsilon(1e-9));
  }
}

TEST_CASE("monte carlo walk agrees with the series") {
  const long long trials = 400000;
  const double p = walk_success(7);
  const double mc = walk_success_mc(7, trials, 7);
  const double se = std::sqrt(p * (1 - p) / double(trials));
  CHECK(std::abs(mc - p) < 3.5 * se);
}

TEST_CASE("monte carlo walk is independent of the worker count") {
  CHECK(walk_success_mc(5, 50000, 11, 1) == walk_success_mc(5, 50000, 11, 4));
}
