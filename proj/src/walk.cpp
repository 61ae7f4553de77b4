#include "pft/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pft/rng.hpp"

namespace pft {

mpz_class walk_paths(int n, int t) {
  if (n <= 0 || t <= 0) throw std::invalid_argument("walk_paths needs n,t >= 1");
  if (t < n || (t - n) % 2 != 0) return 0;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), t, (t + n) / 2);
  // The cycle-lemma count n/t * C(t, (t+n)/2) is always integral.
  mpz_class paths = binom * n;
  if (paths % t != 0) throw std::logic_error("ballot count not integral");
  return paths / t;
}

double walk_absorption_term(int n, int t) {
  if (t < n || (t - n) % 2 != 0) return 0.0;
  // paths * 2^{-(t-n)/2} / 2^t evaluated in log space to stay finite for
  // large t: log term = log(n/t) + lgamma-based log C(t,(t+n)/2)
  //                    - ((3t - n)/2) log 2.
  const double lc = std::lgamma(t + 1.0) - std::lgamma((t + n) / 2 + 1.0) -
                    std::lgamma((t - n) / 2 + 1.0);
  const double lt = std::log(double(n) / t) + lc -
                    0.5 * (3.0 * t - n) * std::log(2.0);
  return std::exp(lt);
}

double walk_success(int n) {
  if (n <= 0) throw std::invalid_argument("walk_success needs n >= 1");
  double fail = 0;
  // Tail ratio drops below 1/2 once t > (n^2 - 4) / 3, so after that point a
  // term below 1e-13 bounds the remaining tail below 2e-13.
  const double tail_safe = (double(n) * n - 4.0) / 3.0;
  for (int t = n; t < 200000; t += 2) {
    const double term = walk_absorption_term(n, t);
    fail += term;
    if (t > tail_safe && term < 1e-13) break;
  }
  return 1.0 - fail;
}

double walk_success_mc(int n, long long trials, uint64_t seed, int workers) {
  if (n <= 0 || trials <= 0) throw std::invalid_argument("bad mc parameters");
  if (workers < 1) workers = 1;
  std::vector<long long> wins(workers, 0);
  auto run = [&](int w) {
    const long long lo = trials * w / workers, hi = trials * (w + 1) / workers;
    long long local = 0;
    for (long long i = lo; i < hi; ++i) {
      rng g(seed, uint64_t(i));
      int size = n;
      while (size > 0) {
        const double u = g.uniform();
        if (u < 0.25) {
          ++local;
          break;
        }
        size += (u < 0.75) ? -1 : 1;
      }
    }
    wins[w] = local;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  long long total = 0;
  for (auto w : wins) total += w;
  return double(total) / double(trials);
}

}  // namespace pft
