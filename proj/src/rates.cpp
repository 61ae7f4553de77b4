#include "pft/rates.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pft/walk.hpp"

namespace pft {
namespace {

double pow_keep(double base, int e) { return std::pow(base, double(e)); }

double ps7() {
  static const double v = walk_success(7);
  return v;
}

}  // namespace

int z90_attempt_loss_exponent(int j) {
  // Attempt j runs on a block of size 8 - j: fusion + measure-outs plus the
  // preceding failed attempts' exposure.
  return j * (1 + j) / 2 + 3 * j + (1 + j) * (7 - j);
}

level1_rates rates_source_prep(const physical_noise& p) {
  level1_rates r;
  r.located = 1.0 - pow_keep(1.0 - p.gamma, exponents::source_prep_loss);
  r.x_unlocated = 1.0 - pow_keep(1.0 - p.eta_x(), exponents::source_prep_x);
  r.z_unlocated = 0.0;
  return r;
}

level1_rates rates_z90(const physical_noise& p) {
  level1_rates r;
  double survive = 0;
  for (int j = 1; j <= exponents::z90_attempts; ++j)
    survive += std::ldexp(1.0, -j) *
               pow_keep(1.0 - p.gamma, z90_attempt_loss_exponent(j));
  r.located = 1.0 - survive;
  r.x_unlocated = 1.0 - pow_keep(1.0 - p.eta_x(), exponents::z90_x);
  r.z_unlocated = 1.0 - pow_keep(1.0 - p.eta_z(), exponents::z90_z);
  return r;
}

level1_rates rates_xx90(const physical_noise& p) {
  level1_rates r;
  r.located = 1.0 - ps7() * pow_keep(1.0 - p.gamma, exponents::xx90_loss);
  r.x_unlocated = 1.0 - pow_keep(1.0 - p.eta_x(), exponents::xx90_x);
  r.z_unlocated = 1.0 - pow_keep(1.0 - p.eta_z(), exponents::xx90_z);
  return r;
}

level1_rates rates_memory(const physical_noise& p) {
  level1_rates r;
  r.located = 1.0 - pow_keep(1.0 - p.gamma, exponents::memory_loss);
  r.x_unlocated = 1.0 - pow_keep(1.0 - p.eta_x(), exponents::memory_x);
  r.z_unlocated = 1.0 - pow_keep(1.0 - p.eta_z(), exponents::memory_z);
  return r;
}

level1_rates rates_measurement(const physical_noise& p) {
  level1_rates r;
  r.located = 1.0 - pow_keep(1.0 - p.gamma, exponents::meas_loss);
  r.x_unlocated = 1.0 - pow_keep(1.0 - p.eta_x(), exponents::meas_x);
  r.z_unlocated = 0.0;
  return r;
}

noise_table level1_noise(const physical_noise& p) {
  noise_table t;
  t.prep = rates_source_prep(p);
  t.h = rates_z90(p);
  t.xx = rates_xx90(p);
  t.mem = rates_memory(p);
  t.meas = rates_measurement(p);
  t.input = t.xx;
  return t;
}

noise_table uniform_noise(const level1_rates& r) {
  noise_table t;
  t.prep = t.h = t.xx = t.mem = t.meas = t.input = r;
  return t;
}

int optimal_code_size(const physical_noise& p, int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("bad block size range");
  int best_n = n_min;
  double best = std::numeric_limits<double>::infinity();
  for (int n = n_min; n <= n_max; ++n) {
    const double fail =
        1.0 - walk_success(n) * pow_keep(1.0 - p.gamma, 4 * (n + 3));
    if (fail < best - 1e-18) {
      best = fail;
      best_n = n;
    }
  }
  return best_n;
}

std::string describe(const level1_rates& r) {
  std::ostringstream o;
  o << "located=" << r.located << " x=" << r.x_unlocated
    << " z=" << r.z_unlocated;
  return o.str();
}

}  // namespace pft
