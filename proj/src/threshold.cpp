#include "pft/threshold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pft/mc.hpp"
#include "pft/telecorrector.hpp"

namespace pft {

double rate_triple::sup() const { return std::max({located, x, z}); }

std::array<double, level_map::terms> map_monomials(const rate_triple& r) {
  const double l = r.located, x = r.x, z = r.z;
  return {l, x, z, l * l, x * x, z * z, l * x, l * z, x * z};
}

const char* map_monomial_name(int k) {
  static const char* names[level_map::terms] = {"l",  "x",  "z",  "l2", "x2",
                                                "z2", "lx", "lz", "xz"};
  return names[k];
}

rate_triple level_map::apply(const rate_triple& r) const {
  const auto m = map_monomials(r);
  rate_triple out;
  double* comp[3] = {&out.located, &out.x, &out.z};
  for (int c = 0; c < 3; ++c) {
    double acc = 0;
    for (int k = 0; k < terms; ++k) acc += coef[c][k] * m[k];
    *comp[c] = acc;
  }
  return out;
}

namespace {

double triple_component(const rate_triple& r, int c) {
  return c == 0 ? r.located : c == 1 ? r.x : r.z;
}

// Least squares under coefficient nonnegativity, solved exactly by
// enumerating active sets (nine columns, so 512 subsets): picks the
// feasible unconstrained subset solution of minimal squared residual.
Eigen::VectorXd nonnegative_lsq(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b) {
  const int k = int(A.cols());
  const Eigen::MatrixXd gram = A.transpose() * A;
  const Eigen::VectorXd atb = A.transpose() * b;
  Eigen::VectorXd best = Eigen::VectorXd::Zero(k);
  double best_ssr = b.squaredNorm();  // all-zero solution
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    const int m = int(cols.size());
    Eigen::MatrixXd g(m, m);
    Eigen::VectorXd r(m);
    for (int a = 0; a < m; ++a) {
      r(a) = atb(cols[std::size_t(a)]);
      for (int bcol = 0; bcol < m; ++bcol)
        g(a, bcol) = gram(cols[std::size_t(a)], cols[std::size_t(bcol)]);
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
    if (ldlt.info() != Eigen::Success) continue;
    const Eigen::VectorXd sub = ldlt.solve(r);
    if ((sub.array() < 0).any()) continue;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(k);
    for (int a = 0; a < m; ++a) full(cols[std::size_t(a)]) = sub(a);
    const double ssr = (A * full - b).squaredNorm();
    if (ssr < best_ssr - 1e-15 * (1.0 + best_ssr)) {
      best_ssr = ssr;
      best = full;
    }
  }
  return best;
}

}  // namespace

level_map fit_level_map(const std::vector<rate_triple>& in,
                        const std::vector<rate_triple>& out,
                        fit_stats* stats,
                        const std::vector<rate_triple>* stderrs) {
  if (in.size() != out.size() ||
      (stderrs && stderrs->size() != in.size()))
    throw std::invalid_argument("mismatched sample lists");
  if (in.size() < std::size_t(3 * level_map::terms))
    throw std::invalid_argument("need at least three samples per coefficient");
  const int n = int(in.size());
  Eigen::MatrixXd A(n, level_map::terms);
  for (int i = 0; i < n; ++i) {
    const auto m = map_monomials(in[std::size_t(i)]);
    for (int k = 0; k < level_map::terms; ++k) A(i, k) = m[k];
  }

  level_map map;
  double max_res = 0, sq_sum = 0;
  for (int c = 0; c < 3; ++c) {
    // Inverse-variance weights with a relative floor: a quadratic is only a
    // surrogate for the true map, so precisely measured points must not
    // dominate beyond the model's fidelity.
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    if (stderrs)
      for (int i = 0; i < n; ++i) {
        const double sig = triple_component((*stderrs)[std::size_t(i)], c);
        const double rel = 0.05 * triple_component(out[std::size_t(i)], c);
        w(i) = 1.0 / std::max(std::sqrt(sig * sig + rel * rel), 1e-12);
      }
    Eigen::MatrixXd Aw = w.asDiagonal() * A;
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i)
      b(i) = w(i) * triple_component(out[std::size_t(i)], c);

    // Normalise columns so conditioning and the rank decision are scale
    // free: the monomials span many orders of magnitude.
    Eigen::VectorXd scale(level_map::terms);
    for (int k = 0; k < level_map::terms; ++k) {
      scale(k) = Aw.col(k).norm();
      if (scale(k) == 0.0)
        throw std::runtime_error("level-map fit is rank deficient");
      Aw.col(k) /= scale(k);
    }
    if (Aw.colPivHouseholderQr().rank() < level_map::terms)
      throw std::runtime_error("level-map fit is rank deficient");

    // Error maps are monotone with a fixed point at zero, so every
    // monomial coefficient is physically nonnegative; enforcing that stops
    // sign-flipping linear terms from fabricating convergence near zero.
    const Eigen::VectorXd sol = nonnegative_lsq(Aw, b);
    for (int k = 0; k < level_map::terms; ++k)
      map.coef[std::size_t(c)][std::size_t(k)] = sol(k) / scale(k);
    const Eigen::VectorXd res = Aw * sol - b;  // weighted units
    max_res = std::max(max_res, res.cwiseAbs().maxCoeff());
    sq_sum += res.squaredNorm();
    if (stats) {
      stats->max_by_component[c] = res.cwiseAbs().maxCoeff();
      stats->rms_by_component[c] = std::sqrt(res.squaredNorm() / double(n));
    }
  }
  if (stats) {
    stats->max_residual = max_res;
    stats->rms_residual = std::sqrt(sq_sum / double(3 * n));
  }
  return map;
}

iteration_result iterate_map(const level_map& m, const rate_triple& start,
                             int max_levels) {
  constexpr double kZero = 1e-12;
  iteration_result res;
  res.final = start;
  const double start_sup = start.sup();
  if (start_sup < kZero) {
    res.converged = true;
    return res;
  }
  int above_start = 0;
  for (int level = 1; level <= max_levels; ++level) {
    rate_triple next = m.apply(res.final);
    next.located = std::clamp(next.located, 0.0, 1.0);
    next.x = std::clamp(next.x, 0.0, 1.0);
    next.z = std::clamp(next.z, 0.0, 1.0);
    res.final = next;
    if (next.sup() < kZero) {
      res.converged = true;
      res.converged_levels = level;
      return res;
    }
    if (next.sup() > start_sup) {
      if (++above_start >= 3) {
        res.diverged = true;
        return res;
      }
    } else {
      above_start = 0;
    }
  }
  return res;
}

namespace {

rate_triple estimate_to_triple(const sim_estimate& e) {
  return {e.located(), e.x_unlocated(), e.z_unlocated()};
}

// Standard errors with a one-count floor so zero-count estimates still get
// finite weight in the fit.
rate_triple estimate_to_stderr(const sim_estimate& e) {
  const double fl = 1.0 / double(e.samples);
  return {std::max(e.se_located(), fl), std::max(e.se_x(), fl),
          std::max(e.se_z(), fl)};
}

// Four scales per component span an 8x range: wide enough to separate the
// linear coefficients (which govern the small-rate behaviour the iteration
// walks through) from the quadratic ones.
constexpr double kGridScales[4] = {0.25, 0.5, 1.0, 2.0};

}  // namespace

int analysis_runs() { return 1 + 4 * 4 * 4; }

point_analysis analyze_point(const css_code& code, const physical_noise& p,
                             long long samples, uint64_t seed, int workers) {
  const telecorrector tc = telecorrector::build(code);
  mc_params mp;
  mp.samples = samples;
  mp.seed = seed;
  mp.workers = workers;

  point_analysis pa;
  const noise_table t1 = level1_noise(p);
  pa.direct = estimate_to_triple(simulate_telecorrector(tc, t1, mp));
  pa.samples_used += samples;

  // The map argument is the noise triple of the dominant operation — the
  // teleported two-qubit gate — and every other operation is tied to it in
  // the proportions of the direct table.  The scale-(1,1,1) fitting point is
  // then exactly the direct table, so the first map application reproduces
  // the measured next-level rates, and higher levels reuse the same mixing
  // ratios (homogeneity assumption).  A vanishing component (unlocated rates
  // at eta = 0) is probed at a small homogeneous rate so the design matrix
  // stays full rank.
  constexpr double kProbeFloor = 1e-5;
  const rate_triple anchor{t1.xx.located, t1.xx.x_unlocated,
                           t1.xx.z_unlocated};
  const auto scaled_table = [&](double sl, double sx, double sz) {
    noise_table t = t1;
    level1_rates* ops[] = {&t.prep, &t.h, &t.xx, &t.mem, &t.meas, &t.input};
    for (level1_rates* o : ops) {
      o->located = anchor.located >= kProbeFloor
                       ? std::min(o->located * sl, 1.0)
                       : std::min(sl * kProbeFloor, 1.0);
      o->x_unlocated = anchor.x >= kProbeFloor
                           ? std::min(o->x_unlocated * sx, 1.0)
                           : std::min(sx * kProbeFloor, 1.0);
      o->z_unlocated = anchor.z >= kProbeFloor
                           ? std::min(o->z_unlocated * sz, 1.0)
                           : std::min(sz * kProbeFloor, 1.0);
    }
    return t;
  };

  std::vector<rate_triple> in, out, se;
  for (double sl : kGridScales)
    for (double sx : kGridScales)
      for (double sz : kGridScales) {
        const rate_triple r{
            std::min(sl * std::max(anchor.located, kProbeFloor), 1.0),
            std::min(sx * std::max(anchor.x, kProbeFloor), 1.0),
            std::min(sz * std::max(anchor.z, kProbeFloor), 1.0)};
        in.push_back(r);
        const sim_estimate est =
            simulate_telecorrector(tc, scaled_table(sl, sx, sz), mp);
        out.push_back(estimate_to_triple(est));
        se.push_back(estimate_to_stderr(est));
        pa.samples_used += samples;
      }
  pa.map = fit_level_map(in, out, &pa.fit, &se);
  pa.start = {std::max(anchor.located, kProbeFloor),
              std::max(anchor.x, kProbeFloor),
              std::max(anchor.z, kProbeFloor)};
  pa.iter = iterate_map(pa.map, pa.start);
  return pa;
}

void enforce_tradeoff_monotonicity(std::vector<ray_result>& rays) {
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i].status == "ok") ok.push_back(i);
  const std::size_t k = ok.size();
  if (k < 2) return;

  // Scaling point j by exp(u[j]) keeps it on its ray; the trade-off chain
  // becomes band constraints on consecutive differences of u.  An infinite
  // bound marks a constraint that holds for every scaling (a zero
  // coordinate on the appropriate side).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> band_lo(k - 1, -inf), band_hi(k - 1, inf);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const ray_result& a = rays[ok[j]];
    const ray_result& b = rays[ok[j + 1]];
    if (a.gamma > 0 && b.gamma > 0) band_lo[j] = std::log(a.gamma / b.gamma);
    if (a.eta > 0 && b.eta > 0) band_hi[j] = std::log(a.eta / b.eta);
  }

  // Dykstra's alternating projections give the least-squares feasible
  // adjustment; each constraint touches two components only.
  std::vector<double> u(k, 0.0);
  std::vector<double> corr_a(k - 1, 0.0), corr_b(k - 1, 0.0);
  for (int cycle = 0; cycle < 10000; ++cycle) {
    double moved = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      const double wa = u[j] + corr_a[j], wb = u[j + 1] + corr_b[j];
      const double d = wb - wa;
      const double t = std::clamp(d, band_lo[j], band_hi[j]);
      const double shift = 0.5 * (t - d);
      const double na = wa - shift, nb = wb + shift;
      corr_a[j] = wa - na;
      corr_b[j] = wb - nb;
      moved += std::abs(na - u[j]) + std::abs(nb - u[j + 1]);
      u[j] = na;
      u[j + 1] = nb;
    }
    if (moved < 1e-15) break;
  }

  for (std::size_t j = 0; j < k; ++j) {
    const double c = std::exp(u[j]);
    if (c == 1.0) continue;
    ray_result& rr = rays[ok[j]];
    rr.gamma *= c;
    rr.eta *= c;
    rr.tol = std::max(rr.tol, std::abs(c - 1.0));
  }
  // Exact finish: the projection is feasible to rounding error only, so
  // clamp residual inversions (at most ulp scale) with direct assignment.
  for (std::size_t j = 1; j < k; ++j) {
    ray_result& prev = rays[ok[j - 1]];
    ray_result& cur = rays[ok[j]];
    if (cur.gamma < prev.gamma) cur.gamma = prev.gamma;
    if (cur.eta > prev.eta) cur.eta = prev.eta;
  }
}

std::vector<ray_result> trace_threshold(const threshold_params& tp) {
  if (!tp.code) throw std::invalid_argument("threshold needs a code");
  if (tp.rays < 1) throw std::invalid_argument("need at least one ray");

  const long long point_cost = analysis_runs() * tp.samples;
  long long used = 0;
  bool exhausted = false;
  uint64_t eval_counter = 0;

  // Rays ordered from the eta axis to the gamma axis so the emitted curve
  // runs left to right: gamma increasing, eta decreasing.
  std::vector<ray_result> results;
  for (int i = 0; i < tp.rays; ++i) {
    const double a = tp.rays == 1 ? 0.5 : double(i) / double(tp.rays - 1);
    const double dg = a * tp.gamma_max;
    const double de = (1.0 - a) * tp.eta_max;

    ray_result rr;
    rr.status = "ok";
    double lo = 0, hi = 1;
    int last_levels = 0;

    auto evaluate = [&](double s, bool& out_converged) -> bool {
      if (exhausted || used + point_cost > tp.sample_budget) {
        exhausted = true;
        return false;  // no samples left
      }
      used += point_cost;
      const physical_noise p{s * dg, s * de};
      const uint64_t seed = tp.seed + 1000003 * eval_counter++;
      const point_analysis pa =
          analyze_point(*tp.code, p, tp.samples, seed, tp.workers);
      out_converged = pa.iter.converged;
      if (pa.iter.converged) last_levels = pa.iter.converged_levels;
      return true;
    };

    bool conv = false;
    if (!evaluate(1.0, conv)) {
      rr.gamma = dg;
      rr.eta = de;
      rr.tol = 1.0;
      rr.status = "budget_exhausted";
      results.push_back(rr);
      continue;
    }
    if (conv) {
      // The whole probed segment converges: report its far end.
      rr.gamma = dg;
      rr.eta = de;
      rr.tol = 0.0;
      rr.converged_levels = last_levels;
      rr.lo_scale = rr.hi_scale = 1.0;
      rr.lo_converged = true;
      rr.hi_diverged = false;
      results.push_back(rr);
      continue;
    }
    bool lo_simulated_converged = false;  // lo = 0 rests on the zero-noise
                                          // fixed point until a mid converges
    for (int step = 0; step < 30 && (hi - lo) > tp.rel_tol * hi; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (!evaluate(mid, conv)) {
        rr.status = "budget_exhausted";
        break;
      }
      if (conv) {
        lo = mid;
        lo_simulated_converged = true;
      } else {
        hi = mid;
      }
    }
    const double s_star = 0.5 * (lo + hi);
    rr.gamma = s_star * dg;
    rr.eta = s_star * de;
    rr.tol = (hi - lo) / hi;
    rr.converged_levels = last_levels;
    rr.lo_scale = lo;
    rr.hi_scale = hi;
    rr.lo_converged = lo == 0.0 || lo_simulated_converged;
    rr.hi_diverged = true;
    results.push_back(rr);
  }
  enforce_tradeoff_monotonicity(results);
  return results;
}

}  // namespace pft
