#pragma once
#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "pft/css_code.hpp"
#include "pft/rates.hpp"

namespace pft {

struct rate_triple {
  double located = 0, x = 0, z = 0;
  double sup() const;
};

// Level-to-level error map: each output component is a degree-two
// polynomial without constant term in the input triple (nine monomials),
// so zero noise is an exact fixed point.
struct level_map {
  static constexpr int terms = 9;
  std::array<std::array<double, terms>, 3> coef{};
  rate_triple apply(const rate_triple& r) const;
};

std::array<double, level_map::terms> map_monomials(const rate_triple& r);
const char* map_monomial_name(int k);

struct fit_stats {
  // Residuals are raw for unweighted fits; with standard errors supplied
  // they are standardised (residual over effective standard error).  The
  // pooled figures aggregate all three output components; the arrays hold
  // per-component statistics in the order located, x, z.
  double max_residual = 0;
  double rms_residual = 0;
  double max_by_component[3] = {0, 0, 0};
  double rms_by_component[3] = {0, 0, 0};
};

// Least-squares fit of the map from matched input/output triples; requires
// at least three samples per coefficient and throws if the design matrix is
// rank deficient.  Optional per-sample standard errors give an
// inverse-variance weighted fit.
level_map fit_level_map(const std::vector<rate_triple>& in,
                        const std::vector<rate_triple>& out,
                        fit_stats* stats = nullptr,
                        const std::vector<rate_triple>* stderrs = nullptr);

struct iteration_result {
  bool converged = false;
  bool diverged = false;
  int converged_levels = 0;  // levels applied until the triple vanished
  rate_triple final;
};

// Repeated application with components clamped to [0, 1]; convergence when
// the triple drops below 1e-12, divergence after three consecutive levels
// above the starting magnitude.
iteration_result iterate_map(const level_map& m, const rate_triple& start,
                             int max_levels = 40);

// Full analysis of one physical point: direct simulation for the next-level
// triple, a scaled-table grid to fit the level map (argument: the dominant
// two-qubit-gate triple, other operations tied in direct-table proportions),
// then iteration of the fitted map from that anchor triple.
struct point_analysis {
  rate_triple direct;
  rate_triple start;
  level_map map;
  fit_stats fit;
  iteration_result iter;
  long long samples_used = 0;
};

// Simulations one analyze_point call performs (direct + fitting grid).
int analysis_runs();

struct threshold_params {
  const css_code* code = nullptr;
  double gamma_max = 6e-3;
  double eta_max = 1e-4;
  int rays = 5;           // evenly spread from the gamma axis to the eta axis
  double rel_tol = 0.05;  // bisection bracket width relative to its top
  long long samples = 100000;
  uint64_t seed = 1;
  int workers = 1;
  long long sample_budget = LLONG_MAX;
};

point_analysis analyze_point(const css_code& code, const physical_noise& p,
                             long long samples, uint64_t seed, int workers);

struct ray_result {
  double gamma = 0, eta = 0;  // boundary estimate along the ray
  double tol = 0;             // achieved relative bracket width
  int converged_levels = 0;   // at the last convergent point probed
  std::string status;         // "ok" or "budget_exhausted"
  // Final bisection bracket in ray-scale units.  lo_converged is the verdict
  // of the last simulated convergent scale (lo_scale = 0 means the origin
  // end was never simulated and stands on the zero-noise fixed point);
  // hi_diverged is the verdict at hi_scale when one was simulated.
  double lo_scale = 0, hi_scale = 0;
  bool lo_converged = true, hi_diverged = false;
};

// Because every rate is monotone in both noise axes, the convergent region
// is a lower set and the true boundary trades gamma against eta
// monotonically.  Finite-sample convergence verdicts can still leave the
// independently bisected ray estimates inconsistent, so the traced points
// (status "ok" only) are projected onto the constraint set -- gamma
// non-decreasing, eta non-increasing along the ray order -- by the minimal
// symmetric log-scale adjustment that keeps each point on its ray.  A moved
// point's tol is raised to at least its relative shift; already-consistent
// curves pass through unchanged.
void enforce_tradeoff_monotonicity(std::vector<ray_result>& rays);

// Bisects the convergence boundary along rays t * (gamma_max, eta_max)
// mixes; consumes simulation samples against the budget.  The emitted curve
// satisfies the trade-off monotonicity invariant above.
std::vector<ray_result> trace_threshold(const threshold_params& tp);

}  // namespace pft
