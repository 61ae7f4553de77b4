#include "pft/cli.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pft/config.hpp"
#include "pft/css_code.hpp"
#include "pft/mc.hpp"
#include "pft/oracle_suite.hpp"
#include "pft/rates.hpp"
#include "pft/resources.hpp"
#include "pft/svg.hpp"
#include "pft/telecorrector.hpp"
#include "pft/threshold.hpp"
#include "pft/walk.hpp"

namespace pft {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0, b = 0;
  int n = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3)
    throw std::invalid_argument("grid must be a:b:n");
  if (n < 1 || n > 10000) throw std::invalid_argument("grid size out of range");
  if (b < a) throw std::invalid_argument("grid upper end below lower end");
  std::vector<double> v;
  for (int i = 0; i < n; ++i)
    v.push_back(n == 1 ? a : a + (b - a) * i / double(n - 1));
  return v;
}

void check_rate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// Stream selected by --out, defaulting to stdout.
class out_sink {
 public:
  out_sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + path);
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// Values from --config act as defaults: they are appended as flags unless
// the flag was given explicitly; keys foreign to the subcommand are skipped.
std::vector<std::string> apply_config(std::vector<std::string> args,
                                      std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;

  static const std::map<std::string, std::set<std::string>> allowed = {
      {"rates", {"gamma", "eta", "grid", "out"}},
      {"walk", {"n", "samples", "seed", "workers"}},
      {"oracle-verify", {}},
      {"simulate",
       {"gamma", "eta", "grid", "code", "samples", "seed", "workers", "out"}},
      {"fit", {"gamma", "eta", "code", "samples", "seed", "workers", "out"}},
      {"threshold",
       {"gamma", "eta", "code", "samples", "seed", "workers", "out", "svg",
        "rays", "budget"}},
      {"resources", {"code", "out", "dump-circuit"}},
  };
  std::string sub;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      sub = a;
      break;
    }
  const auto it = allowed.find(sub);

  for (const auto& [key, value] : load_config(path)) {
    if (key == "config") continue;
    if (it == allowed.end() || !it->second.count(key)) {
      err << "config: ignoring key '" << key << "' for '" << sub << "'\n";
      continue;
    }
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    if (!given) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

// ------------------------------------------------------------ subcommands

struct common_opts {
  double gamma = 0, eta = 0;
  std::string grid, code = "steane", out, svg, config, dump_circuit;
  long long samples = 100000;
  uint64_t seed = 1;
  int workers = 1;
};

int run_rates(const common_opts& o, std::ostream& out) {
  check_rate(o.gamma, "gamma");
  check_rate(o.eta, "eta");
  std::vector<double> gv{o.gamma}, ev{o.eta};
  if (!o.grid.empty()) gv = ev = parse_grid(o.grid);
  for (double v : gv) check_rate(v, "grid value");

  using rate_fn = level1_rates (*)(const physical_noise&);
  static const std::pair<const char*, rate_fn> ops[] = {
      {"source_prep", rates_source_prep}, {"z90", rates_z90},
      {"xx90", rates_xx90},               {"memory", rates_memory},
      {"measurement", rates_measurement},
  };

  out_sink sink(o.out, out);
  sink.get() << "op,gamma,eta,located,x_unlocated,z_unlocated\n";
  for (double g : gv)
    for (double e : ev)
      for (const auto& [name, fn] : ops) {
        const level1_rates r = fn({g, e});
        sink.get() << name << "," << num(g) << "," << num(e) << ","
                   << num(r.located) << "," << num(r.x_unlocated) << ","
                   << num(r.z_unlocated) << "\n";
      }
  return 0;
}

int run_walk(int n, const common_opts& o, bool mc_requested,
             std::ostream& out) {
  if (n < 1 || n > 200) throw std::invalid_argument("n must lie in [1, 200]");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", walk_success(n));
  out << buf << "\n";
  if (mc_requested) {
    if (o.samples < 1) throw std::invalid_argument("samples must be positive");
    const double p = walk_success_mc(n, o.samples, o.seed, o.workers);
    const double se =
        std::sqrt(std::max(p * (1 - p), 0.0) / double(o.samples));
    std::snprintf(buf, sizeof buf, "mc %.6f stderr %.3g", p, se);
    out << buf << "\n";
  }
  return 0;
}

int run_oracle_verify(std::ostream& out) {
  const oracle_report rep = run_oracle_suite(out);
  return rep.ok() ? 0 : 2;
}

int run_simulate(const common_opts& o, std::ostream& out) {
  check_rate(o.gamma, "gamma");
  check_rate(o.eta, "eta");
  if (o.samples < 1) throw std::invalid_argument("samples must be positive");
  if (o.workers < 1 || o.workers > 256)
    throw std::invalid_argument("workers must lie in [1, 256]");
  std::vector<double> gv{o.gamma}, ev{o.eta};
  if (!o.grid.empty()) gv = ev = parse_grid(o.grid);
  for (double v : gv) check_rate(v, "grid value");

  const css_code& code = code_by_name(o.code);
  const telecorrector tc = telecorrector::build(code);
  mc_params mp;
  mp.samples = o.samples;
  mp.seed = o.seed;
  mp.workers = o.workers;

  out_sink sink(o.out, out);
  sink.get() << "gamma,eta,code,located,x_unlocated,z_unlocated,"
                "stderr_located,stderr_x,stderr_z,samples,seed\n";
  for (double g : gv)
    for (double e : ev) {
      const sim_estimate est =
          simulate_telecorrector(tc, level1_noise({g, e}), mp);
      sink.get() << num(g) << "," << num(e) << "," << code.name << ","
                 << num(est.located()) << "," << num(est.x_unlocated()) << ","
                 << num(est.z_unlocated()) << "," << num(est.se_located())
                 << "," << num(est.se_x()) << "," << num(est.se_z()) << ","
                 << est.samples << "," << est.seed << "\n";
    }
  return 0;
}

int run_fit(const common_opts& o, std::ostream& out) {
  check_rate(o.gamma, "gamma");
  check_rate(o.eta, "eta");
  if (o.samples < 1) throw std::invalid_argument("samples must be positive");
  const css_code& code = code_by_name(o.code);
  const point_analysis pa =
      analyze_point(code, {o.gamma, o.eta}, o.samples, o.seed, o.workers);

  out_sink sink(o.out, out);
  std::ostream& os = sink.get();
  os << "component,term,coefficient\n";
  os << "direct,located," << num(pa.direct.located) << "\n";
  os << "direct,x," << num(pa.direct.x) << "\n";
  os << "direct,z," << num(pa.direct.z) << "\n";
  os << "start,located," << num(pa.start.located) << "\n";
  os << "start,x," << num(pa.start.x) << "\n";
  os << "start,z," << num(pa.start.z) << "\n";
  static const char* comps[3] = {"located", "x", "z"};
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < level_map::terms; ++k)
      os << comps[c] << "," << map_monomial_name(k) << ","
         << num(pa.map.coef[std::size_t(c)][std::size_t(k)]) << "\n";
  os << "fit,max_residual," << num(pa.fit.max_residual) << "\n";
  os << "fit,rms_residual," << num(pa.fit.rms_residual) << "\n";
  for (int c = 0; c < 3; ++c) {
    os << "fit,max_" << comps[c] << ","
       << num(pa.fit.max_by_component[c]) << "\n";
    os << "fit,rms_" << comps[c] << ","
       << num(pa.fit.rms_by_component[c]) << "\n";
  }
  os << "iterate,converged," << (pa.iter.converged ? 1 : 0) << "\n";
  os << "iterate,converged_levels," << pa.iter.converged_levels << "\n";
  return 0;
}

int run_threshold(const common_opts& o, double gamma_max, double eta_max,
                  int rays, long long budget, std::ostream& out) {
  check_rate(gamma_max, "gamma");
  check_rate(eta_max, "eta");
  if (gamma_max <= 0 || eta_max <= 0)
    throw std::invalid_argument("gamma and eta set the probed maxima; "
                                "both must be positive");
  if (rays < 1 || rays > 64)
    throw std::invalid_argument("rays must lie in [1, 64]");
  if (o.samples < 1) throw std::invalid_argument("samples must be positive");
  if (budget < 1) throw std::invalid_argument("budget must be positive");

  threshold_params tp;
  tp.code = &code_by_name(o.code);
  tp.gamma_max = gamma_max;
  tp.eta_max = eta_max;
  tp.rays = rays;
  tp.samples = o.samples;
  tp.seed = o.seed;
  tp.workers = o.workers;
  tp.sample_budget = budget;
  const std::vector<ray_result> rr = trace_threshold(tp);

  out_sink sink(o.out, out);
  sink.get() << "gamma,eta,tol,converged_levels,status\n";
  bool exhausted = false;
  for (const auto& r : rr) {
    sink.get() << num(r.gamma) << "," << num(r.eta) << "," << num(r.tol)
               << "," << r.converged_levels << "," << r.status << "\n";
    exhausted = exhausted || r.status == "budget_exhausted";
  }
  if (!o.svg.empty()) {
    std::vector<curve_point> curve;
    for (const auto& r : rr) curve.push_back({r.gamma, r.eta});
    std::ofstream f(o.svg, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open svg file: " + o.svg);
    f << threshold_svg(curve, tp.gamma_max, tp.eta_max,
                       "threshold boundary (" + tp.code->name + ")");
  }
  return exhausted ? 3 : 0;
}

int run_resources(const common_opts& o, std::ostream& out) {
  const css_code& code = code_by_name(o.code);
  const cost_breakdown cb = telecorrector_cost(code);
  const route_audit ra = rxx_resource_route();
  static const char* kinds[4] = {"prep0", "h", "xxp90", "measz"};

  // Aligned plain-text report on stdout.
  char line[160];
  out << "Bell-pair costs (expected, per delivered object)\n";
  const std::pair<const char*, double> items[] = {
      {"encoded |0> block (7 qubits)", double(parity_state_cost(7))},
      {"90-degree Z rotation", double(z90_cost())},
      {"encoded Hadamard", double(hadamard_cost())},
      {"two-qubit gate resource (quoted)", double(rxx_cost())},
      {"two-qubit gate, expected per completed gate", xx90_expected_bells()},
  };
  for (const auto& [name, value] : items) {
    std::snprintf(line, sizeof line, "  %-44s %12s\n", name,
                  num(value).c_str());
    out << line;
  }
  out << "  resource route built here: " << ra.bells << " Bell pairs, "
      << ra.fusions << " fusions; full-restart expectation "
      << ra.restart_cost << "\n\n";

  out << "teleported correction round (" << code.name << ")\n";
  for (int i = 0; i < 4; ++i) {
    std::snprintf(line, sizeof line, "  %-8s x %4d @ %10s = %12s\n", kinds[i],
                  cb.counts[std::size_t(i)],
                  num(cb.per_gate[std::size_t(i)]).c_str(),
                  num(cb.counts[std::size_t(i)] *
                      cb.per_gate[std::size_t(i)])
                      .c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "  %-8s          %12s   %12s\n", "total",
                "", num(cb.total).c_str());
  out << line << "\n";

  out << "comparison of schemes\n";
  std::snprintf(line, sizeof line, "  %-38s %14s %16s %14s\n", "scheme",
                "loss threshold", "depol threshold", "Bell pairs");
  out << line;
  for (const auto& row : comparison_table(code)) {
    if (row.loss_threshold > 0)
      std::snprintf(line, sizeof line, "  %-38s %14s %16s %14s\n",
                    row.scheme.c_str(), num(row.loss_threshold).c_str(),
                    num(row.depol_threshold).c_str(),
                    num(row.bell_cost).c_str());
    else
      std::snprintf(line, sizeof line, "  %-38s %14s %16s %14s\n",
                    row.scheme.c_str(), "-", "-", "-");
    out << line;
    if (!row.note.empty()) out << "      " << row.note << "\n";
  }

  // CSV version of the same accounting.
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + o.out);
    f << "section,item,count,per_unit,value\n";
    for (const auto& [name, value] : items)
      f << "cost," << name << ",,," << num(value) << "\n";
    for (int i = 0; i < 4; ++i)
      f << "round," << kinds[i] << "," << cb.counts[std::size_t(i)] << ","
        << num(cb.per_gate[std::size_t(i)]) << ","
        << num(cb.counts[std::size_t(i)] * cb.per_gate[std::size_t(i)])
        << "\n";
    f << "round,total,,," << num(cb.total) << "\n";
    for (const auto& row : comparison_table(code))
      f << "comparison," << row.scheme << "," << num(row.loss_threshold)
        << "," << num(row.depol_threshold) << "," << num(row.bell_cost)
        << "\n";
  }

  if (!o.dump_circuit.empty()) {
    const telecorrector tc = telecorrector::build(code);
    std::ofstream f(o.dump_circuit, std::ios::binary);
    if (!f)
      throw std::invalid_argument("cannot open circuit file: " +
                                  o.dump_circuit);
    f << tc.native.dump();
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  std::vector<std::string> argv;
  try {
    argv = apply_config(args, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"parity-encoded fault-tolerance toolkit"};
  app.require_subcommand(1);

  common_opts o;
  int walk_n = 0, rays = 5;
  long long budget = 1LL << 62;
  bool walk_mc = false;
  double thr_gamma = 6e-3, thr_eta = 1e-4;

  auto add_common = [&](CLI::App* sub, bool with_grid, bool with_code,
                        bool with_sampling, bool with_out) {
    sub->add_option("--config", o.config, "key=value defaults file");
    if (with_grid) sub->add_option("--grid", o.grid, "a:b:n sweep, both axes");
    if (with_code)
      sub->add_option("--code", o.code, "steane or golay")
          ->capture_default_str();
    if (with_sampling) {
      sub->add_option("--samples", o.samples, "Monte-Carlo samples")
          ->capture_default_str();
      sub->add_option("--seed", o.seed, "master seed")->capture_default_str();
      sub->add_option("--workers", o.workers, "worker threads")
          ->capture_default_str();
    }
    if (with_out) sub->add_option("--out", o.out, "write output to file");
  };

  CLI::App* c_rates =
      app.add_subcommand("rates", "first-level encoded error rates");
  c_rates->add_option("--gamma", o.gamma, "loss per timestep");
  c_rates->add_option("--eta", o.eta, "depolarisation per timestep");
  add_common(c_rates, true, false, false, true);

  CLI::App* c_walk =
      app.add_subcommand("walk", "teleportation cascade success probability");
  c_walk->add_option("--n", walk_n, "starting block size")->required();
  c_walk->add_flag("--mc", walk_mc, "also print a Monte-Carlo estimate");
  add_common(c_walk, false, false, true, false);

  CLI::App* c_oracle = app.add_subcommand(
      "oracle-verify", "state-level cross-checks of the gate machinery");
  add_common(c_oracle, false, false, false, false);

  CLI::App* c_sim =
      app.add_subcommand("simulate", "next-level error rates of one "
                                     "teleported correction round");
  c_sim->add_option("--gamma", o.gamma, "loss per timestep");
  c_sim->add_option("--eta", o.eta, "depolarisation per timestep");
  add_common(c_sim, true, true, true, true);

  CLI::App* c_fit = app.add_subcommand(
      "fit", "fit the level-to-level error map at one physical point");
  c_fit->add_option("--gamma", o.gamma, "loss per timestep");
  c_fit->add_option("--eta", o.eta, "depolarisation per timestep");
  add_common(c_fit, false, true, true, true);

  CLI::App* c_thr = app.add_subcommand(
      "threshold", "trace the convergence boundary in the noise plane");
  c_thr->add_option("--gamma", thr_gamma, "probed loss maximum")
      ->capture_default_str();
  c_thr->add_option("--eta", thr_eta, "probed depolarisation maximum")
      ->capture_default_str();
  c_thr->add_option("--rays", rays, "number of rays traced")
      ->capture_default_str();
  c_thr->add_option("--budget", budget, "total sample budget");
  c_thr->add_option("--svg", o.svg, "write an SVG plot of the boundary");
  add_common(c_thr, false, true, true, true);

  CLI::App* c_res =
      app.add_subcommand("resources", "Bell-pair cost accounting");
  c_res->add_option("--dump-circuit", o.dump_circuit,
                    "write the native correction-round circuit");
  add_common(c_res, false, true, false, true);

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (c_rates->parsed()) return run_rates(o, out);
    if (c_walk->parsed()) return run_walk(walk_n, o, walk_mc, out);
    if (c_oracle->parsed()) return run_oracle_verify(out);
    if (c_sim->parsed()) return run_simulate(o, out);
    if (c_fit->parsed()) return run_fit(o, out);
    if (c_thr->parsed())
      return run_threshold(o, thr_gamma, thr_eta, rays, budget, out);
    if (c_res->parsed()) return run_resources(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace pft
