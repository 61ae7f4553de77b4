#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pft/cli.hpp"
#include "pft/css_code.hpp"
#include "pft/mc.hpp"
#include "pft/oracle_suite.hpp"
#include "pft/rates.hpp"
#include "pft/resources.hpp"
#include "pft/telecorrector.hpp"
#include "pft/threshold.hpp"
#include "pft/walk.hpp"

namespace py = pybind11;

namespace {

py::dict triple_dict(const pft::level1_rates& r) {
  py::dict d;
  d["located"] = r.located;
  d["x_unlocated"] = r.x_unlocated;
  d["z_unlocated"] = r.z_unlocated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "parity-encoded fault-tolerance toolkit";

  m.def("walk_success", &pft::walk_success, py::arg("n"),
        "success probability of the teleportation cascade from block size n");
  m.def(
      "walk_success_mc",
      [](int n, long long trials, uint64_t seed, int workers) {
        return pft::walk_success_mc(n, trials, seed, workers);
      },
      py::arg("n"), py::arg("trials"), py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "level1_rates",
      [](double gamma, double eta) {
        const pft::physical_noise p{gamma, eta};
        py::dict d;
        d["source_prep"] = triple_dict(pft::rates_source_prep(p));
        d["z90"] = triple_dict(pft::rates_z90(p));
        d["xx90"] = triple_dict(pft::rates_xx90(p));
        d["memory"] = triple_dict(pft::rates_memory(p));
        d["measurement"] = triple_dict(pft::rates_measurement(p));
        return d;
      },
      py::arg("gamma"), py::arg("eta"),
      "first-level encoded error rates per operation");

  m.def(
      "optimal_code_size",
      [](double gamma) { return pft::optimal_code_size({gamma, 0.0}); },
      py::arg("gamma"));

  m.def(
      "simulate",
      [](double gamma, double eta, const std::string& code,
         long long samples, uint64_t seed, int workers) {
        const pft::telecorrector tc =
            pft::telecorrector::build(pft::code_by_name(code));
        pft::mc_params mp;
        mp.samples = samples;
        mp.seed = seed;
        mp.workers = workers;
        const pft::sim_estimate e = pft::simulate_telecorrector(
            tc, pft::level1_noise({gamma, eta}), mp);
        py::dict d;
        d["located"] = e.located();
        d["x_unlocated"] = e.x_unlocated();
        d["z_unlocated"] = e.z_unlocated();
        d["stderr_located"] = e.se_located();
        d["stderr_x"] = e.se_x();
        d["stderr_z"] = e.se_z();
        d["samples"] = e.samples;
        d["seed"] = e.seed;
        return d;
      },
      py::arg("gamma"), py::arg("eta"), py::arg("code") = "steane",
      py::arg("samples") = 100000, py::arg("seed") = 1,
      py::arg("workers") = 1,
      "next-level error triple of one teleported correction round");

  m.def("parity_state_cost", &pft::parity_state_cost, py::arg("n"));
  m.def("z90_cost", &pft::z90_cost);
  m.def("rxx_cost", &pft::rxx_cost);
  m.def("xx90_expected_bells", &pft::xx90_expected_bells);
  m.def(
      "telecorrector_cost",
      [](const std::string& code) {
        const pft::cost_breakdown cb =
            pft::telecorrector_cost(pft::code_by_name(code));
        py::dict d;
        static const char* kinds[4] = {"prep0", "h", "xxp90", "measz"};
        for (int i = 0; i < 4; ++i) {
          py::dict row;
          row["count"] = cb.counts[std::size_t(i)];
          row["per_gate"] = cb.per_gate[std::size_t(i)];
          d[kinds[i]] = row;
        }
        d["total"] = cb.total;
        return d;
      },
      py::arg("code") = "steane");

  m.def("oracle_verify", []() {
    std::ostringstream out;
    const pft::oracle_report rep = pft::run_oracle_suite(out);
    return py::make_tuple(rep.passed, rep.failed, out.str());
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int rc = pft::cli_main(args, out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"),
      "in-process command-line driver: returns (exit_code, stdout, stderr)");
}
