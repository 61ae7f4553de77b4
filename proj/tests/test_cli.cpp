#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pft/circuit.hpp"
#include "pft/cli.hpp"
#include "pft/rates.hpp"

using namespace pft;

namespace {

struct cli_run {
  int rc = 0;
  std::string out, err;
};

cli_run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  cli_run r;
  r.rc = cli_main(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  f.push_back(cur);
  return f;
}

std::string nth_line(const std::string& s, int idx) {
  std::istringstream in(s);
  std::string line;
  for (int i = 0; i <= idx; ++i)
    if (!std::getline(in, line)) return "";
  return line;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("walk prints the cascade success probability") {
  const cli_run r = run({"walk", "--n", "7"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("0.976331") != std::string::npos);

  const cli_run mc =
      run({"walk", "--n", "7", "--mc", "--samples", "20000", "--seed", "3"});
  CHECK(mc.rc == 0);
  CHECK(mc.out.find("mc 0.97") != std::string::npos);
  CHECK(mc.out.find("stderr") != std::string::npos);

  CHECK(run({"walk"}).rc == 1);            // --n is required
  CHECK(run({"walk", "--n", "0"}).rc == 1);
  CHECK(run({"walk", "--n", "999"}).rc == 1);
}

TEST_CASE("rates emits one csv row per operation and grid point") {
  const cli_run r = run({"rates", "--gamma", "0.001", "--eta", "0"});
  CHECK(r.rc == 0);
  CHECK(nth_line(r.out, 0) == "op,gamma,eta,located,x_unlocated,z_unlocated");
  CHECK(count_lines(r.out) == 1 + 5);
  CHECK(r.out.find("z90,0.001,0,0.030135601,") != std::string::npos);

  const cli_run grid = run({"rates", "--grid", "0:0.001:3"});
  CHECK(grid.rc == 0);
  CHECK(count_lines(grid.out) == 1 + 3 * 3 * 5);
}

TEST_CASE("rates at zero noise shows only the scheme floors") {
  const cli_run r = run({"rates"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("source_prep,0,0,0,0,0") != std::string::npos);
  CHECK(r.out.find("z90,0,0,0.0078125,0,0") != std::string::npos);
  CHECK(r.out.find("xx90,0,0,0.0236687426,0,0") != std::string::npos);
  CHECK(r.out.find("memory,0,0,0,0,0") != std::string::npos);
  CHECK(r.out.find("measurement,0,0,0,0,0") != std::string::npos);
}

TEST_CASE("argument validation exits with code one") {
  CHECK(run({"rates", "--gamma", "2"}).rc == 1);
  CHECK(run({"rates", "--grid", "nonsense"}).rc == 1);
  CHECK(run({"rates", "--grid", "0:1:10001"}).rc == 1);
  CHECK(run({"rates", "--grid", "0.001:0.0001:3"}).rc == 1);
  CHECK(run({"frobnicate"}).rc == 1);
  CHECK(run({}).rc == 1);
  CHECK(run({"simulate", "--workers", "0"}).rc == 1);
  CHECK(run({"simulate", "--samples", "0"}).rc == 1);
  CHECK(run({"threshold", "--rays", "0"}).rc == 1);
  CHECK(run({"threshold", "--budget", "0"}).rc == 1);
  CHECK(run({"threshold", "--gamma", "0"}).rc == 1);
  CHECK(run({"rates", "--config", "/nonexistent/path.conf"}).rc == 1);
}

TEST_CASE("help is not an error") {
  const cli_run r = run({"--help"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("simulate output is bitwise identical across worker counts") {
  const std::vector<std::string> base = {
      "simulate", "--gamma", "0.0001", "--eta",  "0.000001",
      "--samples", "5000",   "--seed", "3"};
  std::vector<std::string> w1 = base, w8 = base;
  w1.insert(w1.end(), {"--workers", "1"});
  w8.insert(w8.end(), {"--workers", "8"});
  const cli_run a = run(w1), b = run(w8);
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(nth_line(a.out, 0) ==
        "gamma,eta,code,located,x_unlocated,z_unlocated,"
        "stderr_located,stderr_x,stderr_z,samples,seed");
  CHECK(a.out.find("0.0001,1e-06,steane,0.0036,0,0,") != std::string::npos);
  CHECK(a.out.find(",5000,3") != std::string::npos);
}

TEST_CASE("one correction round beats the raw rates it consumes") {
  // Level-2 rates from a full simulation against the level-1 triple of the
  // dominant operation at the same physical point.  The located and x
  // components drop well below their inputs, as does the worst component;
  // the z floor interaction is documented separately and not asserted.
  const cli_run r = run({"simulate", "--gamma", "0.0001", "--eta", "0.000001",
                         "--samples", "100000", "--seed", "1"});
  REQUIRE(r.rc == 0);
  const auto f = split_csv(nth_line(r.out, 1));
  REQUIRE(f.size() == 11);
  const double l2 = std::stod(f[3]);
  const double x2 = std::stod(f[4]);
  const double z2 = std::stod(f[5]);
  const level1_rates xx = rates_xx90({1e-4, 1e-6});
  CHECK(l2 < xx.located);
  CHECK(x2 < xx.x_unlocated);
  const double sup2 = std::max({l2, x2, z2});
  const double sup1 =
      std::max({xx.located, xx.x_unlocated, xx.z_unlocated});
  CHECK(sup2 < sup1);
}

TEST_CASE("simulate writes csv to a file when asked") {
  const char* path = "/tmp/pft_cli_sim.csv";
  std::remove(path);
  const cli_run r = run({"simulate", "--samples", "2000", "--out", path});
  CHECK(r.rc == 0);
  CHECK(r.out.empty());  // routed to the file instead
  const std::string data = slurp(path);
  CHECK(nth_line(data, 0) ==
        "gamma,eta,code,located,x_unlocated,z_unlocated,"
        "stderr_located,stderr_x,stderr_z,samples,seed");
  CHECK(count_lines(data) == 2);
  std::remove(path);
}

TEST_CASE("oracle verification passes and reports each check") {
  const cli_run r = run({"oracle-verify"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("ok") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("fit reports the full map, residuals and iteration verdict") {
  const cli_run r = run({"fit", "--gamma", "0.001", "--samples", "2000",
                         "--seed", "2"});
  REQUIRE(r.rc == 0);
  CHECK(nth_line(r.out, 0) == "component,term,coefficient");
  // header + 3 direct + 3 start + 27 coefficients + 2 pooled residuals
  // + 6 per-component residuals + 2 iteration lines
  CHECK(count_lines(r.out) == 44);
  CHECK(r.out.find("direct,located,") != std::string::npos);
  CHECK(r.out.find("start,located,") != std::string::npos);
  CHECK(r.out.find("located,l2,") != std::string::npos);
  CHECK(r.out.find("z,xz,") != std::string::npos);
  CHECK(r.out.find("fit,max_residual,") != std::string::npos);
  CHECK(r.out.find("fit,rms_located,") != std::string::npos);
  CHECK(r.out.find("iterate,converged,") != std::string::npos);
  CHECK(r.out.find("iterate,converged_levels,") != std::string::npos);
}

TEST_CASE("threshold reports budget exhaustion with exit code three") {
  const cli_run r = run({"threshold", "--rays", "2", "--samples", "200",
                         "--budget", "13000"});
  CHECK(r.rc == 3);
  CHECK(nth_line(r.out, 0) == "gamma,eta,tol,converged_levels,status");
  CHECK(r.out.find("budget_exhausted") != std::string::npos);
}

TEST_CASE("threshold svg plot is deterministic") {
  const char* svg_a = "/tmp/pft_cli_a.svg";
  const char* svg_b = "/tmp/pft_cli_b.svg";
  std::remove(svg_a);
  std::remove(svg_b);
  const std::vector<std::string> base = {"threshold", "--rays", "1",
                                         "--samples", "200", "--budget",
                                         "13000"};
  std::vector<std::string> ra = base, rb = base;
  ra.insert(ra.end(), {"--svg", svg_a});
  rb.insert(rb.end(), {"--svg", svg_b});
  run(ra);
  run(rb);
  const std::string a = slurp(svg_a), b = slurp(svg_b);
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("\xce\xb3 (loss per timestep)") != std::string::npos);
  CHECK(a.find("\xce\xb7 (depolarisation per timestep)") !=
        std::string::npos);
  std::remove(svg_a);
  std::remove(svg_b);
}

TEST_CASE("config file supplies defaults, flags take precedence") {
  const char* cfg = "/tmp/pft_cli_cfg.txt";
  {
    std::ofstream f(cfg);
    f << "# defaults for the rate sweep\n";
    f << "gamma = 0.001\n";
    f << "rays = 4\n";  // foreign to 'rates', must be ignored with a note
  }
  const cli_run a = run({"rates", "--config", cfg});
  CHECK(a.rc == 0);
  CHECK(a.out.find("z90,0.001,0,") != std::string::npos);
  CHECK(a.err.find("ignoring key 'rays'") != std::string::npos);

  const cli_run b = run({"rates", "--config", cfg, "--gamma", "0"});
  CHECK(b.rc == 0);
  CHECK(b.out.find("z90,0,0,0.0078125,") != std::string::npos);
  std::remove(cfg);
}

TEST_CASE("resources prints the bill and exports machine-readable copies") {
  const char* csv = "/tmp/pft_cli_res.csv";
  const char* circ = "/tmp/pft_cli_circ.txt";
  std::remove(csv);
  std::remove(circ);
  const cli_run r =
      run({"resources", "--out", csv, "--dump-circuit", circ});
  CHECK(r.rc == 0);
  CHECK(r.out.find("448") != std::string::npos);
  CHECK(r.out.find("2048") != std::string::npos);
  CHECK(r.out.find("443.65625") != std::string::npos);
  CHECK(r.out.find("192468") != std::string::npos);
  CHECK(r.out.find("comparison of schemes") != std::string::npos);

  const std::string data = slurp(csv);
  CHECK(nth_line(data, 0) == "section,item,count,per_unit,value");
  CHECK(data.find("round,total,,,192468") != std::string::npos);
  CHECK(data.find("comparison,parity-encoding (quoted),0.002,2.4e-05,180000") !=
        std::string::npos);
  CHECK(data.find("comparison,cluster-state,0.004,8e-05,130000000") !=
        std::string::npos);

  std::ifstream cf(circ);
  REQUIRE(cf.good());
  const circuit c = circuit::parse(cf);
  CHECK(c.gates.size() == std::size_t(56 + 54 + 128 + 56));
  std::remove(csv);
  std::remove(circ);
}
