#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "/tmp/helix_cli_out.txt";
  const std::string cmd =
      std::string(HELIX_BIN) + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out_file);
  std::stringstream ss;
  ss << is.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("constants subcommand prints the structural constants") {
  const RunResult r = run("constants --preset fig2");
  CHECK(r.code == 0);
  CHECK(r.out.find("B = 9\n") != std::string::npos);
  CHECK(r.out.find("a_tilde = 45\n") != std::string::npos);
  CHECK(r.out.find("b_tilde = -18\n") != std::string::npos);
  CHECK(r.out.find("alpha1 = 15\n") != std::string::npos);
  CHECK(r.out.find("lambda = +1\n") != std::string::npos);
}

TEST_CASE("lambda accepts causal-character words") {
  const RunResult spacelike = run("constants -e 2 -n 4 -l spacelike");
  CHECK(spacelike.code == 0);
  CHECK(spacelike.out.find("lambda = -1\n") != std::string::npos);
  CHECK(spacelike.out.find("B = -79\n") != std::string::npos);

  const RunResult timelike = run("constants -e 1 -n 2 -l timelike");
  CHECK(timelike.code == 0);
  CHECK(timelike.out.find("B = 9\n") != std::string::npos);
}

TEST_CASE("curve subcommand prints directrix invariants") {
  const RunResult r = run("curve --preset fig2");
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa_g = 1.7888543820\n") != std::string::npos);
  CHECK(r.out.find("helix_angle = -2.2360679775\n") != std::string::npos);
  CHECK(r.out.find("tau_g = 1\n") != std::string::npos);
  CHECK(r.out.find("hyperbolic_angle = 1.4436354752\n") != std::string::npos);
}

TEST_CASE("verify passes on a reference preset") {
  const RunResult r = run("verify --preset fig2 --grid 8x8");
  CHECK(r.code == 0);
  CHECK(r.out.find("ALL PASS") != std::string::npos);
  CHECK(r.out.find("check,ode_quartic,") != std::string::npos);
  CHECK(r.out.find(",fail") == std::string::npos);
}

TEST_CASE("verify fails with a perturbed spec") {
  const RunResult r =
      run("verify --preset fig2 --grid 8x8 --negative-control perturb-constants");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAILURES PRESENT") != std::string::npos);
  CHECK(r.out.find("check,ode_quartic,") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(run("constants -e 1 -n 0.5 -l -1").code == 2);       // not a valid nu
  CHECK(run("constants --preset fig2 -e 3").code == 2);      // contradictory
  CHECK(run("constants -e 1").code == 2);                    // nu missing
  CHECK(run("verify --preset fig3 -l +1 --grid 4x4").code == 2);  // pinned lambda
  CHECK(run("constants --preset fig9").code == 2);           // unknown preset
  CHECK(run("nonsense").code == 2);                          // unknown subcommand
  CHECK(run("").code == 2);                                  // subcommand required
  CHECK(run("surface --preset fig2 --grid 4").code == 2);    // malformed grid
}

TEST_CASE("surface subcommand writes meshes") {
  const RunResult obj =
      run("surface --preset fig2 --grid 6x5 --format obj --out /tmp/helix_t.obj");
  CHECK(obj.code == 0);
  std::ifstream is("/tmp/helix_t.obj");
  REQUIRE(is.good());
  std::string first;
  std::getline(is, first);
  CHECK(first.rfind("v ", 0) == 0);

  const RunResult csv =
      run("surface --preset fig2 --grid 4x4 --format csv --out /tmp/helix_t.csv");
  CHECK(csv.code == 0);
  std::ifstream cs("/tmp/helix_t.csv");
  std::getline(cs, first);
  CHECK(first == "u,v,F1,F2,F3,F4,nu");

  std::remove("/tmp/helix_t.obj");
  std::remove("/tmp/helix_t.csv");
}

TEST_CASE("verify report file matches stdout") {
  const RunResult r =
      run("verify --preset fig2 --grid 4x4 --report /tmp/helix_t_report.txt");
  CHECK(r.code == 0);
  std::ifstream is("/tmp/helix_t_report.txt");
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str() == r.out);
  std::remove("/tmp/helix_t_report.txt");
}
