#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "berger/export.hpp"
#include "berger/presets.hpp"
#include "doctest.h"

using namespace berger;

namespace {

HelixSpec fig2_spec() {
  return example1_spec({1.0, 2.0, +1},
                       ScalarCurve::make([](double v) { return std::exp(v); },
                                         [](double v) { return std::exp(v); }),
                       -2.0, 2.0);
}

GridSpec small_grid() {
  GridSpec g;
  g.u_min = -0.8;
  g.u_max = 0.8;
  g.v_min = -1.5;
  g.v_max = 1.5;
  g.n_u = 6;
  g.n_v = 5;
  return g;
}

}  // namespace

TEST_CASE("stereographic projection round-trips") {
  std::mt19937 rng(11);
  std::normal_distribution<double> dist;
  for (const Pole pole : {Pole{4, -1}, Pole{1, +1}, Pole{2, -1}}) {
    for (int i = 0; i < 50; ++i) {
      Vec4 x;
      for (int k = 0; k < 4; ++k) x(k) = dist(rng);
      x.normalize();
      if (std::abs(1.0 - pole.sign * x(pole.axis - 1)) < 1e-6) continue;
      const Vec4 back = stereographic_inverse(stereographic(x, pole), pole);
      CHECK((back - x).norm() < 1e-12);
    }
  }
}

TEST_CASE("stereographic pole is rejected") {
  CHECK_THROWS_AS(stereographic(Vec4(0, 0, 0, -1), Pole{4, -1}),
                  std::domain_error);
  CHECK_NOTHROW(stereographic(Vec4(0, 0, 0, 1), Pole{4, -1}));
  CHECK_THROWS_AS(stereographic(Vec4(1, 0, 0, 0), Pole{0, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stereographic(Vec4(1, 0, 0, 0), Pole{4, 2}),
                  std::invalid_argument);
}

TEST_CASE("mesh grid connectivity") {
  const MeshGrid mesh = build_mesh(fig2_spec(), small_grid());
  CHECK(mesh.dropped_vertices == 0);
  CHECK(mesh.vertices.size() == 30);
  CHECK(mesh.ambient.size() == 30);
  CHECK(mesh.faces.size() == 20);  // (6-1) x (5-1)
  CHECK(mesh.nus.size() == 30);
  for (const auto& f : mesh.faces) {
    for (int idx : f) {
      CHECK(idx >= 0);
      CHECK(idx < 30);
    }
  }
  // ambient samples are consistent with their projections and stay on S^3
  for (size_t i = 0; i < mesh.ambient.size(); ++i) {
    CHECK((stereographic(mesh.ambient[i]) - mesh.vertices[i]).norm() < 1e-12);
    CHECK(std::abs(mesh.ambient[i].norm() - 1.0) < 1e-10);
  }
  // the angle function is constant where defined
  for (double nu : mesh.nus) {
    if (!std::isnan(nu)) CHECK(nu == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_CASE("obj output") {
  const MeshGrid mesh = build_mesh(fig2_spec(), small_grid());
  std::ostringstream os;
  write_obj(os, mesh);
  const std::string text = os.str();
  CHECK(text.compare(0, 2, "v ") == 0);
  CHECK(text.find("\nf 1 2 8 7\n") != std::string::npos);  // 1-indexed quads
  size_t vcount = 0, fcount = 0, pos = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++vcount;
    if (line.rfind("f ", 0) == 0) ++fcount;
  }
  (void)pos;
  CHECK(vcount == 30);
  CHECK(fcount == 20);
}

TEST_CASE("ply output") {
  const MeshGrid mesh = build_mesh(fig2_spec(), small_grid());
  std::ostringstream os;
  write_ply(os, mesh);
  const std::string text = os.str();
  CHECK(text.rfind("ply\nformat ascii 1.0\n", 0) == 0);
  CHECK(text.find("element vertex 30\n") != std::string::npos);
  CHECK(text.find("element face 20\n") != std::string::npos);
  CHECK(text.find("property list uchar int vertex_indices\n") != std::string::npos);
  CHECK(text.find("end_header\n") != std::string::npos);
}

TEST_CASE("csv output") {
  const MeshGrid mesh = build_mesh(fig2_spec(), small_grid());
  std::ostringstream os;
  write_csv(os, mesh);
  const std::string text = os.str();
  CHECK(text.rfind("u,v,F1,F2,F3,F4,nu\n", 0) == 0);
  std::istringstream is(text);
  std::string line;
  size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 31);  // header + one row per vertex
}

TEST_CASE("export is byte-deterministic") {
  const HelixSpec spec = fig2_spec();
  const GridSpec grid = small_grid();
  std::ostringstream a, b;
  write_obj(a, build_mesh(spec, grid));
  write_obj(b, build_mesh(spec, grid));
  CHECK(a.str() == b.str());
}

TEST_CASE("report serialization") {
  const HelixSpec spec = fig2_spec();
  GridSpec grid;
  grid.u_min = -0.5;
  grid.u_max = 0.5;
  grid.v_min = -0.5;
  grid.v_max = 0.5;
  grid.n_u = 4;
  grid.n_v = 4;
  ResidualReport rep = full_report(spec, grid);
  rep.metadata.emplace_back("preset", "fig2");
  std::ostringstream os;
  write_report(os, rep);
  const std::string text = os.str();
  CHECK(text.find("check,nu_constancy,") != std::string::npos);
  CHECK(text.find("check,ode_quartic,") != std::string::npos);
  CHECK(text.find(",pass\n") != std::string::npos);
  CHECK(text.find("# samples=16\n") != std::string::npos);
  CHECK(text.find("# preset=fig2\n") != std::string::npos);
  CHECK(text.find("ALL PASS\n") != std::string::npos);
}

TEST_CASE("preset table") {
  CHECK(preset_from_string("fig1") == Preset::fig1);
  CHECK(preset_from_string("fig3bis") == Preset::fig3bis);
  CHECK_FALSE(preset_from_string("fig9").has_value());
  CHECK(to_string(Preset::fig3) == "fig3");

  const PresetData d1 = preset_data(Preset::fig1);
  CHECK(d1.params.epsilon == 2.0);
  CHECK(d1.params.nu == 4.0);
  CHECK(d1.params.lambda == -1);
  CHECK(d1.family == "example1");
  const PresetData d3 = preset_data(Preset::fig3);
  CHECK(d3.params.nu == doctest::Approx(std::sqrt(5.0)));
  CHECK(d3.family == "example2");
  CHECK_FALSE(d3.lambda_overridable);
}

TEST_CASE("run configuration resolution") {
  RunConfig cfg;
  cfg.preset = Preset::fig2;
  const ResolvedRun run = resolve(cfg);
  CHECK(run.spec.params.epsilon == 1.0);
  CHECK(run.spec.params.nu == 2.0);
  CHECK(run.spec.consts.a_tilde == doctest::Approx(45.0));
  // u-range derives from the arclength range via s = sqrt(a_tilde) u
  CHECK(run.grid.u_max == doctest::Approx(2.0 * 3.141592653589793 / std::sqrt(45.0)));
  CHECK(run.grid.n_u == 64);

  RunConfig conflict;
  conflict.preset = Preset::fig2;
  conflict.epsilon = 1.0;
  CHECK_THROWS_AS(resolve(conflict), std::invalid_argument);

  RunConfig pinned;
  pinned.preset = Preset::fig3;
  pinned.lambda = +1;
  CHECK_THROWS_AS(resolve(pinned), std::invalid_argument);

  RunConfig overridden;
  overridden.preset = Preset::fig1;
  overridden.lambda = -1;  // explicit but identical: allowed
  CHECK_NOTHROW(resolve(overridden));

  RunConfig bare;
  bare.epsilon = 1.0;
  CHECK_THROWS_AS(resolve(bare), std::invalid_argument);  // nu missing

  RunConfig both_ranges;
  both_ranges.preset = Preset::fig2;
  both_ranges.u_range = {{-1.0, 1.0}};
  both_ranges.s_range = {{-1.0, 1.0}};
  CHECK_THROWS_AS(resolve(both_ranges), std::invalid_argument);

  RunConfig domain;
  domain.epsilon = 1.0;
  domain.nu = 0.5;
  domain.lambda = -1;
  CHECK_THROWS_AS(resolve(domain), std::domain_error);
}

TEST_CASE("negative controls build broken specs") {
  RunConfig cfg;
  cfg.preset = Preset::fig2;
  cfg.negative_control = "anticommuting";
  const ResolvedRun anti = resolve(cfg);
  CHECK(anti.spec.family.branch == -1);

  cfg.negative_control = "perturb-constants";
  const ResolvedRun pert = resolve(cfg);
  CHECK(pert.spec.consts.a_tilde == doctest::Approx(45.0 * 1.01));

  cfg.negative_control = "no-such-control";
  CHECK_THROWS_AS(resolve(cfg), std::invalid_argument);
}

TEST_CASE("output path uses HELIX_OUT_DIR") {
  ::setenv("HELIX_OUT_DIR", "/tmp/helix_test_out", 1);
  const std::string p = output_path("mesh.obj");
  CHECK(p == "/tmp/helix_test_out/mesh.obj");
  ::unsetenv("HELIX_OUT_DIR");
  const std::string q = output_path("mesh.obj");
  CHECK(q == "mesh.obj");
}

TEST_CASE("sample_and_export writes mesh, csv, and report") {
  RunConfig cfg;
  cfg.preset = Preset::fig2;
  cfg.n_u = 6;
  cfg.n_v = 5;
  cfg.out = "/tmp/helix_sae.obj";

  const ExportResult result = sample_and_export(cfg);
  REQUIRE(result.files.size() == 3);
  CHECK(result.files[0] == "/tmp/helix_sae.obj");
  CHECK(result.files[1] == "/tmp/helix_sae.csv");
  CHECK(result.files[2] == "/tmp/helix_sae_report.txt");
  CHECK(result.all_pass);
  CHECK(result.exit_code == 0);
  CHECK(result.mesh.vertices.size() == 30);
  CHECK(result.mesh.dropped_vertices == 0);
  CHECK(result.report.find("nu_constancy") != nullptr);

  std::ifstream obj(result.files[0]);
  REQUIRE(obj.good());
  std::string line;
  std::getline(obj, line);
  CHECK(line.rfind("v ", 0) == 0);
  std::ifstream csv(result.files[1]);
  std::getline(csv, line);
  CHECK(line == "u,v,F1,F2,F3,F4,nu");
  std::ifstream rep(result.files[2]);
  std::stringstream ss;
  ss << rep.rdbuf();
  CHECK(ss.str().find("ALL PASS") != std::string::npos);
  CHECK(ss.str().find("# pole=-x4") != std::string::npos);
  for (const auto& f : result.files) std::remove(f.c_str());
}

TEST_CASE("sample_and_export format and error handling") {
  RunConfig cfg;
  cfg.preset = Preset::fig2;
  cfg.n_u = 4;
  cfg.n_v = 4;
  cfg.out = "/tmp/helix_sae2.csv";
  cfg.format = "csv";
  const ExportResult csv_only = sample_and_export(cfg);
  CHECK(csv_only.files.size() == 2);  // the csv doubles as the mesh file
  CHECK(csv_only.files[0] == "/tmp/helix_sae2.csv");
  for (const auto& f : csv_only.files) std::remove(f.c_str());

  cfg.format = "stl";
  CHECK_THROWS_AS(sample_and_export(cfg), std::invalid_argument);

  cfg.format = "obj";
  cfg.out = "/proc/no_such_dir/mesh.obj";
  CHECK_THROWS_AS(sample_and_export(cfg), std::runtime_error);

  // negative controls propagate into a failing report and exit code
  cfg.out = "/tmp/helix_sae3.obj";
  cfg.negative_control = "perturb-constants";
  const ExportResult broken = sample_and_export(cfg);
  CHECK_FALSE(broken.all_pass);
  CHECK(broken.exit_code == 1);
  for (const auto& f : broken.files) std::remove(f.c_str());
}

TEST_CASE("default pole drops no vertices on any preset") {
  for (Preset p : {Preset::fig1, Preset::fig2, Preset::fig3, Preset::fig3bis}) {
    RunConfig cfg;
    cfg.preset = p;
    const ResolvedRun run = resolve(cfg);
    const MeshGrid mesh = build_mesh(run.spec, run.grid, cfg.pole);
    INFO("preset ", to_string(p));
    CHECK(mesh.dropped_vertices == 0);
    CHECK(mesh.vertices.size() == 64u * 64u);
  }
}
