// helix: constant-angle surfaces in the Lorentzian Berger sphere.
//
//   helix constants --preset fig2
//   helix surface   --preset fig1 --format obj --out fig1.obj
//   helix verify    --preset fig3 --grid 64x64
//   helix curve     -e 1 -n 2 -l timelike

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "berger/export.hpp"
#include "berger/presets.hpp"

namespace {

using namespace berger;

struct CliOptions {
  RunConfig run;
  std::string lambda_word;
  std::string preset_word;
  std::string u_range_word, s_range_word, v_range_word;
  std::string grid_word;
  std::string pole_word;
  std::string format = "obj";
  std::string out;
  std::string report_file;
};

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument(flag + " expects the form a:b");
  }
  try {
    size_t used = 0;
    const double lo = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("");
    const std::string hi_text = text.substr(colon + 1);
    const double hi = std::stod(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + " expects the form a:b with numbers");
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) {
    throw std::invalid_argument("--grid expects the form NxM, e.g. 64x64");
  }
  try {
    size_t used = 0;
    const int n = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("");
    const std::string m_text = text.substr(x + 1);
    const int m = std::stoi(m_text, &used);
    if (used != m_text.size()) throw std::invalid_argument("");
    return {n, m};
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid expects the form NxM, e.g. 64x64");
  }
}

int parse_lambda(const std::string& word) {
  if (word == "+1" || word == "1" || word == "timelike") return +1;
  if (word == "-1" || word == "spacelike") return -1;
  throw std::invalid_argument(
      "--lambda expects +1, -1, timelike, or spacelike");
}

Pole parse_pole(const std::string& word) {
  if (word.size() != 2 || word[0] < '1' || word[0] > '4' ||
      (word[1] != '+' && word[1] != '-')) {
    throw std::invalid_argument("--pole expects one of 1+,1-,...,4+,4-");
  }
  return Pole{word[0] - '0', word[1] == '+' ? +1 : -1};
}

void add_surface_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("-e,--epsilon", opt.run.epsilon,
                  "Berger deformation parameter (> 0)");
  cmd->add_option("-n,--nu", opt.run.nu, "constant angle function value");
  cmd->add_option("-l,--lambda", opt.lambda_word,
                  "causal sign of the normal: +1|timelike or -1|spacelike");
  cmd->add_option("--preset", opt.preset_word,
                  "parameter preset: fig1, fig2, fig3, fig3bis");
  cmd->add_option("--family", opt.run.family,
                  "isometry family: example1 or example2");
  cmd->add_option("--xi2", opt.run.xi2_shape,
                  "example1 profile curve: linear, exp, or sin");
  cmd->add_option("--d2", opt.run.d2, "example2 xi2 phase offset");
  cmd->add_option("--d3", opt.run.d3, "example2 xi3 phase offset");
  cmd->add_option("--u-range", opt.u_range_word, "u interval as a:b");
  cmd->add_option("--s-range", opt.s_range_word,
                  "u interval in directrix arclength, as a:b");
  cmd->add_option("--v-range", opt.v_range_word, "v interval as a:b");
  cmd->add_option("--grid", opt.grid_word, "sample counts as NxM (default 64x64)");
}

void fill_config(CliOptions& opt) {
  if (!opt.lambda_word.empty()) opt.run.lambda = parse_lambda(opt.lambda_word);
  if (!opt.preset_word.empty()) {
    const auto p = preset_from_string(opt.preset_word);
    if (!p) {
      throw std::invalid_argument("unknown preset '" + opt.preset_word +
                                  "' (expected fig1, fig2, fig3, or fig3bis)");
    }
    opt.run.preset = p;
  }
  if (!opt.u_range_word.empty()) {
    opt.run.u_range = parse_range(opt.u_range_word, "--u-range");
  }
  if (!opt.s_range_word.empty()) {
    opt.run.s_range = parse_range(opt.s_range_word, "--s-range");
  }
  if (!opt.v_range_word.empty()) {
    opt.run.v_range = parse_range(opt.v_range_word, "--v-range");
  }
  if (!opt.grid_word.empty()) {
    std::tie(opt.run.n_u, opt.run.n_v) = parse_grid(opt.grid_word);
  }
  if (!opt.pole_word.empty()) opt.run.pole = parse_pole(opt.pole_word);
}

void print_kv(const char* name, double value) {
  std::printf("%s = %.10g\n", name, value);
}

int run_constants(CliOptions& opt) {
  fill_config(opt);
  const ResolvedRun run = resolve(opt.run);
  const HelixConstants& c = run.spec.consts;
  print_kv("epsilon", c.params.epsilon);
  print_kv("nu", c.params.nu);
  std::printf("lambda = %+d\n", c.params.lambda);
  print_kv("B", c.B);
  print_kv("a_tilde", c.a_tilde);
  print_kv("b_tilde", c.b_tilde);
  print_kv("alpha1", c.alpha1);
  print_kv("alpha2", c.alpha2);
  print_kv("g11", c.g11);
  print_kv("g33", c.g33);
  print_kv("d", c.d);
  return 0;
}

int run_curve(CliOptions& opt) {
  fill_config(opt);
  const ResolvedRun run = resolve(opt.run);
  const HelixConstants& c = run.spec.consts;
  const CurveMetrics m = curve_metrics(c);
  std::printf("speed_eps = %.10f\n", m.speed_eps);
  std::printf("helix_angle = %.10f\n", m.helix_angle);
  std::printf("kappa_g = %.10f\n", m.kappa_g);
  std::printf("tau_g = %.10g\n", m.tau_g);
  std::printf("hyperbolic_angle = %.10f\n",
              hyperbolic_angle(c.params.nu, c.params.lambda));
  return 0;
}

int run_surface(CliOptions& opt) {
  fill_config(opt);
  opt.run.format = opt.format;
  opt.run.out = opt.out;
  opt.run.report_path = opt.report_file;
  const ExportResult result = sample_and_export(opt.run);
  for (std::size_t i = 0; i < result.files.size(); ++i) {
    if (i == 0) {
      std::printf("wrote %s (%zu vertices, %zu faces, %d dropped)\n",
                  result.files[i].c_str(), result.mesh.vertices.size(),
                  result.mesh.faces.size(), result.mesh.dropped_vertices);
    } else {
      std::printf("wrote %s\n", result.files[i].c_str());
    }
  }
  std::printf("checks: %s\n", result.all_pass ? "ALL PASS" : "FAILURES PRESENT");
  return result.exit_code;
}

int run_verify(CliOptions& opt) {
  fill_config(opt);
  const ResolvedRun run = resolve(opt.run);
  ReportOptions ropts;
  ropts.tol_scale = opt.run.tol_scale;
  ResidualReport report = full_report(run.spec, run.grid, ropts);

  char buf[64];
  auto add = [&](const std::string& k, const std::string& v) {
    report.metadata.emplace_back(k, v);
  };
  if (run.preset) add("preset", to_string(*run.preset));
  std::snprintf(buf, sizeof(buf), "%.10g", run.spec.params.epsilon);
  add("epsilon", buf);
  std::snprintf(buf, sizeof(buf), "%.10g", run.spec.params.nu);
  add("nu", buf);
  add("lambda", run.spec.params.lambda > 0 ? "+1" : "-1");
  add("grid", std::to_string(run.grid.n_u) + "x" + std::to_string(run.grid.n_v));
  if (!opt.run.negative_control.empty()) {
    add("negative_control", opt.run.negative_control);
  }

  std::ostringstream text;
  write_report(text, report);
  std::fputs(text.str().c_str(), stdout);
  if (!opt.report_file.empty()) {
    const std::string path = output_path(opt.report_file);
    std::ofstream os(path);
    if (!os) {
      std::fprintf(stderr, "error: cannot open '%s' for writing\n",
                   path.c_str());
      return 2;
    }
    os << text.str();
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constant-angle (helix) surfaces in the Lorentzian Berger sphere"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* constants_cmd =
      app.add_subcommand("constants", "print the structural constants");
  add_surface_options(constants_cmd, opt);

  CLI::App* curve_cmd =
      app.add_subcommand("curve", "print metric invariants of the directrix");
  add_surface_options(curve_cmd, opt);

  CLI::App* surface_cmd =
      app.add_subcommand("surface",
                         "sample the surface and write mesh, CSV, and report");
  add_surface_options(surface_cmd, opt);
  surface_cmd->add_option("--pole", opt.pole_word,
                          "stereographic pole, e.g. 4- (default) or 1+");
  surface_cmd->add_option("--format", opt.format, "obj, ply, or csv");
  surface_cmd->add_option("-o,--out", opt.out, "output file name");
  surface_cmd->add_option("--tol", opt.run.tol_scale,
                          "multiplier applied to every tolerance");
  surface_cmd->add_option("--report", opt.report_file,
                          "verification report file name");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check every structural identity on a parameter grid");
  add_surface_options(verify_cmd, opt);
  verify_cmd->add_option("--tol", opt.run.tol_scale,
                         "multiplier applied to every tolerance");
  verify_cmd->add_option("--report", opt.report_file,
                         "also write the report to this file");
  verify_cmd->add_option(
      "--negative-control", opt.run.negative_control,
      "run a deliberately broken configuration: anticommuting, xi1-zero, or "
      "perturb-constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constants_cmd->parsed()) return run_constants(opt);
    if (curve_cmd->parsed()) return run_curve(opt);
    if (surface_cmd->parsed()) return run_surface(opt);
    if (verify_cmd->parsed()) return run_verify(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
