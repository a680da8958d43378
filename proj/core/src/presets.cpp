#include "berger/presets.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace berger {

namespace {

constexpr double kPi = std::numbers::pi;

ScalarCurve xi2_curve(const std::string& shape) {
  if (shape == "linear") return ScalarCurve::linear(1.0);
  if (shape == "exp") {
    return ScalarCurve::make([](double v) { return std::exp(v); },
                             [](double v) { return std::exp(v); });
  }
  if (shape == "sin") {
    return ScalarCurve::make([](double v) { return std::sin(v); },
                             [](double v) { return std::cos(v); });
  }
  throw std::invalid_argument("unknown xi2 profile '" + shape +
                              "' (expected linear, exp, or sin)");
}

}  // namespace

std::optional<Preset> preset_from_string(const std::string& name) {
  if (name == "fig1") return Preset::fig1;
  if (name == "fig2") return Preset::fig2;
  if (name == "fig3") return Preset::fig3;
  if (name == "fig3bis") return Preset::fig3bis;
  return std::nullopt;
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::fig1: return "fig1";
    case Preset::fig2: return "fig2";
    case Preset::fig3: return "fig3";
    case Preset::fig3bis: return "fig3bis";
  }
  return "?";
}

PresetData preset_data(Preset p) {
  switch (p) {
    case Preset::fig1:
      return {{2.0, 4.0, -1}, "example1", "linear",
              -4.0 * kPi, 4.0 * kPi, -2.0 * kPi, 2.0 * kPi, true};
    case Preset::fig2:
      return {{1.0, 2.0, +1}, "example1", "exp",
              -2.0 * kPi, 2.0 * kPi, -2.0, 2.0, true};
    case Preset::fig3:
      return {{1.0, std::sqrt(5.0), -1}, "example2", "",
              -2.0 * kPi, 2.0 * kPi, -kPi, kPi, false};
    case Preset::fig3bis:
      return {{1.0, 2.0, +1}, "example2", "",
              -2.0 * kPi, 2.0 * kPi, -kPi, kPi, false};
  }
  throw std::invalid_argument("unknown preset");
}

ResolvedRun resolve(const RunConfig& config) {
  BergerParams params;
  std::string family = config.family;
  std::string xi2_shape = config.xi2_shape;
  double s_min = -2.0 * kPi, s_max = 2.0 * kPi;
  double v_min = -1.0, v_max = 1.0;

  if (config.preset) {
    if (config.epsilon || config.nu) {
      throw std::invalid_argument(
          "--preset fixes epsilon and nu; do not combine it with -e/--epsilon "
          "or -n/--nu");
    }
    const PresetData data = preset_data(*config.preset);
    params = data.params;
    family = data.family;
    if (!data.xi2_shape.empty()) xi2_shape = data.xi2_shape;
    s_min = data.s_min;
    s_max = data.s_max;
    v_min = data.v_min;
    v_max = data.v_max;
    if (config.lambda) {
      if (!data.lambda_overridable && *config.lambda != params.lambda) {
        throw std::invalid_argument("preset " + to_string(*config.preset) +
                                    " pins lambda = " +
                                    std::to_string(params.lambda) +
                                    "; -l cannot override it");
      }
      params.lambda = *config.lambda;
    }
  } else {
    if (!config.epsilon || !config.nu) {
      throw std::invalid_argument(
          "specify either --preset or both -e/--epsilon and -n/--nu");
    }
    params.epsilon = *config.epsilon;
    params.nu = *config.nu;
    params.lambda = config.lambda.value_or(+1);
  }

  if (config.u_range && config.s_range) {
    throw std::invalid_argument(
        "specify either --u-range or --s-range, not both");
  }
  if (config.v_range) {
    v_min = config.v_range->first;
    v_max = config.v_range->second;
  }
  if (!(v_min < v_max)) {
    throw std::invalid_argument("v-range must satisfy v_min < v_max");
  }
  if (config.n_u < 2 || config.n_v < 2) {
    throw std::invalid_argument("grid must be at least 2x2");
  }

  HelixSpec spec;
  const bool validate = config.negative_control.empty() ||
                        config.negative_control == "perturb-constants";
  if (config.negative_control == "anticommuting") {
    // Deliberately broken family: the J1-anticommuting branch of example 1.
    IsometryFamily fam;
    fam.xi1 = ScalarCurve::constant(kPi / 4.0);
    fam.xi2 = xi2_curve(xi2_shape);
    fam.xi3 = fam.xi2;
    fam.branch = -1;
    fam.v_min = v_min;
    fam.v_max = v_max;
    spec = make_helix_spec(params, std::move(fam), false);
  } else if (config.negative_control == "xi1-zero") {
    // Deliberately broken family: violates cos^2(xi1) xi2' = sin^2(xi1) xi3'.
    IsometryFamily fam;
    fam.xi1 = ScalarCurve::constant(0.0);
    fam.xi2 = ScalarCurve::linear(1.0);
    fam.xi3 = ScalarCurve::constant(0.0);
    fam.v_min = v_min;
    fam.v_max = v_max;
    spec = make_helix_spec(params, std::move(fam), false);
  } else if (validate) {
    if (family == "example1") {
      spec = example1_spec(params, xi2_curve(xi2_shape), v_min, v_max);
    } else if (family == "example2") {
      spec = example2_spec(params, config.d2, config.d3, v_min, v_max);
    } else {
      throw std::invalid_argument("unknown family '" + family +
                                  "' (expected example1 or example2)");
    }
  } else {
    throw std::invalid_argument(
        "unknown negative control '" + config.negative_control +
        "' (expected anticommuting, xi1-zero, or perturb-constants)");
  }

  if (config.negative_control == "perturb-constants") {
    // 1% shift of the structural constants: every jet identity must break.
    spec.consts.a_tilde *= 1.01;
    spec.consts.b_tilde *= 1.01;
  }

  GridSpec grid;
  const double root_a = std::sqrt(spec.consts.a_tilde);
  if (config.u_range) {
    grid.u_min = config.u_range->first;
    grid.u_max = config.u_range->second;
  } else if (config.s_range) {
    grid.u_min = config.s_range->first / root_a;
    grid.u_max = config.s_range->second / root_a;
  } else {
    grid.u_min = s_min / root_a;
    grid.u_max = s_max / root_a;
  }
  if (!(grid.u_min < grid.u_max)) {
    throw std::invalid_argument("u-range must be increasing");
  }
  grid.v_min = v_min;
  grid.v_max = v_max;
  grid.n_u = config.n_u;
  grid.n_v = config.n_v;

  return {std::move(spec), grid, config.preset};
}

std::string output_path(const std::string& filename) {
  namespace fs = std::filesystem;
  fs::path p(filename);
  if (!p.is_absolute()) {
    if (const char* dir = std::getenv("HELIX_OUT_DIR"); dir && *dir) {
      p = fs::path(dir) / p;
    }
  }
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  return p.string();
}

ExportResult sample_and_export(const RunConfig& config) {
  if (config.format != "obj" && config.format != "ply" &&
      config.format != "csv") {
    throw std::invalid_argument("unknown format '" + config.format +
                                "' (expected obj, ply, csv)");
  }
  const ResolvedRun run = resolve(config);

  ExportResult result;
  result.mesh = build_mesh(run.spec, run.grid, config.pole);

  ReportOptions ropts;
  ropts.tol_scale = config.tol_scale;
  result.report = full_report(run.spec, run.grid, ropts);

  char buf[64];
  auto add = [&](const std::string& k, const std::string& v) {
    result.report.metadata.emplace_back(k, v);
  };
  if (run.preset) add("preset", to_string(*run.preset));
  std::snprintf(buf, sizeof(buf), "%.10g", run.spec.params.epsilon);
  add("epsilon", buf);
  std::snprintf(buf, sizeof(buf), "%.10g", run.spec.params.nu);
  add("nu", buf);
  add("lambda", run.spec.params.lambda > 0 ? "+1" : "-1");
  add("grid", std::to_string(run.grid.n_u) + "x" + std::to_string(run.grid.n_v));
  add("pole", std::string(config.pole.sign < 0 ? "-" : "+") + "x" +
                  std::to_string(config.pole.axis));
  if (!config.negative_control.empty()) {
    add("negative_control", config.negative_control);
  }
  result.all_pass = result.report.all_pass();
  result.exit_code = result.all_pass ? 0 : 1;

  std::string base = config.out;
  if (base.empty()) {
    base = "helix";
    if (run.preset) base += "_" + to_string(*run.preset);
  } else if (const auto dot = base.rfind('.'); dot != std::string::npos) {
    const std::string ext = base.substr(dot + 1);
    if (ext == "obj" || ext == "ply" || ext == "csv") base.resize(dot);
  }

  auto emit = [&](const std::string& filename, auto&& writer) {
    const std::string path = output_path(filename);
    std::ofstream os(path);
    if (!os) {
      throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    writer(os);
    os.close();
    if (!os) throw std::runtime_error("failed writing '" + path + "'");
    result.files.push_back(path);
  };

  if (config.format == "obj") {
    emit(base + ".obj", [&](std::ostream& os) { write_obj(os, result.mesh); });
  } else if (config.format == "ply") {
    emit(base + ".ply", [&](std::ostream& os) { write_ply(os, result.mesh); });
  }
  emit(base + ".csv", [&](std::ostream& os) { write_csv(os, result.mesh); });
  const std::string report_name =
      config.report_path.empty() ? base + "_report.txt" : config.report_path;
  emit(report_name,
       [&](std::ostream& os) { write_report(os, result.report); });
  return result;
}

}  // namespace berger
