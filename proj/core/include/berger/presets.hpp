#pragma once

#include <optional>
#include <string>
#include <utility>

#include "berger/export.hpp"
#include "berger/helix.hpp"
#include "berger/verify.hpp"

namespace berger {

// Bundled parameter sets reproducing the reference surfaces:
//   fig1    eps = 2, nu = 4,       spacelike (lambda = -1), family 1
//   fig2    eps = 1, nu = 2,       timelike  (lambda = +1), family 1
//   fig3    eps = 1, nu = sqrt 5,  spacelike (lambda = -1), family 2
//   fig3bis eps = 1, nu = 2,       timelike  (lambda = +1), family 2
enum class Preset { fig1, fig2, fig3, fig3bis };

std::optional<Preset> preset_from_string(const std::string& name);
std::string to_string(Preset p);

struct PresetData {
  BergerParams params;
  std::string family;     // "example1" | "example2"
  std::string xi2_shape;  // example1 profile: "linear" | "exp" | "sin"
  double s_min, s_max;    // u-range expressed in arclength of the directrix
  double v_min, v_max;
  bool lambda_overridable;  // fig1/fig2 admit both causal characters
};

PresetData preset_data(Preset p);

// Everything a run needs, as collected from CLI flags.  `resolve` applies
// preset defaults, rejects contradictory combinations, and builds the spec.
struct RunConfig {
  std::optional<Preset> preset;
  std::optional<double> epsilon;
  std::optional<double> nu;
  std::optional<int> lambda;
  std::string family = "example1";
  std::string xi2_shape = "linear";
  double d2 = 0.0, d3 = 0.0;  // example2 phase offsets
  std::optional<std::pair<double, double>> u_range;
  std::optional<std::pair<double, double>> s_range;
  std::optional<std::pair<double, double>> v_range;
  int n_u = 64, n_v = 64;
  Pole pole{};
  double tol_scale = 1.0;
  //  "" | "anticommuting" | "xi1-zero" | "perturb-constants"
  std::string negative_control;
  // sample_and_export only:
  std::string format = "obj";  // mesh format: "obj" | "ply" | "csv"
  std::string out;             // base output name; derived from the preset if empty
  std::string report_path;     // report file; "<base>_report.txt" if empty
};

struct ResolvedRun {
  HelixSpec spec;
  GridSpec grid;
  std::optional<Preset> preset;
};

// Throws std::invalid_argument on contradictory flags (usage errors) and
// std::domain_error on parameter-domain violations.
ResolvedRun resolve(const RunConfig& config);

// Joins HELIX_OUT_DIR (if set) with the file name; creates the directory.
std::string output_path(const std::string& filename);

struct ExportResult {
  std::vector<std::string> files;  // paths written, in emission order
  MeshGrid mesh;
  ResidualReport report;
  bool all_pass = false;
  int exit_code = 1;  // 0 iff every check passed
};

// Full sampling pipeline: resolve the run, build the projected mesh, write the
// mesh (config.format), a per-vertex CSV, and the verification report.  Output
// names derive from config.out (or the preset).  Throws std::runtime_error if
// a file cannot be written; resolve() errors propagate.
ExportResult sample_and_export(const RunConfig& config);

}  // namespace berger
