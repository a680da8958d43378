#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berger/ambient.hpp"
#include "berger/helix.hpp"

namespace berger {

// Oriented unit normal of the immersion at one jet, with the derived angle
// data.  The decomposition is
//   N = -lambda nu E1 + sqrt(lambda + nu^2) (cos phi E2 + sin phi E3),
// nu = lambda g(N, E1).  The orientation is fixed deterministically by
// aligning sign(nu) with sign(params.nu) (nu >= 0 when params.nu == 0).
struct NormalData {
  TangentVector N;
  FrameCoefficients coeffs;
  double nu = 0.0;
  double phi = 0.0;
  int lambda_actual = 0;  // causal sign of g(N, N) as built
};

// Throws surface_rank_error when F_u and F_v are parallel and
// degenerate_normal_error when their wedge is lightlike (causal-type change).
NormalData unit_normal(const SurfaceJet& jet, const BergerParams& params);

// nu = lambda g(N, E1) of the oriented normal.
double angle_function(const SurfaceJet& jet, const BergerParams& params);

// Hyperbolic angle between N and E1: arcosh|nu| for spacelike surfaces
// (lambda = -1, needs |nu| > 1), arsinh(nu) for timelike ones (lambda = +1).
double hyperbolic_angle(double nu, int lambda);

using JetField = std::function<SurfaceJet(double, double)>;
JetField jet_field(const HelixSpec& spec);

// Shape operator in the tangent basis (T, JT), T = F_u, JT = N ^ T, columns
// holding the images of T and JT.  For a constant-angle surface the matrix is
//   [ 0   -lambda eps ]
//   [ eps  mu         ].
struct ShapeData {
  Mat2 matrix = Mat2::Zero();
  double mu = 0.0;
  double K = 0.0;          // extrinsic Gauss curvature, Kbar + lambda det A
  double g_tt = 0.0;       // g(T, T), needed by downstream identities
  double nu = 0.0;         // measured angle at the point
  Eigen::Vector2d jt_dir = Eigen::Vector2d::Zero();  // JT in (du, dv) coordinates
  bool fd_reliable = true; // Richardson consistency estimate within bounds
};
ShapeData shape_operator(const JetField& surface, double u, double v,
                         const BergerParams& params, const FdOptions& fd = {});

// K = Kbar + lambda det A with Kbar = -eps^2 - 4 lambda nu^2 (1 + eps^2);
// for constant-angle surfaces this collapses to -4 lambda (1 + eps^2) nu^2.
double gauss_curvature(const ShapeData& shape, const BergerParams& params,
                       double nu);

// Euclidean norm of F_uuuu + (b_tilde^2 - 2 a_tilde) F_uu + a_tilde^2 F,
// recombined in extended precision.
double check_ode(const SurfaceJet& jet, const HelixConstants& c);

// One record per scalar product relation of the jet; residuals are relative
// to the product magnitude, |got - want| / max(1, |x||y|).
struct ProductCheck {
  std::string name;
  double got = 0.0;
  double want = 0.0;
  double residual = 0.0;
};
std::vector<ProductCheck> check_products(const SurfaceJet& jet,
                                         const HelixConstants& c);

// The two first-order conditions characterizing helix immersions:
//   g(E1, F_u) = -(1 + lambda nu^2)   and   g(F_u, F_v) = g(E1, F_v).
// Returns (residual_1, residual_2).
std::pair<double, double> check_helix_conditions(const SurfaceJet& jet,
                                                 const BergerParams& params);

// Residual of mu_u + nu mu^2 + 4 lambda nu B = 0.  Near the poles of
// mu = 2 sqrt(lambda B) tan(...) the finite differences are meaningless; such
// points are skipped (empty optional) rather than failed: |mu| > 4 sqrt(lambda B)
// at the point, or 1.5x that at any stencil point.
std::optional<double> check_mu_pde(const JetField& surface, double u, double v,
                                   const BergerParams& params,
                                   const FdOptions& fd = {});

// Finite-difference residuals of the normal phase equations
//   phi_u = -2 eps^-1 B (= b_tilde)  and  phi_v = 0,
// with nearest-branch unwrapping of the atan2 phase.
struct PhaseCheck {
  double phi_u_residual = 0.0;
  double phi_v_residual = 0.0;
  double phi_u = 0.0;  // measured derivative
};
PhaseCheck check_normal_phase(const JetField& surface, double u, double v,
                              const BergerParams& params,
                              const HelixConstants& c, const FdOptions& fd = {});

// Invariants of the directrix curve.
//   speed_eps:   g_eps-norm of the unit-Euclidean-speed tangent, eps / sqrt(lambda B)
//   helix_angle: g(beta', E1) / speed_eps = -lambda sqrt(lambda + nu^2)
//   kappa_g:     geodesic curvature in the round sphere, 2 eps |nu| / sqrt(lambda + nu^2),
//                equal to (1 - d^2) / d
//   tau_g:       |geodesic torsion| = 1
struct CurveMetrics {
  double speed_eps = 0.0;
  double helix_angle = 0.0;
  double kappa_g = 0.0;
  double tau_g = 0.0;
};
CurveMetrics curve_metrics(const HelixConstants& c);

// Independent numeric evaluation of the same metrics from Frenet data of the
// arclength directrix (5-point stencils, round-sphere covariant derivative).
CurveMetrics frenet_curve_metrics(const HelixConstants& c, double h = 1e-3,
                                  double s0 = 0.3);

// Grid verification.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  double worst_u = 0.0;
  double worst_v = 0.0;
};

struct GridSpec {
  double u_min = 0.0, u_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
  int n_u = 64;
  int n_v = 64;
};

struct ReportOptions {
  double tol_scale = 1.0;  // multiplies every default tolerance
  FdOptions fd{};
};

struct ResidualReport {
  std::vector<CheckResult> checks;
  GridSpec grid;
  int samples = 0;
  int degenerate_normals = 0;  // rank/lightlike normal points (recorded, not fatal)
  int mu_skipped = 0;          // mu-PDE points skipped near tan poles
  int shape_skipped = 0;       // shape stencils hitting degenerate points
  int shape_unreliable = 0;    // Richardson consistency flagged the step size
  std::vector<std::pair<std::string, std::string>> metadata;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

// Runs every identity check over an evenly spaced inclusive grid.  Per-point
// degeneracies are recorded in the counters; an empty grid passes vacuously.
// Deterministic: fixed check order, fixed traversal order, no randomness.
ResidualReport full_report(const HelixSpec& spec, const GridSpec& grid,
                           const ReportOptions& opts = {});

}  // namespace berger
