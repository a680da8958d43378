#pragma once

#include <functional>

#include "berger/ambient.hpp"
#include "berger/types.hpp"

namespace berger {

// Scalar profile curve v -> xi(v) with its derivative.  Curves are supplied
// with analytic derivatives; `numeric` wraps a bare function with a 5-point
// central-difference derivative for curves lacking one.
struct ScalarCurve {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  double eval(double v) const { return value(v); }
  double deriv(double v) const { return derivative(v); }

  static ScalarCurve constant(double c);
  static ScalarCurve linear(double slope, double offset = 0.0);
  static ScalarCurve make(std::function<double(double)> f,
                          std::function<double(double)> df);
  static ScalarCurve numeric(std::function<double(double)> f, double h = 1e-3);
};

// One-parameter family of isometries v -> Q(v) in SO(4) commuting (branch +1)
// or anticommuting (branch -1) with J1, parametrized by a fixed mixing angle
// xi and three profile curves (xi1, xi2, xi3).  Only the commuting branch
// preserves the Hopf field and can carry helix surfaces.
struct IsometryFamily {
  double xi = 1.5707963267948966;  // pi/2
  ScalarCurve xi1, xi2, xi3;
  int branch = +1;
  double v_min = -1.0, v_max = 1.0;  // family domain
  bool canonical_v = false;  // v-normalization with <F_v, F_v> = lambda + nu^2
};

// First row of Q:
//   r1 = (cos x1 cos x2, -cos x1 sin x2, sin x1 cos x3, -sin x1 sin x3).
Vec4 r1(double x1, double x2, double x3);

// Assemble Q(v) with rows
//   r1,  b J1 r1,  cos xi J2 r1 + sin xi J3 r1,  b (sin xi J2 r1 - cos xi J3 r1)
// for b = branch.  With require_commuting, a branch that fails to commute
// with J1 (within 1e-10) is a validation error.
Mat4 build_Q(const IsometryFamily& fam, double v, bool require_commuting = false);

// Analytic dQ/dv via the chain rule through dr1/dxi_i and the curves'
// derivatives.
Mat4 q_derivative(const IsometryFamily& fam, double v);

// Residual of the structural constraint cos^2(xi1) xi2' - sin^2(xi1) xi3' = 0
// that makes F(u, v) = Q(v) beta(u) a constant-angle immersion.
double compat_residual(const IsometryFamily& fam, double v);

// Worst-case diagnostics over an evenly spaced sample of the family domain.
struct FamilyCheck {
  double max_orthogonality = 0.0;  // ||Q^T Q - I||_inf
  double max_det_drift = 0.0;      // max |det Q - 1|
  double max_commutation = 0.0;    // ||Q J1 -+ J1 Q||_inf for the branch
  double max_compat = 0.0;         // max |compat_residual|

  bool ok(double tol_algebra = 1e-10, double tol_compat = 1e-9) const {
    return max_orthogonality <= tol_algebra && max_det_drift <= tol_algebra &&
           max_commutation <= tol_algebra && max_compat <= tol_compat;
  }
};
FamilyCheck validate_family(const IsometryFamily& fam, int samples = 257);

}  // namespace berger
