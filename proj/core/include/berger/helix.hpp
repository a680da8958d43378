#pragma once

#include "berger/isometry.hpp"
#include "berger/types.hpp"

namespace berger {

// Structural constants of a constant-angle surface with angle value nu and
// normal causal sign lambda:
//   B       = 1 + lambda nu^2 (1 + eps^2)                (lambda B > 0 always)
//   a_tilde = lambda eps^-2 B (lambda + nu^2)            (= <F_u, F_u> Euclidean)
//   b_tilde = -2 eps^-1 B
//   alpha_{1,2} = eps^-1 (lambda B +- eps |nu| sqrt(lambda B))
//   g11 = lambda eps / (2B) alpha2 = d^2 / (1 + d^2)
//   g33 = lambda eps / (2B) alpha1 = 1  / (1 + d^2)
//   d   = sqrt(alpha2 / alpha1) in (0, 1)
// They satisfy alpha1 alpha2 = a_tilde, alpha1^2 + alpha2^2 = b_tilde^2 - 2 a_tilde,
// and g11 + g33 = 1.
struct HelixConstants {
  BergerParams params;
  double B = 0.0;
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double g11 = 0.0;
  double g33 = 0.0;
  double d = 0.0;
};

// Validates the parameter domain: eps > 0; lambda = -1 (spacelike surface)
// requires |nu| > 1, lambda = +1 (timelike surface) requires nu != 0.
HelixConstants constants(const BergerParams& params);

// The directrix curve on the torus S^1(sqrt(g11)) x S^1(sqrt(g33)):
//   beta(u) = (sqrt(g11) cos(alpha1 u), lambda sqrt(g11) sin(alpha1 u),
//              sqrt(g33) cos(alpha2 u), lambda sqrt(g33) sin(alpha2 u)).
// Its Euclidean speed is sqrt(a_tilde).
AmbientPoint beta(const HelixConstants& c, double u);

// Unit-speed reparametrization, s = sqrt(a_tilde) u:
//   beta(s) = (d cos(s/d), lambda d sin(s/d), cos(d s), lambda sin(d s)) / sqrt(1 + d^2).
AmbientPoint beta_arclength(const HelixConstants& c, double s);

// A constant-angle surface F(u, v) = Q(v) beta(u): validated parameters plus
// the isometry family sweeping the directrix.
struct HelixSpec {
  BergerParams params;
  HelixConstants consts;
  IsometryFamily family;
  // Fractional pad on [v_min, v_max] accepted by surface_jet so that
  // finite-difference stencils at the domain edge stay legal.
  double domain_pad = 0.02;
};

// Builds and (by default) validates a helix spec: parameter domain, family
// orthogonality/determinant/commutation, and the compatibility constraint.
// validate = false skips the family checks (used for negative controls).
HelixSpec make_helix_spec(const BergerParams& params, IsometryFamily family,
                          bool validate = true);

// Family with xi = pi/2, xi1 = pi/4 and xi3 = xi2 (any shared profile curve
// satisfies the compatibility constraint).
HelixSpec example1_spec(const BergerParams& params, ScalarCurve xi2,
                        double v_min, double v_max);

// Family with constant xi1 = arctan(1/d) and linear angles
//   xi2 = sqrt(lambda + nu^2)/d v + d2,  xi3 = d sqrt(lambda + nu^2) v + d3;
// this is the canonical v-normalization with <F_v, F_v> = lambda + nu^2.
HelixSpec example2_spec(const BergerParams& params, double d2, double d3,
                        double v_min, double v_max);

// Derivatives of F at one parameter point.  Computed in extended precision
// and rounded once on storage.
struct SurfaceJet {
  double u = 0.0;
  double v = 0.0;
  Vec4 F, Fu, Fuu, Fuuu, Fuuuu, Fv;
};

// Evaluates the jet; v outside the (padded) family domain is a domain error.
SurfaceJet surface_jet(const HelixSpec& spec, double u, double v);

}  // namespace berger
