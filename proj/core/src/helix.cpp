#include "berger/helix.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "jet_detail.hpp"

namespace berger {

HelixConstants constants(const BergerParams& params) {
  require_epsilon(params);
  require_lambda(params);
  if (params.lambda == -1 && !(std::abs(params.nu) > 1.0)) {
    throw std::domain_error(
        "spacelike constant-angle surfaces require |nu| > 1 (for |nu| <= 1 "
        "the horizontal distribution is not integrable); got nu = " +
        std::to_string(params.nu));
  }
  if (params.lambda == +1 && params.nu == 0.0) {
    throw std::domain_error(
        "timelike constant-angle surfaces require nu != 0 (nu = 0 is a Hopf "
        "tube, excluded)");
  }
  const auto c = detail::beta_consts<long double>(params.epsilon, params.nu,
                                                 params.lambda);
  HelixConstants out;
  out.params = params;
  out.B = static_cast<double>(c.B);
  out.a_tilde = static_cast<double>(c.a);
  out.b_tilde = static_cast<double>(c.b);
  out.alpha1 = static_cast<double>(c.al1);
  out.alpha2 = static_cast<double>(c.al2);
  out.g11 = static_cast<double>(c.g11);
  out.g33 = static_cast<double>(c.g33);
  out.d = static_cast<double>(c.d);
  return out;
}

AmbientPoint beta(const HelixConstants& c, double u) {
  const auto bc = detail::beta_consts<long double>(c.params.epsilon, c.params.nu,
                                                   c.params.lambda);
  const auto b = detail::beta_jet<long double>(bc, u, 0);
  return AmbientPoint(b.cast<double>());
}

AmbientPoint beta_arclength(const HelixConstants& c, double s) {
  const long double d = detail::beta_consts<long double>(
                            c.params.epsilon, c.params.nu, c.params.lambda)
                            .d;
  const long double lam = c.params.lambda;
  const long double n = std::sqrt(1.0L + d * d);
  const long double sl = s;
  return AmbientPoint(Vec4(
      static_cast<double>(d * std::cos(sl / d) / n),
      static_cast<double>(lam * d * std::sin(sl / d) / n),
      static_cast<double>(std::cos(d * sl) / n),
      static_cast<double>(lam * std::sin(d * sl) / n)));
}

HelixSpec make_helix_spec(const BergerParams& params, IsometryFamily family,
                          bool validate) {
  HelixSpec spec;
  spec.params = params;
  spec.consts = constants(params);
  spec.family = std::move(family);
  if (validate) {
    const FamilyCheck check = validate_family(spec.family);
    if (check.max_orthogonality > 1e-10 || check.max_det_drift > 1e-10) {
      throw std::invalid_argument(
          "isometry family is not special orthogonal (worst orthogonality " +
          std::to_string(check.max_orthogonality) + ", det drift " +
          std::to_string(check.max_det_drift) + ")");
    }
    if (spec.family.branch != +1 || check.max_commutation > 1e-10) {
      throw std::invalid_argument(
          "isometry family anticommutes with J1; helix surfaces require the "
          "commuting branch");
    }
    if (check.max_compat > 1e-9) {
      throw std::invalid_argument(
          "isometry family violates the compatibility constraint "
          "cos^2(xi1) xi2' = sin^2(xi1) xi3' (worst residual " +
          std::to_string(check.max_compat) + ")");
    }
  }
  return spec;
}

HelixSpec example1_spec(const BergerParams& params, ScalarCurve xi2,
                        double v_min, double v_max) {
  IsometryFamily fam;
  fam.xi = std::numbers::pi / 2;
  fam.xi1 = ScalarCurve::constant(std::numbers::pi / 4);
  fam.xi2 = xi2;
  fam.xi3 = std::move(xi2);
  fam.branch = +1;
  fam.v_min = v_min;
  fam.v_max = v_max;
  fam.canonical_v = false;
  return make_helix_spec(params, std::move(fam));
}

HelixSpec example2_spec(const BergerParams& params, double d2, double d3,
                        double v_min, double v_max) {
  const HelixConstants c = constants(params);
  const double speed = std::sqrt(params.lambda + params.nu * params.nu);
  IsometryFamily fam;
  fam.xi = std::numbers::pi / 2;
  fam.xi1 = ScalarCurve::constant(std::atan2(1.0, c.d));
  fam.xi2 = ScalarCurve::linear(speed / c.d, d2);
  fam.xi3 = ScalarCurve::linear(speed * c.d, d3);
  fam.branch = +1;
  fam.v_min = v_min;
  fam.v_max = v_max;
  fam.canonical_v = true;
  return make_helix_spec(params, std::move(fam));
}

SurfaceJet surface_jet(const HelixSpec& spec, double u, double v) {
  const double span = spec.family.v_max - spec.family.v_min;
  const double pad = spec.domain_pad * (span > 0.0 ? span : 1.0);
  if (v < spec.family.v_min - pad || v > spec.family.v_max + pad) {
    throw std::domain_error("v = " + std::to_string(v) +
                            " lies outside the family domain [" +
                            std::to_string(spec.family.v_min) + ", " +
                            std::to_string(spec.family.v_max) + "]");
  }

  using LD = long double;
  const auto bc = detail::beta_consts<LD>(spec.params.epsilon, spec.params.nu,
                                          spec.params.lambda);
  const LD x1 = spec.family.xi1.eval(v);
  const LD x2 = spec.family.xi2.eval(v);
  const LD x3 = spec.family.xi3.eval(v);
  const auto row = detail::r1_row<LD>(x1, x2, x3);
  const auto drow = detail::r1_row_deriv<LD>(
      x1, x2, x3, spec.family.xi1.deriv(v), spec.family.xi2.deriv(v),
      spec.family.xi3.deriv(v));
  const auto q = detail::q_from_row<LD>(spec.family.xi, spec.family.branch, row);
  const auto dq =
      detail::q_from_row<LD>(spec.family.xi, spec.family.branch, drow);

  SurfaceJet jet;
  jet.u = u;
  jet.v = v;
  const auto b0 = detail::beta_jet<LD>(bc, u, 0);
  jet.F = (q * b0).cast<double>();
  jet.Fu = (q * detail::beta_jet<LD>(bc, u, 1)).cast<double>();
  jet.Fuu = (q * detail::beta_jet<LD>(bc, u, 2)).cast<double>();
  jet.Fuuu = (q * detail::beta_jet<LD>(bc, u, 3)).cast<double>();
  jet.Fuuuu = (q * detail::beta_jet<LD>(bc, u, 4)).cast<double>();
  jet.Fv = (dq * b0).cast<double>();
  return jet;
}

}  // namespace berger
