#include "berger/isometry.hpp"

#include <cmath>
#include <utility>

#include "jet_detail.hpp"

namespace berger {

ScalarCurve ScalarCurve::constant(double c) {
  return ScalarCurve{[c](double) { return c; }, [](double) { return 0.0; }};
}

ScalarCurve ScalarCurve::linear(double slope, double offset) {
  return ScalarCurve{[slope, offset](double v) { return slope * v + offset; },
                     [slope](double) { return slope; }};
}

ScalarCurve ScalarCurve::make(std::function<double(double)> f,
                              std::function<double(double)> df) {
  return ScalarCurve{std::move(f), std::move(df)};
}

ScalarCurve ScalarCurve::numeric(std::function<double(double)> f, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  auto df = [f, h](double v) {
    // 5-point central difference, O(h^4).
    return (-f(v + 2 * h) + 8 * f(v + h) - 8 * f(v - h) + f(v - 2 * h)) /
           (12.0 * h);
  };
  return ScalarCurve{std::move(f), std::move(df)};
}

Vec4 r1(double x1, double x2, double x3) {
  return detail::r1_row<double>(x1, x2, x3);
}

namespace {

void require_branch(const IsometryFamily& fam) {
  if (fam.branch != +1 && fam.branch != -1) {
    throw std::invalid_argument("family branch must be +1 or -1");
  }
}

}  // namespace

Mat4 build_Q(const IsometryFamily& fam, double v, bool require_commuting) {
  require_branch(fam);
  const Vec4 row = r1(fam.xi1.eval(v), fam.xi2.eval(v), fam.xi3.eval(v));
  const Mat4 q = detail::q_from_row<double>(fam.xi, fam.branch, row);
  if (require_commuting) {
    const double comm = (q * J1() - J1() * q).cwiseAbs().maxCoeff();
    if (comm > 1e-10) {
      throw std::invalid_argument(
          "isometry family anticommutes with J1 (commuting branch required "
          "for helix surfaces); residual " +
          std::to_string(comm));
    }
  }
  return q;
}

Mat4 q_derivative(const IsometryFamily& fam, double v) {
  require_branch(fam);
  const Vec4 drow = detail::r1_row_deriv<double>(
      fam.xi1.eval(v), fam.xi2.eval(v), fam.xi3.eval(v), fam.xi1.deriv(v),
      fam.xi2.deriv(v), fam.xi3.deriv(v));
  return detail::q_from_row<double>(fam.xi, fam.branch, drow);
}

double compat_residual(const IsometryFamily& fam, double v) {
  const double x1 = fam.xi1.eval(v);
  const double c = std::cos(x1), s = std::sin(x1);
  return c * c * fam.xi2.deriv(v) - s * s * fam.xi3.deriv(v);
}

FamilyCheck validate_family(const IsometryFamily& fam, int samples) {
  require_branch(fam);
  if (samples < 2) throw std::invalid_argument("family validation needs >= 2 samples");
  if (!(fam.v_min < fam.v_max)) {
    throw std::invalid_argument("family domain must satisfy v_min < v_max");
  }
  FamilyCheck out;
  const double sign = static_cast<double>(fam.branch);
  for (int i = 0; i < samples; ++i) {
    const double v =
        fam.v_min + (fam.v_max - fam.v_min) * i / double(samples - 1);
    const Mat4 q = build_Q(fam, v);
    out.max_orthogonality = std::max(
        out.max_orthogonality,
        (q.transpose() * q - Mat4::Identity()).cwiseAbs().maxCoeff());
    out.max_det_drift =
        std::max(out.max_det_drift, std::abs(q.determinant() - 1.0));
    // Commuting branch: Q J1 = J1 Q.  Anticommuting: Q J1 = -J1 Q.
    out.max_commutation =
        std::max(out.max_commutation,
                 (q * J1() - sign * J1() * q).cwiseAbs().maxCoeff());
    out.max_compat = std::max(out.max_compat, std::abs(compat_residual(fam, v)));
  }
  return out;
}

}  // namespace berger
