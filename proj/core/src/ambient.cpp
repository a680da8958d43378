#include "berger/ambient.hpp"

#include <cmath>

namespace berger {

namespace {

Mat4 make_j1() {
  Mat4 j;
  // clang-format off
  j <<  0, -1,  0,  0,
        1,  0,  0,  0,
        0,  0,  0, -1,
        0,  0,  1,  0;
  // clang-format on
  return j;
}

Mat4 make_j2() {
  Mat4 j;
  // clang-format off
  j <<  0,  0,  0, -1,
        0,  0, -1,  0,
        0,  1,  0,  0,
        1,  0,  0,  0;
  // clang-format on
  return j;
}

Mat4 make_j3() {
  Mat4 j;
  // clang-format off
  j <<  0,  0, -1,  0,
        0,  0,  0,  1,
        1,  0,  0,  0,
        0, -1,  0,  0;
  // clang-format on
  return j;
}

void require_same_base(const TangentVector& X, const TangentVector& Y,
                       const char* what) {
  if ((X.base().coords() - Y.base().coords()).norm() > 1e-12) {
    throw std::invalid_argument(std::string(what) +
                                " requires vectors at the same base point");
  }
}

}  // namespace

Vec3 frame_connection(double eps, const Vec3& a, int j) {
  const double k = (2.0 + eps * eps) / eps;
  switch (j) {
    case 0:  // nabla_X E1 = eps (-a3 E2 + a2 E3)
      return Vec3(0.0, -eps * a(2), eps * a(1));
    case 1:  // nabla_X E2 = -eps a3 E1 + k a1 E3
      return Vec3(-eps * a(2), 0.0, k * a(0));
    case 2:  // nabla_X E3 = eps a2 E1 - k a1 E2
      return Vec3(eps * a(1), -k * a(0), 0.0);
    default:
      throw std::logic_error("frame index out of range");
  }
}

const Mat4& J1() {
  static const Mat4 j = make_j1();
  return j;
}
const Mat4& J2() {
  static const Mat4 j = make_j2();
  return j;
}
const Mat4& J3() {
  static const Mat4 j = make_j3();
  return j;
}

Vec3 hopf_map(const AmbientPoint& p) {
  const Vec4& x = p.coords();
  return Vec3(x(0) * x(2) + x(1) * x(3), x(1) * x(2) - x(0) * x(3),
              0.5 * (x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3)));
}

Frame frame_at(const BergerParams& params, const AmbientPoint& p) {
  require_epsilon(params);
  const Vec4& x = p.coords();
  return Frame{TangentVector(p, (J1() * x) / params.epsilon),
               TangentVector(p, J2() * x), TangentVector(p, J3() * x)};
}

double metric(const BergerParams& params, const TangentVector& X,
              const TangentVector& Y) {
  require_epsilon(params);
  require_same_base(X, Y, "metric");
  const Vec4 x1 = J1() * X.base().coords();
  const double e2 = params.epsilon * params.epsilon;
  return X.vector().dot(Y.vector()) -
         (e2 + 1.0) * X.vector().dot(x1) * Y.vector().dot(x1);
}

FrameCoefficients frame_coefficients(const BergerParams& params,
                                     const TangentVector& X) {
  const Frame f = frame_at(params, X.base());
  return FrameCoefficients{-metric(params, X, f.E1), metric(params, X, f.E2),
                           metric(params, X, f.E3)};
}

TangentVector frame_to_tangent(const BergerParams& params, const AmbientPoint& p,
                               const FrameCoefficients& c) {
  const Frame f = frame_at(params, p);
  return TangentVector(p, c.c1 * f.E1.vector() + c.c2 * f.E2.vector() +
                              c.c3 * f.E3.vector());
}

TangentVector cross(const BergerParams& params, const TangentVector& U,
                    const TangentVector& V) {
  require_same_base(U, V, "cross");
  const Vec3 u = frame_coefficients(params, U).as_vec3();
  const Vec3 v = frame_coefficients(params, V).as_vec3();
  const FrameCoefficients w{-(u(1) * v(2) - u(2) * v(1)),
                            u(2) * v(0) - u(0) * v(2),
                            u(0) * v(1) - u(1) * v(0)};
  return frame_to_tangent(params, U.base(), w);
}

VectorField VectorField::frame_constant(const FrameCoefficients& c) {
  VectorField f;
  f.constant_ = true;
  f.coeffs_ = c;
  return f;
}

VectorField VectorField::general(Fn fn) {
  VectorField f;
  f.constant_ = false;
  f.fn_ = std::move(fn);
  return f;
}

TangentVector VectorField::at(const BergerParams& params,
                              const AmbientPoint& p) const {
  if (constant_) return frame_to_tangent(params, p, coeffs_);
  return fn_(p);
}

TangentVector covariant_derivative(const BergerParams& params,
                                   const TangentVector& X, const VectorField& Y,
                                   const FdOptions& fd) {
  require_epsilon(params);
  const AmbientPoint& p = X.base();
  const Vec3 a = frame_coefficients(params, X).as_vec3();

  Vec3 c, dc;
  if (Y.frame_constant_field()) {
    c = Y.constant_coeffs().as_vec3();
    dc.setZero();
  } else {
    if (!(fd.step > 0.0)) {
      throw std::invalid_argument("finite-difference step must be positive");
    }
    c = frame_coefficients(params, Y.at(params, p)).as_vec3();
    // Coefficients of Y along t -> (p + t X) / |p + t X|, whose velocity at
    // t = 0 is exactly X.
    const auto coeffs_at = [&](double t) {
      const AmbientPoint q((p.coords() + t * X.vector()).normalized());
      return frame_coefficients(params, Y.at(params, q)).as_vec3();
    };
    dc = (coeffs_at(fd.step) - coeffs_at(-fd.step)) / (2.0 * fd.step);
  }

  Vec3 out = dc;
  for (int j = 0; j < 3; ++j) out += c(j) * frame_connection(params.epsilon, a, j);
  return frame_to_tangent(params, p, FrameCoefficients::from_vec3(out));
}

double killing_residual(const BergerParams& params, const TangentVector& X) {
  require_epsilon(params);
  const Vec3 a = frame_coefficients(params, X).as_vec3();
  // nabla_X E1 + eps (X ^ E1), both in frame coefficients.
  const Vec3 nabla = frame_connection(params.epsilon, a, 0);
  const Vec3 wedge(0.0, a(2), -a(1));  // X ^ E1 for E1 = (1,0,0)
  const Vec3 r = nabla + params.epsilon * wedge;
  return std::sqrt(std::abs(g_frame(r, r)));
}

TangentVector curvature(const BergerParams& params, const TangentVector& X,
                        const TangentVector& Y, const TangentVector& Z,
                        CurvatureMode mode) {
  require_epsilon(params);
  require_same_base(X, Y, "curvature");
  require_same_base(X, Z, "curvature");
  const double e2 = params.epsilon * params.epsilon;
  const Vec3 x = frame_coefficients(params, X).as_vec3();
  const Vec3 y = frame_coefficients(params, Y).as_vec3();
  const Vec3 z = frame_coefficients(params, Z).as_vec3();

  Vec3 out = Vec3::Zero();
  switch (mode) {
    case CurvatureMode::frame_table: {
      // Nonzero values R(Ei, Ej)Ek for i < j; extended by antisymmetry in
      // (i, j) and trilinearity.
      Vec3 table[3][3][3];
      for (auto& plane : table)
        for (auto& row : plane)
          for (auto& v : row) v.setZero();
      const double s = 4.0 + 3.0 * e2;
      table[0][1][0] = Vec3(0.0, -e2, 0.0);
      table[0][1][1] = Vec3(-e2, 0.0, 0.0);
      table[0][2][0] = Vec3(0.0, 0.0, -e2);
      table[0][2][2] = Vec3(-e2, 0.0, 0.0);
      table[1][2][1] = Vec3(0.0, 0.0, -s);
      table[1][2][2] = Vec3(0.0, s, 0.0);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const double w = x(i) * y(j) - x(j) * y(i);
            if (w != 0.0) out += w * z(k) * table[i][j][k];
          }
      break;
    }
    case CurvatureMode::closed_form: {
      // (4 + 3 eps^2)[g(Y,Z)X - g(X,Z)Y]
      //  + 4 (1 + eps^2)[g(Y,E1)g(Z,E1)X - g(X,E1)g(Z,E1)Y
      //                  + (g(X,E1)g(Y,Z) - g(Y,E1)g(X,Z)) E1]
      const double gyz = g_frame(y, z);
      const double gxz = g_frame(x, z);
      const double gx1 = -x(0);
      const double gy1 = -y(0);
      const double gz1 = -z(0);
      const double c1 = 4.0 + 3.0 * e2;
      const double c2 = 4.0 * (1.0 + e2);
      out = c1 * (gyz * x - gxz * y) +
            c2 * (gy1 * gz1 * x - gx1 * gz1 * y +
                  (gx1 * gyz - gy1 * gxz) * Vec3(1.0, 0.0, 0.0));
      break;
    }
    default:
      throw std::invalid_argument("unknown curvature mode");
  }
  return frame_to_tangent(params, X.base(), FrameCoefficients::from_vec3(out));
}

}  // namespace berger
