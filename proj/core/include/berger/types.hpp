#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace berger {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Thrown when the wedge of the two tangent directions has vanishing causal
// square: the would-be normal direction is lightlike and cannot be normalized.
struct degenerate_normal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the two tangent directions are linearly dependent, so no normal
// direction is determined at all.
struct surface_rank_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ambient deformation parameter together with the surface data (constant
// angle value nu and causal character lambda).  Ambient-only operations read
// just epsilon; surface-level operations read all three fields.
// lambda is the causal sign of the unit normal, g(N, N) = lambda:
//   lambda = -1: timelike normal, spacelike surface (requires |nu| > 1),
//   lambda = +1: spacelike normal, timelike surface (requires nu != 0).
struct BergerParams {
  double epsilon = 1.0;
  double nu = 0.0;
  int lambda = +1;
};

inline void require_epsilon(const BergerParams& params) {
  if (!(params.epsilon > 0.0)) {
    throw std::domain_error("epsilon must be positive, got " +
                            std::to_string(params.epsilon));
  }
}

inline void require_lambda(const BergerParams& params) {
  if (params.lambda != +1 && params.lambda != -1) {
    throw std::invalid_argument(
        "lambda must be +1 (timelike surface) or -1 (spacelike surface)");
  }
}

namespace tol {
// Constructor repair policy: defects below kAccept pass untouched, defects in
// [kAccept, kRepair) are silently normalized/projected, anything larger is
// rejected as invalid input.
inline constexpr double kAccept = 1e-12;
inline constexpr double kRepair = 1e-6;
}  // namespace tol

// Point on the unit 3-sphere in R^4.
class AmbientPoint {
 public:
  explicit AmbientPoint(const Vec4& x) : x_(x) {
    const double n = x_.norm();
    if (std::abs(n - 1.0) <= tol::kAccept) {
      // keep coordinates exactly as given
    } else if (std::abs(n - 1.0) < tol::kRepair) {
      x_ /= n;
    } else {
      throw std::invalid_argument("ambient point must lie on the unit sphere: |x| = " +
                                  std::to_string(n));
    }
  }
  AmbientPoint(double x1, double x2, double x3, double x4)
      : AmbientPoint(Vec4(x1, x2, x3, x4)) {}

  const Vec4& coords() const { return x_; }
  double operator[](int i) const { return x_(i); }

 private:
  Vec4 x_;
};

// Tangent vector to the 3-sphere at a base point: <v, p> = 0 in R^4.
class TangentVector {
 public:
  TangentVector(const AmbientPoint& base, const Vec4& v) : base_(base), v_(v) {
    const double defect =
        std::abs(v_.dot(base_.coords())) / std::max(1.0, v_.norm());
    if (defect <= tol::kAccept) {
      // keep as given
    } else if (defect < tol::kRepair) {
      v_ -= v_.dot(base_.coords()) * base_.coords();
    } else {
      throw std::invalid_argument(
          "vector is not tangent to the sphere at its base point (defect " +
          std::to_string(defect) + ")");
    }
  }

  const AmbientPoint& base() const { return base_; }
  const Vec4& vector() const { return v_; }

 private:
  AmbientPoint base_;
  Vec4 v_;
};

// Coefficients (c1, c2, c3) of a tangent vector in the orthonormal frame
// {E1, E2, E3}, so V = c1 E1 + c2 E2 + c3 E3 and
// g(V, V) = -c1^2 + c2^2 + c3^2.
struct FrameCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  Vec3 as_vec3() const { return Vec3(c1, c2, c3); }
  static FrameCoefficients from_vec3(const Vec3& c) { return {c(0), c(1), c(2)}; }
};

// Minkowski-signature inner product of frame coefficient triples.
inline double g_frame(const FrameCoefficients& a, const FrameCoefficients& b) {
  return -a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3;
}
inline double g_frame(const Vec3& a, const Vec3& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

}  // namespace berger
