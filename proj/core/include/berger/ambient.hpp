#pragma once

#include <functional>

#include "berger/types.hpp"

namespace berger {

// The three complex structures of R^4 = H used throughout: J1 generates the
// Hopf fibers, J2 and J3 complete the quaternionic triple.
const Mat4& J1();
const Mat4& J2();
const Mat4& J3();

// Hopf projection S^3 -> S^2(1/2) c R^3,
//   psi(x) = (x1 x3 + x2 x4, x2 x3 - x1 x4, (x1^2 + x2^2 - x3^2 - x4^2)/2).
Vec3 hopf_map(const AmbientPoint& p);

// Orthonormal frame of the Berger metric at p:
//   E1 = eps^-1 J1 p (timelike, g(E1,E1) = -1),
//   E2 = J2 p, E3 = J3 p (spacelike unit).
struct Frame {
  TangentVector E1, E2, E3;
};
Frame frame_at(const BergerParams& params, const AmbientPoint& p);

// Lorentzian Berger metric
//   g_eps(X, Y) = <X, Y> - (eps^2 + 1) <X, J1 p> <Y, J1 p>
// with <,> the Euclidean product of R^4.  Both vectors must share a base
// point; mismatched bases are a usage error.
double metric(const BergerParams& params, const TangentVector& X,
              const TangentVector& Y);

// Coefficients of X in the frame {E1, E2, E3}: c1 = -g(X, E1), c2 = g(X, E2),
// c3 = g(X, E3).
FrameCoefficients frame_coefficients(const BergerParams& params,
                                     const TangentVector& X);

// Rebuild the tangent vector c1 E1 + c2 E2 + c3 E3 at p.
TangentVector frame_to_tangent(const BergerParams& params, const AmbientPoint& p,
                               const FrameCoefficients& c);

// Lorentzian cross product, defined by g(U ^ V, W) = det of the coefficient
// matrix; in frame coefficients
//   U ^ V = -(u2 v3 - u3 v2) E1 + (u3 v1 - u1 v3) E2 + (u1 v2 - u2 v1) E3.
// The result is g-orthogonal to both factors.
TangentVector cross(const BergerParams& params, const TangentVector& U,
                    const TangentVector& V);

// Step for the finite-difference fallbacks.  Must be positive.
struct FdOptions {
  double step = 1e-5;
};

// A tangent vector field, either with constant frame coefficients (covariant
// derivatives are then fully analytic through the connection table) or a
// general field given pointwise (frame coefficient derivatives fall back to
// central differences).
class VectorField {
 public:
  using Fn = std::function<TangentVector(const AmbientPoint&)>;

  static VectorField frame_constant(const FrameCoefficients& c);
  static VectorField general(Fn fn);

  TangentVector at(const BergerParams& params, const AmbientPoint& p) const;
  bool frame_constant_field() const { return constant_; }
  const FrameCoefficients& constant_coeffs() const { return coeffs_; }

 private:
  VectorField() = default;
  bool constant_ = false;
  FrameCoefficients coeffs_{};
  Fn fn_;
};

// Frame coefficients of nabla_X E_j (j = 0, 1, 2 for E1, E2, E3), for
// X = a(0) E1 + a(1) E2 + a(2) E3: the connection table contracted with X.
Vec3 frame_connection(double eps, const Vec3& a, int j);

// Levi-Civita connection of g_eps.  For X tangent at p and Y a field,
// decomposes Y in the frame and applies the connection table
//   nabla_{E1} E2 =  eps^-1 (2 + eps^2) E3,  nabla_{E1} E3 = -eps^-1 (2 + eps^2) E2,
//   nabla_{E2} E1 =  eps E3,                 nabla_{E3} E1 = -eps E2,
//   nabla_{E2} E3 =  eps E1,                 nabla_{E3} E2 = -eps E1,
// all nabla_{Ei} Ei = 0.  Coefficient derivatives X(c_j) are analytic (zero)
// for frame-constant fields and central differences otherwise.
TangentVector covariant_derivative(const BergerParams& params,
                                   const TangentVector& X, const VectorField& Y,
                                   const FdOptions& fd = {});

// Magnitude of nabla_X E1 + eps (X ^ E1), reported as sqrt(|g(R, R)|).  E1 is
// Killing, so the residual vanishes identically.
double killing_residual(const BergerParams& params, const TangentVector& X);

enum class CurvatureMode {
  frame_table,  // trilinear contraction of R(Ei, Ej)Ek
  closed_form,  // (4 + 3 eps^2)(g(Y,Z)X - g(X,Z)Y) + 4 (1 + eps^2) E1-terms
};

// Riemann curvature R(X, Y)Z of g_eps; the two modes agree and serve as each
// other's cross-check.
TangentVector curvature(const BergerParams& params, const TangentVector& X,
                        const TangentVector& Y, const TangentVector& Z,
                        CurvatureMode mode);

}  // namespace berger
