#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

// Scalar-type-generic builders for the isometry rows and the torus-curve jet.
// The surface jet pipeline instantiates them with long double so that the
// fourth-order combination in the quartic ODE check cancels below the 1e-8
// tolerance even for large alpha; the public double API reuses the same code.
namespace berger::detail {

template <typename T>
using V4 = Eigen::Matrix<T, 4, 1>;
template <typename T>
using M4 = Eigen::Matrix<T, 4, 4>;

template <typename T>
const M4<T>& j1() {
  static const M4<T> j = [] {
    M4<T> m = M4<T>::Zero();
    m(0, 1) = T(-1); m(1, 0) = T(1); m(2, 3) = T(-1); m(3, 2) = T(1);
    return m;
  }();
  return j;
}

template <typename T>
const M4<T>& j2() {
  static const M4<T> j = [] {
    M4<T> m = M4<T>::Zero();
    m(0, 3) = T(-1); m(1, 2) = T(-1); m(2, 1) = T(1); m(3, 0) = T(1);
    return m;
  }();
  return j;
}

template <typename T>
const M4<T>& j3() {
  static const M4<T> j = [] {
    M4<T> m = M4<T>::Zero();
    m(0, 2) = T(-1); m(1, 3) = T(1); m(2, 0) = T(1); m(3, 1) = T(-1);
    return m;
  }();
  return j;
}

template <typename T>
V4<T> r1_row(T x1, T x2, T x3) {
  using std::cos;
  using std::sin;
  return V4<T>(cos(x1) * cos(x2), -cos(x1) * sin(x2), sin(x1) * cos(x3),
               -sin(x1) * sin(x3));
}

// Directional derivative of r1_row along (d1, d2, d3) in xi-space.
template <typename T>
V4<T> r1_row_deriv(T x1, T x2, T x3, T d1, T d2, T d3) {
  using std::cos;
  using std::sin;
  const V4<T> dx1(-sin(x1) * cos(x2), sin(x1) * sin(x2), cos(x1) * cos(x3),
                  -cos(x1) * sin(x3));
  const V4<T> dx2(-cos(x1) * sin(x2), -cos(x1) * cos(x2), T(0), T(0));
  const V4<T> dx3(T(0), T(0), -sin(x1) * sin(x3), -sin(x1) * cos(x3));
  return d1 * dx1 + d2 * dx2 + d3 * dx3;
}

// Rows r1, b J1 r1, cos xi J2 r1 + sin xi J3 r1, b (sin xi J2 r1 - cos xi J3 r1);
// b = +1 commutes with J1, b = -1 anticommutes.  The same assembly applied to
// dr1/dv yields dQ/dv because the row maps are constant linear maps of r1.
template <typename T>
M4<T> q_from_row(T xi, int branch, const V4<T>& row) {
  using std::cos;
  using std::sin;
  const T b = T(branch);
  M4<T> q;
  q.row(0) = row.transpose();
  q.row(1) = (b * (j1<T>() * row)).transpose();
  q.row(2) = (cos(xi) * (j2<T>() * row) + sin(xi) * (j3<T>() * row)).transpose();
  q.row(3) =
      (b * (sin(xi) * (j2<T>() * row) - cos(xi) * (j3<T>() * row))).transpose();
  return q;
}

template <typename T>
struct BetaConsts {
  T B, a, b, al1, al2, g11, g33, d, sq11, sq33;
  T lambda;
};

// Structural constants recomputed in the working scalar type from the raw
// parameters, so downstream cancellations see full precision.
template <typename T>
BetaConsts<T> beta_consts(double eps_in, double nu_in, int lambda) {
  using std::abs;
  using std::sqrt;
  const T eps = T(eps_in), nu = T(nu_in), lam = T(lambda);
  BetaConsts<T> c;
  c.lambda = lam;
  c.B = T(1) + lam * nu * nu * (T(1) + eps * eps);
  c.a = lam / (eps * eps) * c.B * (lam + nu * nu);
  c.b = T(-2) / eps * c.B;
  const T lamB = lam * c.B;
  const T root = sqrt(lamB);
  c.al1 = (lamB + eps * abs(nu) * root) / eps;
  c.al2 = (lamB - eps * abs(nu) * root) / eps;
  c.g11 = lam * eps / (T(2) * c.B) * c.al2;
  c.g33 = lam * eps / (T(2) * c.B) * c.al1;
  c.d = sqrt(c.al2 / c.al1);
  c.sq11 = sqrt(c.g11);
  c.sq33 = sqrt(c.g33);
  return c;
}

// k-th u-derivative of the torus directrix: each circular factor picks up a
// factor alpha^k and a phase shift of k pi/2.
template <typename T>
V4<T> beta_jet(const BetaConsts<T>& c, T u, int order) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T half_pi = std::numbers::pi_v<T> / T(2);
  const T ph = T(order) * half_pi;
  const T f1 = order == 0 ? T(1) : pow(c.al1, T(order));
  const T f2 = order == 0 ? T(1) : pow(c.al2, T(order));
  return V4<T>(c.sq11 * f1 * cos(c.al1 * u + ph),
               c.lambda * c.sq11 * f1 * sin(c.al1 * u + ph),
               c.sq33 * f2 * cos(c.al2 * u + ph),
               c.lambda * c.sq33 * f2 * sin(c.al2 * u + ph));
}

}  // namespace berger::detail
