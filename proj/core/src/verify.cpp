#include "berger/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace berger {

namespace {

// Frame vectors and g_eps products anchored at one surface point.
struct LocalFrame {
  Vec4 p, x1, e1, e2, e3;
  double eps2p1;

  LocalFrame(const BergerParams& params, const Vec4& point) {
    p = point;
    x1 = J1() * p;
    e1 = x1 / params.epsilon;
    e2 = J2() * p;
    e3 = J3() * p;
    eps2p1 = params.epsilon * params.epsilon + 1.0;
  }
  double g(const Vec4& a, const Vec4& b) const {
    return a.dot(b) - eps2p1 * a.dot(x1) * b.dot(x1);
  }
  Vec3 coeffs(const Vec4& v) const {
    return Vec3(-g(v, e1), g(v, e2), g(v, e3));
  }
  Vec4 from_coeffs(const Vec3& c) const {
    return c(0) * e1 + c(1) * e2 + c(2) * e3;
  }
};

// Lorentzian cross product in frame coefficients.
Vec3 wedge(const Vec3& a, const Vec3& b) {
  return Vec3(-(a(1) * b(2) - a(2) * b(1)), a(2) * b(0) - a(0) * b(2),
              a(0) * b(1) - a(1) * b(0));
}

// Hodge dual of a ^ b ^ c in R^4 (orientation only matters up to sign here).
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 w;
  double sign = 1.0;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix3d m;
    int k = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      m(0, k) = a(j);
      m(1, k) = b(j);
      m(2, k) = c(j);
      ++k;
    }
    w(i) = sign * m.determinant();
    sign = -sign;
  }
  return w;
}

void require_step(const FdOptions& fd) {
  if (!(fd.step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
}

const char* const kProductNames[16] = {
    "F_F",       "Fu_Fu",     "F_Fu",       "Fu_Fuu",
    "Fuu_Fuu",   "F_Fuu",     "Fu_Fuuu",    "Fuu_Fuuu",
    "F_Fuuu",    "Fuuu_Fuuu", "J1F_Fu",     "J1F_Fuu",
    "Fu_J1Fuu",  "J1Fu_Fuuu", "J1_skew_3",  "J1_skew_4",
};

}  // namespace

NormalData unit_normal(const SurfaceJet& jet, const BergerParams& params) {
  require_epsilon(params);
  require_lambda(params);
  const LocalFrame lf(params, jet.F);
  const Vec3 cu = lf.coeffs(jet.Fu);
  const Vec3 cv = lf.coeffs(jet.Fv);
  const Vec3 w = wedge(cu, cv);
  const double scale = std::max(1.0, cu.norm() * cv.norm());
  if (w.norm() <= 1e-8 * scale) {
    throw surface_rank_error("F_u and F_v are parallel at (u, v) = (" +
                             std::to_string(jet.u) + ", " + std::to_string(jet.v) +
                             "); the parametrization is degenerate there");
  }
  const double q = g_frame(w, w);
  if (std::abs(q) <= 1e-12 * w.squaredNorm()) {
    throw degenerate_normal_error(
        "normal direction is lightlike at (u, v) = (" + std::to_string(jet.u) +
        ", " + std::to_string(jet.v) + "); causal type changes here");
  }
  Vec3 n = w / std::sqrt(std::abs(q));
  double nu = -params.lambda * n(0);
  const double want = params.nu != 0.0 ? params.nu : 1.0;
  if (nu * want < 0.0) {
    n = -n;
    nu = -nu;
  }
  NormalData out{TangentVector(AmbientPoint(jet.F), lf.from_coeffs(n)),
                 FrameCoefficients::from_vec3(n), nu, std::atan2(n(2), n(1)),
                 q > 0.0 ? +1 : -1};
  return out;
}

double angle_function(const SurfaceJet& jet, const BergerParams& params) {
  return unit_normal(jet, params).nu;
}

double hyperbolic_angle(double nu, int lambda) {
  if (lambda == -1) {
    if (!(std::abs(nu) > 1.0)) {
      throw std::domain_error(
          "spacelike surfaces have |nu| > 1; arcosh|nu| is undefined for |nu| "
          "<= 1");
    }
    return std::acosh(std::abs(nu));
  }
  if (lambda == +1) return std::asinh(nu);
  throw std::invalid_argument("lambda must be +1 or -1");
}

JetField jet_field(const HelixSpec& spec) {
  return [spec](double u, double v) { return surface_jet(spec, u, v); };
}

ShapeData shape_operator(const JetField& surface, double u, double v,
                         const BergerParams& params, const FdOptions& fd) {
  require_step(fd);
  const double h = fd.step;
  const SurfaceJet jet0 = surface(u, v);
  const NormalData n0 = unit_normal(jet0, params);
  const LocalFrame lf(params, jet0.F);
  const Vec3 cT = lf.coeffs(jet0.Fu);
  const Vec3 cV = lf.coeffs(jet0.Fv);
  const Vec3 n = n0.coeffs.as_vec3();
  const Vec3 cJT = wedge(n, cT);

  // JT = a F_u + b F_v: g-Gram solve for the parameter direction of JT.
  Mat2 G;
  G << g_frame(cT, cT), g_frame(cT, cV), g_frame(cV, cT), g_frame(cV, cV);
  const double gscale = std::max(1.0, G.cwiseAbs().maxCoeff());
  if (std::abs(G.determinant()) < 1e-14 * gscale * gscale) {
    throw surface_rank_error("tangent Gram matrix is singular at (u, v) = (" +
                             std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  const Eigen::Vector2d jt_dir =
      G.inverse() * Eigen::Vector2d(g_frame(cJT, cT), g_frame(cJT, cV));

  // Covariant derivative of the unit normal field along a parameter direction:
  // finite differences of its frame coefficients plus the connection term.
  const auto dn_along = [&](const Eigen::Vector2d& dir, bool richardson) {
    const auto coeff = [&](double t) {
      const SurfaceJet jt = surface(u + t * dir(0), v + t * dir(1));
      return unit_normal(jt, params).coeffs.as_vec3();
    };
    const auto central = [&](double hh) {
      return Vec3((coeff(hh) - coeff(-hh)) / (2.0 * hh));
    };
    const Vec3 dc = richardson
                        ? Vec3((4.0 * central(h / 2.0) - central(h)) / 3.0)
                        : central(h);
    const Vec3 a = dir(0) * cT + dir(1) * cV;
    Vec3 out = dc;
    for (int j = 0; j < 3; ++j) {
      out += n(j) * frame_connection(params.epsilon, a, j);
    }
    return out;
  };

  const Eigen::Vector2d t_dir(1.0, 0.0);
  const Vec3 AT = -dn_along(t_dir, true);
  const Vec3 AJT = -dn_along(jt_dir, true);
  const Vec3 AT_plain = -dn_along(t_dir, false);
  const Vec3 AJT_plain = -dn_along(jt_dir, false);

  // Decompose in the (T, JT) tangent basis with its own g-Gram.
  Mat2 G2;
  G2 << g_frame(cT, cT), g_frame(cT, cJT), g_frame(cJT, cT), g_frame(cJT, cJT);
  const double g2scale = std::max(1.0, G2.cwiseAbs().maxCoeff());
  if (std::abs(G2.determinant()) < 1e-14 * g2scale * g2scale) {
    throw surface_rank_error("(T, JT) Gram matrix is singular at (u, v) = (" +
                             std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  const Mat2 G2inv = G2.inverse();
  const auto decompose = [&](const Vec3& w) {
    return Eigen::Vector2d(G2inv *
                           Eigen::Vector2d(g_frame(w, cT), g_frame(w, cJT)));
  };
  const Eigen::Vector2d col_t = decompose(AT);
  const Eigen::Vector2d col_jt = decompose(AJT);

  ShapeData out;
  out.matrix << col_t(0), col_jt(0), col_t(1), col_jt(1);
  out.mu = out.matrix(1, 1);
  out.g_tt = G2(0, 0);
  out.nu = n0.nu;
  out.jt_dir = jt_dir;
  const double drift = std::max((AT - AT_plain).cwiseAbs().maxCoeff(),
                                (AJT - AJT_plain).cwiseAbs().maxCoeff());
  out.fd_reliable = drift <= 1e-2 * (1.0 + out.matrix.cwiseAbs().maxCoeff());
  out.K = gauss_curvature(out, params, n0.nu);
  return out;
}

double gauss_curvature(const ShapeData& shape, const BergerParams& params,
                       double nu) {
  require_epsilon(params);
  require_lambda(params);
  const double e2 = params.epsilon * params.epsilon;
  const double kbar = -e2 - 4.0 * params.lambda * nu * nu * (1.0 + e2);
  return kbar + params.lambda * shape.matrix.determinant();
}

double check_ode(const SurfaceJet& jet, const HelixConstants& c) {
  using LD = long double;
  const LD a = c.a_tilde;
  const LD coef2 = LD(c.b_tilde) * LD(c.b_tilde) - 2.0L * a;
  LD sum = 0.0L;
  for (int i = 0; i < 4; ++i) {
    const LD r = LD(jet.Fuuuu(i)) + coef2 * LD(jet.Fuu(i)) + a * a * LD(jet.F(i));
    sum += r * r;
  }
  return static_cast<double>(std::sqrt(sum));
}

std::vector<ProductCheck> check_products(const SurfaceJet& jet,
                                         const HelixConstants& c) {
  const double eps = c.params.epsilon;
  const double lam = c.params.lambda;
  const double nu = c.params.nu;
  const double a = c.a_tilde;
  const double b = c.b_tilde;
  const double D = a * b * b - 3.0 * a * a;
  const double E = (b * b - 2.0 * a) * D - a * a * a;
  const double h1 = (1.0 + lam * nu * nu) / eps;  // <J1 F, F_u>
  const double I = a * (h1 + b);

  const Vec4& F = jet.F;
  const Vec4& Fu = jet.Fu;
  const Vec4& F2 = jet.Fuu;
  const Vec4& F3 = jet.Fuuu;
  const Vec4& F4 = jet.Fuuuu;
  const Vec4 j1F = J1() * F, j1Fu = J1() * Fu, j1F2 = J1() * F2;

  const auto rec = [](const char* name, double got, double want, double scale) {
    return ProductCheck{name, got, want,
                        std::abs(got - want) / std::max(1.0, scale)};
  };
  const auto ns = [](const Vec4& x, const Vec4& y) { return x.norm() * y.norm(); };

  std::vector<ProductCheck> out;
  out.reserve(16);
  out.push_back(rec(kProductNames[0], F.dot(F), 1.0, ns(F, F)));
  out.push_back(rec(kProductNames[1], Fu.dot(Fu), a, ns(Fu, Fu)));
  out.push_back(rec(kProductNames[2], F.dot(Fu), 0.0, ns(F, Fu)));
  out.push_back(rec(kProductNames[3], Fu.dot(F2), 0.0, ns(Fu, F2)));
  out.push_back(rec(kProductNames[4], F2.dot(F2), D, ns(F2, F2)));
  out.push_back(rec(kProductNames[5], F.dot(F2), -a, ns(F, F2)));
  out.push_back(rec(kProductNames[6], Fu.dot(F3), -D, ns(Fu, F3)));
  out.push_back(rec(kProductNames[7], F2.dot(F3), 0.0, ns(F2, F3)));
  out.push_back(rec(kProductNames[8], F.dot(F3), 0.0, ns(F, F3)));
  out.push_back(rec(kProductNames[9], F3.dot(F3), E, ns(F3, F3)));
  out.push_back(rec(kProductNames[10], j1F.dot(Fu), h1, ns(F, Fu)));
  out.push_back(rec(kProductNames[11], j1F.dot(F2), 0.0, ns(F, F2)));
  out.push_back(rec(kProductNames[12], Fu.dot(j1F2), I, ns(Fu, F2)));
  out.push_back(rec(kProductNames[13], j1Fu.dot(F3), 0.0, ns(Fu, F3)));
  out.push_back(rec(kProductNames[14], j1Fu.dot(F2) + j1F.dot(F3), 0.0,
                    std::max(ns(Fu, F2), ns(F, F3))));
  out.push_back(rec(kProductNames[15], j1F2.dot(F3) + j1Fu.dot(F4), 0.0,
                    std::max(ns(F2, F3), ns(Fu, F4))));
  return out;
}

std::pair<double, double> check_helix_conditions(const SurfaceJet& jet,
                                                 const BergerParams& params) {
  require_epsilon(params);
  require_lambda(params);
  const LocalFrame lf(params, jet.F);
  const double r1 = std::abs(lf.g(lf.e1, jet.Fu) + 1.0 +
                             params.lambda * params.nu * params.nu);
  const double r2 = std::abs(lf.g(jet.Fu, jet.Fv) - lf.g(lf.e1, jet.Fv));
  return {r1, r2};
}

std::optional<double> check_mu_pde(const JetField& surface, double u, double v,
                                   const BergerParams& params,
                                   const FdOptions& fd) {
  require_step(fd);
  const double lam = params.lambda;
  const double B = 1.0 + lam * params.nu * params.nu *
                             (1.0 + params.epsilon * params.epsilon);
  const double cutoff = 4.0 * std::sqrt(lam * B);
  const auto mu_at = [&](double uu) {
    return shape_operator(surface, uu, v, params, fd).mu;
  };
  const double mu0 = mu_at(u);
  if (std::abs(mu0) > cutoff) return std::nullopt;

  // Outer Richardson on top of the shape-operator stencils.
  const double delta = 1e-4;
  double m[4];
  const double offs[4] = {delta, -delta, delta / 2.0, -delta / 2.0};
  for (int i = 0; i < 4; ++i) {
    m[i] = mu_at(u + offs[i]);
    if (std::abs(m[i]) > 1.5 * cutoff) return std::nullopt;
  }
  const double d1 = (m[0] - m[1]) / (2.0 * delta);
  const double d2 = (m[2] - m[3]) / delta;
  const double dmu = (4.0 * d2 - d1) / 3.0;
  return std::abs(dmu + params.nu * mu0 * mu0 + 4.0 * lam * params.nu * B);
}

PhaseCheck check_normal_phase(const JetField& surface, double u, double v,
                              const BergerParams& params,
                              const HelixConstants& c, const FdOptions& fd) {
  require_step(fd);
  const double h = fd.step;
  const auto phi_at = [&](double uu, double vv) {
    return unit_normal(surface(uu, vv), params).phi;
  };
  const double phi0 = phi_at(u, v);
  const auto unwrap = [&](double p) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return p - two_pi * std::round((p - phi0) / two_pi);
  };
  const double du =
      (unwrap(phi_at(u + h, v)) - unwrap(phi_at(u - h, v))) / (2.0 * h);
  const double dv =
      (unwrap(phi_at(u, v + h)) - unwrap(phi_at(u, v - h))) / (2.0 * h);
  PhaseCheck out;
  out.phi_u = du;
  out.phi_u_residual = std::abs(du - c.b_tilde);
  out.phi_v_residual = std::abs(dv);
  return out;
}

CurveMetrics curve_metrics(const HelixConstants& c) {
  const double lam = c.params.lambda;
  const double nu = c.params.nu;
  const double eps = c.params.epsilon;
  CurveMetrics m;
  m.speed_eps = eps / std::sqrt(lam * c.B);
  m.helix_angle = -lam * std::sqrt(lam + nu * nu);
  m.kappa_g = 2.0 * eps * std::abs(nu) / std::sqrt(lam + nu * nu);
  m.tau_g = 1.0;
  return m;
}

CurveMetrics frenet_curve_metrics(const HelixConstants& c, double h, double s0) {
  if (!(h > 0.0)) throw std::invalid_argument("stencil step must be positive");
  const auto b = [&](double s) { return beta_arclength(c, s).coords(); };
  const auto d2_at = [&](double s) {
    return Vec4((-(b(s + 2 * h) + b(s - 2 * h)) + 16.0 * (b(s + h) + b(s - h)) -
                 30.0 * b(s)) /
                (12.0 * h * h));
  };

  const Vec4 p = b(s0);
  // Round-sphere covariant acceleration of the unit-speed curve.
  const Vec4 acc = d2_at(s0) + p;
  const double kappa = acc.norm();
  const Vec4 e2 = acc / kappa;
  const Vec4 d1 = (8.0 * (b(s0 + h) - b(s0 - h)) - (b(s0 + 2 * h) - b(s0 - 2 * h))) /
                  (12.0 * h);
  const Vec4 e3 = cross4(p, d1, e2).normalized();

  const auto e2_at = [&](double s) {
    const Vec4 a = d2_at(s) + b(s);
    return Vec4(a / a.norm());
  };
  const Vec4 de2 = (8.0 * (e2_at(s0 + h) - e2_at(s0 - h)) -
                    (e2_at(s0 + 2 * h) - e2_at(s0 - 2 * h))) /
                   (12.0 * h);
  const Vec4 nabla_e2 = de2 - de2.dot(p) * p;

  // Speed and angle from the analytic tangent of the arclength directrix.
  using LD = long double;
  const LD d = LD(c.d);
  const LD lam = LD(c.params.lambda);
  const LD n = std::sqrt(1.0L + d * d);
  const LD s = LD(s0);
  const Vec4 bdot(static_cast<double>(-std::sin(s / d) / n),
                  static_cast<double>(lam * std::cos(s / d) / n),
                  static_cast<double>(-d * std::sin(d * s) / n),
                  static_cast<double>(lam * d * std::cos(d * s) / n));
  const AmbientPoint base(p);
  const TangentVector tangent(base, bdot);
  const Frame fr = frame_at(c.params, base);
  const double gtt = metric(c.params, tangent, tangent);

  CurveMetrics m;
  m.speed_eps = std::sqrt(std::abs(gtt));
  m.helix_angle = metric(c.params, tangent, fr.E1) / m.speed_eps;
  m.kappa_g = kappa;
  m.tau_g = std::abs(nabla_e2.dot(e3));
  return m;
}

bool ResidualReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ResidualReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

struct Acc {
  CheckResult r;
  Acc(std::string name, double tol) {
    r.name = std::move(name);
    r.tolerance = tol;
  }
  void note(double res, double u, double v) {
    if (res > r.max_residual) {
      r.max_residual = res;
      r.worst_u = u;
      r.worst_v = v;
    }
  }
  CheckResult done() {
    r.pass = r.max_residual <= r.tolerance;
    return r;
  }
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * i / double(n - 1));
  }
  return out;
}

}  // namespace

ResidualReport full_report(const HelixSpec& spec, const GridSpec& grid,
                           const ReportOptions& opts) {
  const BergerParams& params = spec.params;
  const HelixConstants& c = spec.consts;
  const double ts = opts.tol_scale;
  if (!(ts > 0.0)) throw std::invalid_argument("tolerance scale must be positive");
  require_step(opts.fd);

  ResidualReport rep;
  rep.grid = grid;

  Acc nu_const("nu_constancy", 1e-8 * ts);
  Acc n_unit("normal_unit", 1e-10 * ts);
  Acc n_tan("normal_tangency", 1e-8 * ts);
  Acc t_dec("t_decomposition", 1e-8 * ts);
  Acc t_norms("tangent_norms", 1e-8 * ts);
  Acc j_rot("j_rotation", 1e-8 * ts);
  Acc n_phase("normal_phase_decomposition", 1e-8 * ts);
  Acc ode("ode_quartic", 1e-8 * ts);
  std::vector<Acc> prods;
  for (const char* name : kProductNames) {
    prods.emplace_back(std::string("product_") + name, 1e-8 * ts);
  }
  Acc hc1("helix_condition_1", 1e-8 * ts);
  Acc hc2("helix_condition_2", 1e-8 * ts);
  Acc fv_norm("fv_norm", 1e-8 * ts);
  std::optional<Acc> fv_canon;
  if (spec.family.canonical_v) fv_canon.emplace("fv_norm_canonical", 1e-8 * ts);
  Acc compat("family_compat", 1e-9 * ts);
  Acc shape_m("shape_matrix", 1e-4 * ts);
  Acc gauss("gauss_curvature", 1e-3 * ts);
  Acc mu_pde("mu_pde", 1e-3 * ts);
  Acc phi_u("phi_u", 1e-4 * ts);
  Acc phi_v("phi_v", 1e-4 * ts);
  Acc nu_grad("nu_gradient", 1e-4 * ts);

  const std::vector<double> us = linspace(grid.u_min, grid.u_max, grid.n_u);
  const std::vector<double> vs = linspace(grid.v_min, grid.v_max, grid.n_v);
  const JetField field = jet_field(spec);
  const double lam = params.lambda;
  const double eps = params.epsilon;
  const double k_closed = -4.0 * lam * (1.0 + eps * eps) * params.nu * params.nu;

  for (double v : vs) {
    for (double u : us) {
      ++rep.samples;
      const SurfaceJet jet = field(u, v);

      ode.note(check_ode(jet, c), u, v);
      {
        const auto pr = check_products(jet, c);
        for (size_t i = 0; i < pr.size(); ++i) prods[i].note(pr[i].residual, u, v);
      }
      {
        const auto [h1, h2] = check_helix_conditions(jet, params);
        hc1.note(h1, u, v);
        hc2.note(h2, u, v);
      }
      compat.note(std::abs(compat_residual(spec.family, v)), u, v);

      const LocalFrame lf(params, jet.F);
      {
        // Euclidean: Q'(v) is |r1'(v)| times an orthogonal matrix.
        const double x1 = spec.family.xi1.eval(v);
        const double d1 = spec.family.xi1.deriv(v);
        const double d2 = spec.family.xi2.deriv(v);
        const double d3 = spec.family.xi3.deriv(v);
        const double cx = std::cos(x1), sx = std::sin(x1);
        const double rhs = d1 * d1 + cx * cx * d2 * d2 + sx * sx * d3 * d3;
        fv_norm.note(std::abs(jet.Fv.dot(jet.Fv) - rhs), u, v);
        if (fv_canon) {
          // Canonical v-normalization: the Euclidean speed of v-curves is
          // pinned to lambda + nu^2.
          fv_canon->note(std::abs(jet.Fv.dot(jet.Fv) -
                                  (lam + params.nu * params.nu)),
                         u, v);
        }
      }

      bool have_normal = false;
      try {
        const NormalData nd = unit_normal(jet, params);
        have_normal = true;
        const Vec3 n = nd.coeffs.as_vec3();
        nu_const.note(std::abs(nd.nu - params.nu), u, v);
        n_unit.note(std::abs(g_frame(n, n) - lam), u, v);
        n_tan.note(std::max(std::abs(lf.g(nd.N.vector(), jet.Fu)),
                            std::abs(lf.g(nd.N.vector(), jet.Fv))),
                   u, v);

        const Vec3 cT = lf.coeffs(jet.Fu);
        // T = E1 - nu N in frame coefficients.
        const Vec3 t_from_normal(1.0 - nd.nu * n(0), -nd.nu * n(1),
                                 -nd.nu * n(2));
        t_dec.note((cT - t_from_normal).cwiseAbs().maxCoeff(), u, v);

        const Vec3 cJT = wedge(n, cT);
        const double gtt = g_frame(cT, cT);
        const double gjj = g_frame(cJT, cJT);
        const double gtjt = g_frame(cT, cJT);
        const double nn = params.nu * params.nu;
        t_norms.note(std::max({std::abs(gtt + 1.0 + lam * nn),
                               std::abs(gjj - (lam + nn)), std::abs(gtjt)}),
                     u, v);

        // J^2 = lambda id and g(JX, JY) = -lambda g(X, Y) on the tangent plane.
        const Vec3 jjt = wedge(n, cJT);
        j_rot.note(std::max({(jjt - lam * cT).cwiseAbs().maxCoeff(),
                             std::abs(gjj + lam * gtt)}),
                   u, v);

        const double root = std::sqrt(lam + nd.nu * nd.nu);
        const Vec3 n_rebuilt(-lam * nd.nu, root * std::cos(nd.phi),
                             root * std::sin(nd.phi));
        n_phase.note((n - n_rebuilt).cwiseAbs().maxCoeff(), u, v);
      } catch (const surface_rank_error&) {
        ++rep.degenerate_normals;
      } catch (const degenerate_normal_error&) {
        ++rep.degenerate_normals;
      }

      if (have_normal) {
        try {
          const ShapeData sh = shape_operator(field, u, v, params, opts.fd);
          if (!sh.fd_reliable) ++rep.shape_unreliable;
          shape_m.note(std::max({std::abs(sh.matrix(0, 0)),
                                 std::abs(sh.matrix(0, 1) + lam * eps),
                                 std::abs(sh.matrix(1, 0) - eps)}),
                       u, v);
          gauss.note(std::abs(sh.K - k_closed) / std::max(1.0, std::abs(k_closed)),
                     u, v);

          // X(nu) = -lambda g(A(X) + eps J X, T) for X = T and X = JT.
          const double h = opts.fd.step;
          const auto nu_at = [&](double uu, double vv) {
            return unit_normal(field(uu, vv), params).nu;
          };
          const double dnu_u =
              (nu_at(u + h, v) - nu_at(u - h, v)) / (2.0 * h);
          const double rhs_t = -lam * sh.matrix(0, 0) * sh.g_tt;
          const Eigen::Vector2d jd = sh.jt_dir;
          const double dnu_jt = (nu_at(u + h * jd(0), v + h * jd(1)) -
                                 nu_at(u - h * jd(0), v - h * jd(1))) /
                                (2.0 * h);
          const double rhs_jt = -lam * (sh.matrix(0, 1) + eps * lam) * sh.g_tt;
          nu_grad.note(
              std::max(std::abs(dnu_u - rhs_t), std::abs(dnu_jt - rhs_jt)), u,
              v);

          const auto mu = check_mu_pde(field, u, v, params, opts.fd);
          if (mu) {
            mu_pde.note(*mu, u, v);
          } else {
            ++rep.mu_skipped;
          }

          const PhaseCheck pc = check_normal_phase(field, u, v, params, c, opts.fd);
          phi_u.note(pc.phi_u_residual, u, v);
          phi_v.note(pc.phi_v_residual, u, v);
        } catch (const surface_rank_error&) {
          ++rep.shape_skipped;
        } catch (const degenerate_normal_error&) {
          ++rep.shape_skipped;
        }
      }
    }
  }

  rep.checks.push_back(nu_const.done());
  rep.checks.push_back(n_unit.done());
  rep.checks.push_back(n_tan.done());
  rep.checks.push_back(t_dec.done());
  rep.checks.push_back(t_norms.done());
  rep.checks.push_back(j_rot.done());
  rep.checks.push_back(n_phase.done());
  rep.checks.push_back(ode.done());
  for (auto& p : prods) rep.checks.push_back(p.done());
  rep.checks.push_back(hc1.done());
  rep.checks.push_back(hc2.done());
  rep.checks.push_back(fv_norm.done());
  if (fv_canon) rep.checks.push_back(fv_canon->done());
  rep.checks.push_back(compat.done());
  rep.checks.push_back(shape_m.done());
  rep.checks.push_back(gauss.done());
  rep.checks.push_back(mu_pde.done());
  rep.checks.push_back(phi_u.done());
  rep.checks.push_back(phi_v.done());
  rep.checks.push_back(nu_grad.done());
  return rep;
}

}  // namespace berger
