#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "berger/helix.hpp"
#include "doctest.h"

using namespace berger;

namespace {

const BergerParams kFig1{2.0, 4.0, -1};
const BergerParams kFig2{1.0, 2.0, +1};
const BergerParams kFig3{1.0, std::sqrt(5.0), -1};

HelixSpec fig2_spec() {
  return example1_spec(kFig2,
                       ScalarCurve::make([](double v) { return std::exp(v); },
                                         [](double v) { return std::exp(v); }),
                       -2.0, 2.0);
}

}  // namespace

TEST_CASE("structural constants: reference values") {
  const HelixConstants c2 = constants(kFig2);
  CHECK(c2.B == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(c2.a_tilde == doctest::Approx(45.0).epsilon(1e-14));
  CHECK(c2.b_tilde == doctest::Approx(-18.0).epsilon(1e-14));
  CHECK(c2.alpha1 == doctest::Approx(15.0).epsilon(1e-14));
  CHECK(c2.alpha2 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c2.g11 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(c2.g33 == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(c2.d == doctest::Approx(0.4472135954999579).epsilon(1e-14));

  const HelixConstants c1 = constants(kFig1);
  CHECK(c1.B == doctest::Approx(-79.0).epsilon(1e-14));
  CHECK(c1.a_tilde == doctest::Approx(296.25).epsilon(1e-14));
  CHECK(c1.b_tilde == doctest::Approx(79.0).epsilon(1e-14));
  CHECK(c1.alpha1 == doctest::Approx(75.05277766926235).epsilon(1e-14));
  CHECK(c1.alpha2 == doctest::Approx(3.9472223307376453).epsilon(1e-14));
  CHECK(c1.g11 == doctest::Approx(0.049964839629590446).epsilon(1e-13));
  CHECK(c1.g33 == doctest::Approx(0.9500351603704096).epsilon(1e-14));
  CHECK(c1.d == doctest::Approx(0.22933081243051176).epsilon(1e-13));

  const HelixConstants c3 = constants(kFig3);
  CHECK(c3.alpha1 == doctest::Approx(15.708203932499373).epsilon(1e-14));
  CHECK(c3.alpha2 == doctest::Approx(2.2917960675006315).epsilon(1e-14));
  CHECK(c3.d == doctest::Approx(0.38196601125010515).epsilon(1e-13));
}

TEST_CASE("structural constants: internal identities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    BergerParams p;
    p.epsilon = 0.3 + 2.7 * u01(rng);
    p.lambda = u01(rng) < 0.5 ? -1 : +1;
    const double mag =
        p.lambda == -1 ? 1.05 + 3.95 * u01(rng) : 0.2 + 4.8 * u01(rng);
    p.nu = (u01(rng) < 0.5 ? -1.0 : 1.0) * mag;
    const HelixConstants c = constants(p);

    CHECK(p.lambda * c.B > 0.0);
    const double rel = 1e-11;
    CHECK(std::abs(c.alpha1 * c.alpha2 - c.a_tilde) <=
          rel * std::max(1.0, std::abs(c.a_tilde)));
    CHECK(std::abs(c.alpha1 * c.alpha1 + c.alpha2 * c.alpha2 -
                   (c.b_tilde * c.b_tilde - 2.0 * c.a_tilde)) <=
          rel * std::max(1.0, c.b_tilde * c.b_tilde));
    CHECK(std::abs(c.g11 + c.g33 - 1.0) <= rel);
    CHECK(std::abs(c.d * c.d - c.alpha2 / c.alpha1) <= rel);
    CHECK(c.d > 0.0);
    CHECK(c.d < 1.0);
  }
}

TEST_CASE("parameter domain") {
  CHECK_THROWS_AS(constants({1.0, 0.5, -1}), std::domain_error);
  CHECK_THROWS_AS(constants({1.0, 1.0, -1}), std::domain_error);
  CHECK_THROWS_AS(constants({1.0, 0.0, +1}), std::domain_error);
  CHECK_THROWS_AS(constants({0.0, 2.0, +1}), std::domain_error);
  CHECK_THROWS_AS(constants({1.0, 2.0, 3}), std::invalid_argument);
  CHECK_NOTHROW(constants({1.0, -2.0, +1}));
  CHECK_NOTHROW(constants({1.0, -1.5, -1}));
}

TEST_CASE("directrix lies on the torus in the unit sphere") {
  const HelixConstants c = constants(kFig2);
  const AmbientPoint b0 = beta(c, 0.0);
  CHECK((b0.coords() -
         Vec4(0.408248290463863, 0.0, 0.9128709291752769, 0.0)).norm() < 1e-14);
  for (double u : {-2.0, -0.3, 0.5, 1.7}) {
    CHECK(beta(c, u).coords().norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("arclength reparametrization") {
  for (const BergerParams& p : {kFig1, kFig2}) {
    const HelixConstants c = constants(p);
    const double root_a = std::sqrt(c.a_tilde);
    for (double u : {-0.7, 0.1, 0.9}) {
      CHECK((beta(c, u).coords() - beta_arclength(c, root_a * u).coords())
                .norm() < 1e-13);
    }
    // unit Euclidean speed of the arclength form
    const double h = 1e-6;
    const Vec4 d = (beta_arclength(c, 0.3 + h).coords() -
                    beta_arclength(c, 0.3 - h).coords()) /
                   (2.0 * h);
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("example specs validate") {
  const HelixSpec s1 = fig2_spec();
  CHECK(s1.family.branch == +1);
  CHECK_FALSE(s1.family.canonical_v);

  const HelixSpec s2 = example2_spec(kFig3, 0.0, 0.0, -1.5, 1.5);
  CHECK(s2.family.canonical_v);
  // xi1 = arctan(1/d)
  CHECK(s2.family.xi1.eval(0.4) ==
        doctest::Approx(std::atan2(1.0, s2.consts.d)).epsilon(1e-14));
  CHECK(std::abs(compat_residual(s2.family, 0.7)) < 1e-12);
}

TEST_CASE("spec validation rejects broken families") {
  IsometryFamily anti;
  anti.xi1 = ScalarCurve::constant(0.7853981633974483);
  anti.xi2 = ScalarCurve::linear(1.0);
  anti.xi3 = ScalarCurve::linear(1.0);
  anti.branch = -1;
  CHECK_THROWS_WITH_AS(make_helix_spec(kFig2, anti, true),
                       doctest::Contains("commuting branch"),
                       std::invalid_argument);

  IsometryFamily incompat;
  incompat.xi1 = ScalarCurve::constant(0.0);
  incompat.xi2 = ScalarCurve::linear(1.0);
  incompat.xi3 = ScalarCurve::constant(0.0);
  CHECK_THROWS_WITH_AS(make_helix_spec(kFig2, incompat, true),
                       doctest::Contains("compatibility"),
                       std::invalid_argument);

  // negative controls can opt out of validation
  CHECK_NOTHROW(make_helix_spec(kFig2, anti, false));
}

TEST_CASE("surface jet stays on the sphere") {
  const HelixSpec spec = fig2_spec();
  for (double u : {-0.9, 0.0, 1.1}) {
    for (double v : {-1.8, 0.3, 1.9}) {
      const SurfaceJet jet = surface_jet(spec, u, v);
      CHECK(jet.F.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("surface jet derivatives match finite differences") {
  const HelixSpec spec = fig2_spec();
  const double u0 = 0.37, v0 = -0.52, h = 1e-6;
  const SurfaceJet jet = surface_jet(spec, u0, v0);

  const Vec4 fu = (surface_jet(spec, u0 + h, v0).F -
                   surface_jet(spec, u0 - h, v0).F) / (2.0 * h);
  CHECK((jet.Fu - fu).norm() < 1e-8 * jet.Fu.norm());

  const Vec4 fuu = (surface_jet(spec, u0 + h, v0).Fu -
                    surface_jet(spec, u0 - h, v0).Fu) / (2.0 * h);
  CHECK((jet.Fuu - fuu).norm() < 1e-8 * jet.Fuu.norm());

  const Vec4 fv = (surface_jet(spec, u0, v0 + h).F -
                   surface_jet(spec, u0, v0 - h).F) / (2.0 * h);
  CHECK((jet.Fv - fv).norm() < 1e-7 * std::max(1.0, jet.Fv.norm()));
}

TEST_CASE("quartic ODE closes at fourth order") {
  const HelixSpec spec = fig2_spec();
  const HelixConstants& c = spec.consts;
  const double coef2 = c.b_tilde * c.b_tilde - 2.0 * c.a_tilde;
  for (double u : {-1.3, 0.2, 0.8}) {
    const SurfaceJet jet = surface_jet(spec, u, 0.6);
    const Vec4 r = jet.Fuuuu + coef2 * jet.Fuu + c.a_tilde * c.a_tilde * jet.F;
    CHECK(r.norm() < 1e-8);
  }
}

TEST_CASE("v outside the padded family domain is rejected") {
  const HelixSpec spec = fig2_spec();  // v in [-2, 2], pad, 2% of the span
  CHECK_NOTHROW(surface_jet(spec, 0.1, 2.0));
  CHECK_NOTHROW(surface_jet(spec, 0.1, 2.05));
  CHECK_THROWS_AS(surface_jet(spec, 0.1, 2.2), std::domain_error);
  CHECK_THROWS_AS(surface_jet(spec, 0.1, -2.2), std::domain_error);
}
