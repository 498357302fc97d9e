#include "isor/geometry.hpp"
#include "isor/intrinsic.hpp"
#include "isor/minimal.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace isor;
using cd = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;

MinimalParams random_params(double lo = 0.3, double hi = 3.0) {
  return {oracle::uniform(lo, hi), oracle::uniform(lo, hi), oracle::uniform(lo, hi)};
}

}  // namespace

TEST(RhoMinimal, EnneperValueAtZero) { EXPECT_DOUBLE_EQ(rho_minimal({1, 1, 1}, 0.0), 1.0); }

TEST(RhoMinimal, MatchesClassicalEnneperMetric) {
  for (double u : linspace({-2, 2}, 21)) {
    EXPECT_NEAR(rho_minimal({1, 1, 1}, u), oracle::enneper_sqrtE(u), 1e-14 * oracle::enneper_sqrtE(u));
  }
}

TEST(RhoMinimal, DerivativesMatchJets) {
  for (int k = 0; k < 20; ++k) {
    const MinimalParams p = random_params();
    const double u = oracle::uniform(-1, 1);
    const auto j = oracle::rho_minimal(p.a, p.A, p.B, u);
    EXPECT_NEAR(rho_minimal(p, u), j.v, 1e-13 * j.v);
    EXPECT_NEAR(drho_minimal(p, u), j.d, 1e-12 * std::abs(j.v) * 10);
    EXPECT_NEAR(ddrho_minimal(p, u), j.dd, 1e-12 * std::abs(j.v) * 100);
  }
}

TEST(RecoverAB, EnneperRoundTrip) {
  const MinimalParams p = recover_AB(1.0, 2.0, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(p.A, 1.0);
  EXPECT_DOUBLE_EQ(p.B, 1.0);
}

TEST(RecoverAB, ForwardThenBack) {
  const MinimalParams q{0.7, 2.0, 1.5};
  const MinimalParams p = recover_AB(rho_minimal(q, 0.4), drho_minimal(q, 0.4), 0.4, 0.7);
  EXPECT_NEAR(p.A, 2.0, 1e-10);
  EXPECT_NEAR(p.B, 1.5, 1e-10);
}

TEST(RecoverAB, RadicandZeroBoundary) {
  const double a = 1.0, u = 0.2, sigma = std::exp(2 * a * u);
  const MinimalParams p = recover_AB(sigma, 2 * a * sigma, u, a);
  EXPECT_NEAR(p.B * std::exp(-2 * a * u) * sigma, 1.0, 1e-15);
  EXPECT_NEAR(p.A, std::exp(-p.B * u), 1e-15);
}

TEST(RecoverAB, RandomRoundTrips) {
  for (int k = 0; k < 200; ++k) {
    const MinimalParams q{oracle::uniform(0.3, 3), oracle::uniform(0.1, 10), oracle::uniform(0.1, 10)};
    const double u = oracle::uniform(-0.5, 0.5);
    const MinimalParams p = recover_AB(rho_minimal(q, u), drho_minimal(q, u), u, q.a);
    EXPECT_NEAR(p.A, q.A, 1e-10 * q.A);
    EXPECT_NEAR(p.B, q.B, 1e-10 * q.B);
  }
  EXPECT_THROW(recover_AB(0.0, 1.0, 0.0, 1.0), InvalidArgument);
}

TEST(Classify, ScalesByB) {
  const MinimalParams q{0.8, 1.3, 0.9};
  const auto c = classify_minimal(0.8, -2.5, 2.5 * rho_minimal(q, 0.1), 2.5 * drho_minimal(q, 0.1), 0.1);
  EXPECT_DOUBLE_EQ(c.scale, 2.5);
  EXPECT_NEAR(c.params.A, q.A, 1e-12);
  EXPECT_NEAR(c.params.B, q.B, 1e-12);
  EXPECT_THROW(classify_minimal(0.8, 0.0, 1.0, 0.0, 0.0), PlaneCase);
}

TEST(MinimalPoint, EnneperOrigin) {
  EXPECT_LT((minimal_point({1, 1, 1}, 0, 0) - Vec3(1.0 / 3.0, 0.0, -0.5)).norm(), 1e-15);
}

TEST(MinimalPoint, ClassicalEnneperUpToFixedMotion) {
  for (int k = 0; k < 20; ++k) {
    const double u = oracle::uniform(-1, 1), v = oracle::uniform(-3, 3);
    const Vec3 f = minimal_point({1, 1, 1}, u, v);
    EXPECT_LT((Vec3(f.x(), -f.y(), -f.z()) - oracle::enneper(u, v)).norm(), 1e-13);
  }
}

TEST(MinimalPoint, ConformalWithFactorRho) {
  for (int k = 0; k < 10; ++k) {
    const MinimalParams p = random_params(0.3, 2.0);
    const SurfaceMap map = minimal_surface(p, {-1, 1}, {-3, 3});
    for (int s = 0; s < 5; ++s) {
      const double u = oracle::uniform(-0.8, 0.8), v = oracle::uniform(-2.8, 2.8);
      const FormPair fp = fundamental_forms(map, u, v, 1e-4);
      const double r2 = std::pow(rho_minimal(p, u), 2);
      EXPECT_NEAR(fp.E, r2, 1e-7 * r2);
      EXPECT_NEAR(fp.G, r2, 1e-7 * r2);
      EXPECT_NEAR(fp.F, 0.0, 1e-7 * r2);
    }
  }
}

TEST(MinimalPoint, MinimalAtRandomPoints) {
  for (int k = 0; k < 20; ++k) {
    const MinimalParams p = random_params();
    const SurfaceMap map = minimal_surface(p, {-1, 1}, {-3.5, 3.5});
    for (int s = 0; s < 50; ++s) {
      const double u = oracle::uniform(-0.9, 0.9), v = oracle::uniform(-3.4, 3.4);
      const PrincipalData pd = principal_at(map, u, v, 1e-4);
      EXPECT_LT(std::abs(pd.mean()), 1e-5) << p.a << ' ' << p.A << ' ' << p.B << " at " << u << ',' << v;
    }
  }
}

TEST(MinimalPoint, PrincipalCurvaturesFromIntrinsicData) {
  const MinimalParams p{0.7, 2.0, 1.5};
  const IntrinsicData d = minimal_intrinsic(p, {-1, 1});
  const SurfaceMap map = minimal_surface(p, {-1, 1}, {-3, 3});
  for (double u : {-0.5, 0.0, 0.5}) {
    const PrincipalData pd = principal_at(map, u, 0.8, 1e-4);
    const LambdaPair l = lambda_pair(d, u);
    EXPECT_NEAR(pd.lambda1, l.lambda1, 1e-6 * std::max(1.0, std::abs(l.lambda1)));
    EXPECT_NEAR(pd.lambda2, l.lambda2, 1e-6 * std::max(1.0, std::abs(l.lambda1)));
  }
}

TEST(MinimalPoint, TwistRateRecovered) {
  for (int k = 0; k < 4; ++k) {
    const MinimalParams p = random_params(0.4, 1.5);
    const SurfaceMap map = minimal_surface(p, {-1, 1}, {-0.1, 3.2});
    const TwistFit fit = fit_twist(map, linspace({-0.6, 0.6}, 3), linspace({0.0, 3.0}, 80), 1e-4);
    EXPECT_NEAR(fit.a_est, p.a, 1e-4);
  }
}

TEST(MinimalPoint, EnneperCyclicSymmetry) {
  for (int n = 1; n <= 4; ++n) {
    const MinimalParams p = preset("enneper", n);
    const double phi = 2 * kPi / (n + 1);
    const Mat3 R = oracle::rot_z(phi);
    for (double u : linspace({-1, 1}, 7)) {
      for (double v : linspace({-kPi, kPi}, 13)) {
        const Vec3 x = minimal_point(p, u, v);
        EXPECT_LT((minimal_point(p, u, v + phi) - R * x).norm(), 1e-9 * std::max(1.0, x.norm()));
      }
    }
  }
}

TEST(Period, ResonantCases) {
  const auto t = period_vector(preset("translation-invariant"));
  ASSERT_TRUE(t);
  EXPECT_LT((*t - Vec3(0, kPi, 0)).norm(), 1e-15);
  EXPECT_FALSE(period_vector({1, 1, 1}));
  const MinimalParams q{0.5, 2.0, 1.0};
  EXPECT_LT((*period_vector(q) - Vec3(0, kPi / 2, 0)).norm(), 1e-15);
  for (double u : {-0.5, 0.3}) {
    for (double v : {0.0, 1.1}) {
      const Vec3 d = minimal_point(q, u, v + kPi / q.a) - minimal_point(q, u, v);
      EXPECT_LT((d - *period_vector(q)).norm(), 1e-13);
    }
  }
}

TEST(Period, ResonanceSwitchUsesRelativeThreshold) {
  EXPECT_TRUE(is_resonant({0.5, 1.0, 1.0 + 1e-12}));
  EXPECT_FALSE(is_resonant({0.5, 1.0, 1.0 + 1e-6}));
}

TEST(Frame, LimitAndSpecialValues) {
  const Frame far = frame_closed_form({1, 1, 1}, -40.0);
  EXPECT_LT((far.X - Vec3::UnitX()).norm(), 1e-15);
  EXPECT_LT((far.N - Vec3::UnitZ()).norm(), 1e-15);
  const Frame f0 = frame_closed_form({1, 1, 1}, 0.0);
  EXPECT_LT((f0.X - Vec3(0, 0, -1)).norm(), 1e-15);
  EXPECT_LT((f0.N - Vec3(1, 0, 0)).norm(), 1e-15);
}

TEST(Frame, OrthonormalAndAdaptedToSurface) {
  for (int k = 0; k < 20; ++k) {
    const MinimalParams p = random_params();
    const double s = oracle::uniform(-1, 1);
    const Frame f = frame_closed_form(p, s);
    EXPECT_NEAR(f.X.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.N.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.X.dot(f.N), 0.0, 1e-12);
    EXPECT_LT((f.X.cross(f.Y) - f.N).norm(), 1e-12);
    const Vec3 dc = profile_curve_derivative(p, s);
    EXPECT_LT((dc - rho_minimal(p, s) * f.X).norm(), 1e-12 * dc.norm());
    const SurfaceMap map = minimal_surface(p, {-1.5, 1.5}, {-1, 1});
    EXPECT_LT((surface_normal(map, s, 0.0) - f.N).norm(), 1e-7);
  }
}

TEST(ProfileCurve, AgreesWithImmersion) {
  for (int k = 0; k < 20; ++k) {
    MinimalParams p = random_params();
    if (k % 5 == 0) p.B = 2 * p.a;
    const double s = oracle::uniform(-1, 1);
    const Vec3 c = profile_curve(p, s);
    const Vec3 f = minimal_point(p, s, 0.0);
    EXPECT_LT((c - f).norm(), 1e-12 * std::max(1.0, f.norm()));
    EXPECT_EQ(c.y(), 0.0);
    const double h = 1e-5;
    const Vec3 fd = (profile_curve(p, s + h) - profile_curve(p, s - h)) / (2 * h);
    EXPECT_LT((fd - profile_curve_derivative(p, s)).norm(), 1e-7 * std::max(1.0, fd.norm()));
  }
}

TEST(Weierstrass, ReproducesClosedFormDifferences) {
  for (int k = 0; k < 5; ++k) {
    const MinimalParams p = random_params(0.3, 2.0);
    const cd z0(0.0, 0.0);
    for (int s = 0; s < 10; ++s) {
      const cd z(oracle::uniform(-1, 1), oracle::uniform(-2, 2));
      const Vec3 w = weierstrass_integrate(p, z0, z, 32);
      const Vec3 want = minimal_point(p, z.real(), z.imag()) - minimal_point(p, 0, 0);
      EXPECT_LT((w - want).norm(), 1e-9 * std::max(1.0, want.norm()));
    }
  }
}

TEST(Weierstrass, DerivativeIsIntegrand) {
  const MinimalParams p{0.7, 2.0, 1.5};
  const cd z0(-0.2, 0.1);
  for (int k = 0; k < 5; ++k) {
    const cd z(oracle::uniform(-0.8, 0.8), oracle::uniform(-1, 1));
    const double h = 1e-5;
    const Vec3 dx = (weierstrass_integrate(p, z0, z + h, 32) - weierstrass_integrate(p, z0, z - h, 32)) / (2 * h);
    const Vec3 dy = (weierstrass_integrate(p, z0, z + cd(0, h), 32) - weierstrass_integrate(p, z0, z - cd(0, h), 32)) /
                    (2 * h);
    const Eigen::Vector3cd phi = weierstrass_integrand(p, z);
    EXPECT_LT((dx - phi.real()).norm(), 1e-8);
    EXPECT_LT((dy + phi.imag()).norm(), 1e-8);
  }
}

TEST(Weierstrass, NormalIsStereographicGaussMap) {
  const MinimalParams p{0.9, 0.7, 1.4};
  const SurfaceMap map = minimal_surface(p, {-1, 1}, {-3, 3});
  for (int k = 0; k < 20; ++k) {
    const double u = oracle::uniform(-0.9, 0.9), v = oracle::uniform(-2.9, 2.9);
    EXPECT_LT((surface_normal(map, u, v) - weierstrass_normal(p, cd(u, v))).norm(), 1e-6);
  }
}

TEST(Weierstrass, ResidueLoopGivesPeriod) {
  for (const MinimalParams& p : {preset("translation-invariant"), MinimalParams{0.5, 2.0, 1.0}}) {
    const cd z0(0.3, -0.4);
    const Vec3 loop = weierstrass_integrate(p, z0, z0 + cd(0, 2 * kPi), 64);
    EXPECT_LT((loop - *period_vector(p)).norm(), 1e-8);
  }
}

TEST(Bjorling, CoreCurveIsReproduced) {
  const MinimalParams p{0.7, 2.0, 1.5};
  for (double u : {-0.7, 0.0, 0.9}) EXPECT_EQ(bjorling_point(p, u, 0.0, 4), profile_curve(p, u));
}

TEST(Bjorling, AgreesWithClosedForm) {
  EXPECT_LT((bjorling_point({1, 1, 1}, 0.1, 0.2, 16) - minimal_point({1, 1, 1}, 0.1, 0.2)).norm(), 1e-8);
  for (int k = 0; k < 5; ++k) {
    MinimalParams p = random_params(0.3, 2.0);
    if (k == 0) p.B = 2 * p.a;
    for (int s = 0; s < 10; ++s) {
      const double u = oracle::uniform(-1, 1), v = oracle::uniform(-2, 2);
      const Vec3 f = minimal_point(p, u, v);
      EXPECT_LT((bjorling_point(p, u, v, 64) - f).norm(), 1e-8 * std::max(1.0, f.norm()));
    }
  }
}

TEST(Bjorling, ConvergesAtQuadratureOrder) {
  const MinimalParams p{1, 1, 1};
  const double u = 0.3, v = 1.2;
  const Vec3 f = minimal_point(p, u, v);
  auto err = [&](int n) { return (bjorling_point(p, u, v, n, 2) - f).norm(); };
  // Two-point Gauss-Legendre: error ~ n^-4.
  EXPECT_GT(err(4) / err(8), 12.0);
  EXPECT_GT(err(8) / err(16), 12.0);
}

TEST(Presets, NamedParameters) {
  const MinimalParams e = preset("enneper", 1);
  EXPECT_EQ(e.a, 1.0);
  EXPECT_EQ(e.A, 1.0);
  EXPECT_EQ(e.B, 1.0);
  const MinimalParams pe = preset("planar-enneper", 1);
  EXPECT_EQ(pe.a, 0.5);
  EXPECT_EQ(pe.B, 2.0);
  const MinimalParams t = preset("translation-invariant");
  EXPECT_EQ(t.a, 0.5);
  EXPECT_EQ(t.B, 1.0);
  EXPECT_TRUE(is_resonant(t));
  EXPECT_THROW(preset("catenoid"), UnknownPreset);
  EXPECT_THROW(preset("enneper", 0), InvalidArgument);
  EXPECT_EQ(list_presets().size(), 3u);
}

TEST(Validation, RejectsNonpositiveParameters) {
  EXPECT_THROW(minimal_surface({0.0, 1, 1}, {0, 1}, {0, 1}), InvalidArgument);
  EXPECT_THROW(minimal_profile({1, -1, 1}, {0, 1}), InvalidArgument);
}
