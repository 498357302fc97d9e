#include "isor/cmc.hpp"
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

double max_cylinder_error(const OdeSolution& sol, double H, double a, double b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    const double want = std::sqrt(2 * b / H) * std::exp(a * sol.u[k]);
    worst = std::max(worst, std::abs(sol.rho[k] - want) / want);
  }
  return worst;
}

OdeSolution half_h(Interval range = {-1, 1}) { return solve_rho(0.5, 1.0, 4.2625, 2.0, 2.0, range); }

std::vector<Vec3> rows_of(const Mesh& m) { return m.vertices; }

}  // namespace

TEST(SolveRho, CylinderWithinTenTol) {
  const OdeSolution sol = solve_rho(1, 1, 0.5, 1, 1, {0, 2});
  EXPECT_FALSE(sol.truncated);
  EXPECT_EQ(sol.u.front(), 0.0);
  EXPECT_EQ(sol.u.back(), 2.0);
  EXPECT_LT(max_cylinder_error(sol, 1, 1, 0.5), 10 * 1e-10);
}

TEST(SolveRho, TighterToleranceConverges) {
  RhoSolveOptions loose, tight;
  loose.tol = 1e-7;
  tight.tol = 1e-8;
  loose.max_step = tight.max_step = 1e9;
  const double e1 = max_cylinder_error(solve_rho(1, 1, 0.5, 1, 1, {0, 2}, loose), 1, 1, 0.5);
  const double e2 = max_cylinder_error(solve_rho(1, 1, 0.5, 1, 1, {0, 2}, tight), 1, 1, 0.5);
  EXPECT_GT(e1 / e2, 4.0);
}

TEST(SolveRho, MinimalClosedForm) {
  const OdeSolution sol = solve_rho(0, 1, 1, 1, 2, {-1, 1});
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    const double want = rho_minimal({1, 1, 1}, sol.u[k]);
    EXPECT_LT(std::abs(sol.rho[k] - want), 10 * 1e-10 * want);
  }
}

TEST(SolveRho, HalfHRunsWithoutBlowUp) {
  const OdeSolution sol = half_h();
  EXPECT_FALSE(sol.truncated);
  EXPECT_EQ(sol.covered().lo, -1.0);
  EXPECT_EQ(sol.covered().hi, 1.0);
  const IntrinsicData d{sol.profile(), 0.5, 1.0, 4.2625};
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < sol.u.size(); ++k) {
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
      const double u = sol.u[k] + t * (sol.u[k + 1] - sol.u[k]);
      worst = std::max(worst, std::abs(master_ode_relative_residual(d, u)));
    }
  }
  EXPECT_LT(worst, 100 * 1e-10);
}

TEST(SolveRho, InterpolantReproducesNodes) {
  const OdeSolution sol = half_h();
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    EXPECT_EQ(sol.profile().rho(sol.u[k]), sol.rho[k]);
    EXPECT_NEAR(sol.profile().drho(sol.u[k]), sol.drho[k], 1e-12 * std::abs(sol.drho[k]) + 1e-14);
  }
}

TEST(SolveRho, BlowUpIsFlagged) {
  const OdeSolution sol = solve_rho(0, 0, 0, 1, -10, {0, 3});
  EXPECT_TRUE(sol.truncated);
  EXPECT_LT(sol.covered().hi, 3.0);
  EXPECT_LE(sol.covered().hi, std::log(1e8) / 10);
  EXPECT_GT(sol.covered().hi, std::log(1e8) / 10 - 0.25);
  EXPECT_FALSE(sol.diagnostic.empty());
  EXPECT_THROW(integrate_surface(sol.profile(), 0, 0, 0, {0, 3}, {0, 1}, 4, 4), BlowUp);
}

TEST(SolveRho, RejectsBadInput) {
  EXPECT_THROW(solve_rho(1, 1, 1, 0.0, 1, {0, 1}), NonpositiveInitialRho);
  RhoSolveOptions o;
  o.u0 = 2.0;
  EXPECT_THROW(solve_rho(1, 1, 1, 1, 1, {0, 1}, o), InvalidArgument);
}

TEST(Profile, MinimalFrameMatchesClosedForm) {
  const MinimalParams p{1, 1, 1};
  const MetricProfile prof = minimal_profile(p, {-1.5, 1.5});
  const auto s = linspace({-1, 1}, 41);
  const Frame f0 = frame_closed_form(p, s[0]);
  const FrameState init{profile_curve(p, s[0]), f0.X, f0.Y, f0.N};
  const ProfileFrames pf = integrate_profile(prof, 0, p.a, 1, s, init);
  ASSERT_EQ(pf.frames.size(), s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Frame f = frame_closed_form(p, s[k]);
    EXPECT_LT((pf.frames[k].X - f.X).norm(), 1e-7);
    EXPECT_LT((pf.frames[k].N - f.N).norm(), 1e-7);
    EXPECT_LT((pf.frames[k].position - profile_curve(p, s[k])).norm(), 1e-7);
  }
}

TEST(Profile, YConstantAndCurvePlanar) {
  const OdeSolution sol = half_h();
  const auto s = linspace({-1, 1}, 101);
  FrameState init;
  init.X = Vec3(1, 1, 0).normalized();
  init.Y = Vec3(-1, 1, 1).normalized();
  init.N = init.X.cross(init.Y);
  init.position = Vec3(0.3, -0.2, 1.0);
  const ProfileFrames pf = integrate_profile(sol.profile(), 0.5, 1, 4.2625, s, init);
  for (const auto& f : pf.frames) {
    EXPECT_LT((f.Y - init.Y).norm(), 1e-10);
    EXPECT_LT(std::abs((f.position - init.position).dot(init.Y)), 1e-9);
  }
  EXPECT_LT(pf.stats.drift_per_length, 1e-9);
}

TEST(Profile, CylinderArcIsCircle) {
  const double H = 1, a = 1, b = 0.5;
  const auto s = linspace({-1, 1}, 51);
  const ProfileFrames pf = integrate_profile(cylinder_profile(H, a, b, {-1, 1}), H, a, b, s, FrameState{});
  // X' = -H rho N: the curve bends away from N.
  const Vec3 centre = pf.frames[0].position - pf.frames[0].N / H;
  for (const auto& f : pf.frames) EXPECT_NEAR((f.position - centre).norm(), 1 / H, 1e-7);
}

TEST(Profile, TruncatesOutsideDomain) {
  const auto s = linspace({0, 2}, 5);
  const ProfileFrames pf = integrate_profile(cylinder_profile(1, 1, 0.5, {0, 1}), 1, 1, 0.5, s, FrameState{});
  EXPECT_TRUE(pf.truncated);
  EXPECT_EQ(pf.frames.size(), 3u);
}

TEST(Surface, CylinderMatchesPolarParametrization) {
  const double H = 1, a = 1, b = 0.5;
  const Interval ur{0, 1}, vr{-0.6, 0.6};
  const CmcSurface s = integrate_surface(cylinder_profile(H, a, b, ur), H, a, b, ur, vr, 21, 25);
  const Mesh ref = sample_mesh(cylinder_surface(H, a, b, ur, vr), 21, 25);
  const RigidFit fit = fit_rigid_motion(s.mesh.vertices, ref.vertices);
  EXPECT_LT(fit.max_error, 1e-6);
  for (const auto& p : s.mesh.vertices) {
    const Vec3 q = fit.motion.apply(p);
    EXPECT_NEAR(q.x() * q.x() + q.y() * q.y(), 1 / (H * H), 1e-6);
  }
}

TEST(Surface, MinimalMatchesClosedFormUpToMotion) {
  const MinimalParams p{1, 1, 1};
  const Interval ur{-1, 1}, vr{-1.5, 1.5};
  const CmcSurface s = integrate_surface(minimal_profile(p, ur), 0, p.a, 1, ur, vr, 21, 31);
  const Mesh ref = sample_mesh(minimal_surface(p, ur, vr), 21, 31);
  EXPECT_LT(fit_rigid_motion(rows_of(s.mesh), ref.vertices).max_error, 1e-5);
  for (const auto& n : s.mesh.normals) EXPECT_NEAR(n.norm(), 1.0, 1e-12);
}

TEST(Surface, HalfHMeanCurvature) {
  const OdeSolution sol = half_h();
  const CmcSurface s = integrate_surface(sol.profile(), 0.5, 1, 4.2625, {-1, 1}, {-1.5, 1.5}, 201, 301);
  double worst = 0.0;
  for (int i = 1; i + 1 < s.mesh.nu; i += 5) {
    for (int j = 1; j + 1 < s.mesh.nv; j += 5) {
      const FormPair fp = grid_fundamental_forms(s.mesh, i, j);
      worst = std::max(worst, std::abs(principal_data(shape_from_forms(fp), fp).mean() - 0.5));
    }
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Surface, TransportCommutes) {
  const OdeSolution sol = half_h();
  const double H = 0.5, a = 1, b = 4.2625;
  const FrameState f0;
  const double u0 = -0.4, u1 = 0.6, v1 = 0.9;
  const double su[] = {u1}, sv[] = {v1};
  const FrameState a1 = transport(sol.profile(), H, a, b, Direction::u, 0.0, u0, f0, su)[0];
  const FrameState p1 = transport(sol.profile(), H, a, b, Direction::v, u1, 0.0, a1, sv)[0];
  const FrameState a2 = transport(sol.profile(), H, a, b, Direction::v, u0, 0.0, f0, sv)[0];
  const FrameState p2 = transport(sol.profile(), H, a, b, Direction::u, v1, u0, a2, su)[0];
  EXPECT_LT((p1.position - p2.position).norm(), 1e-6);
  EXPECT_LT((p1.X - p2.X).norm(), 1e-6);
  EXPECT_LT((p1.N - p2.N).norm(), 1e-6);
}

TEST(Cylinder, ClosedFormProperties) {
  const double H = 0.7, a = 1.3, b = 0.4;
  const SurfaceMap map = cylinder_surface(H, a, b, {-1, 1}, {-1, 1});
  for (int k = 0; k < 20; ++k) {
    const Vec3 p = cylinder_point(H, a, b, oracle::uniform(-1, 1), oracle::uniform(-1, 1));
    EXPECT_NEAR(p.x() * p.x() + p.y() * p.y(), 1 / (H * H), 1e-12);
  }
  for (double u : {-0.5, 0.2}) {
    const FormPair fp = fundamental_forms(map, u, 0.1, 1e-4);
    const double want = 2 * b * std::exp(2 * a * u) / H;
    EXPECT_NEAR(fp.E, want, 1e-7 * want);
    EXPECT_NEAR(fp.G, want, 1e-7 * want);
    EXPECT_NEAR(fp.F, 0, 1e-7 * want);
    EXPECT_NEAR(cylinder_rho(H, a, b, u) * cylinder_rho(H, a, b, u), want, 1e-12 * want);
  }
  const SurfaceMap m2 = cylinder_surface(H, a, b, {-1, 1}, {0.1, 2.0});
  EXPECT_NEAR(fit_twist(m2, linspace({-0.5, 0.5}, 3), linspace({0.2, 1.9}, 30), 1e-4).a_est, a, 1e-4);
}

TEST(Hopf, ValueAndHolomorphy) {
  EXPECT_EQ(hopf(3.0, 0.7, 0.0), cd(1.5, 0.0));
  const double h = 1e-5;
  for (int k = 0; k < 20; ++k) {
    const cd z(oracle::uniform(-1, 1), oracle::uniform(-2, 2));
    const cd dx = (hopf(1.3, 0.8, z + h) - hopf(1.3, 0.8, z - h)) / (2 * h);
    const cd dy = (hopf(1.3, 0.8, z + cd(0, h)) - hopf(1.3, 0.8, z - cd(0, h))) / (2 * h);
    // Cauchy-Riemann: d/dy = i d/dx.
    EXPECT_LT(std::abs(dy - cd(0, 1) * dx), 1e-8);
  }
}

TEST(Hopf, ConsistentWithShapeOperator) {
  const OdeSolution sol = half_h();
  const IntrinsicData d{sol.profile(), 0.5, 1.0, 4.2625};
  for (int k = 0; k < 20; ++k) {
    const double u = oracle::uniform(-1, 1), v = oracle::uniform(-3, 3);
    const LambdaPair l = lambda_pair(d, u);
    const cd omega = hopf_from_shape(d.profile.rho(u), twisted_shape_operator(l.lambda1, l.lambda2, d.a * v));
    const cd want = hopf(d.b, d.a, cd(u, v));
    EXPECT_LT(std::abs(omega - want), 1e-10 * std::abs(want));
  }
}

TEST(Smyth, CylinderResidual) {
  const MetricProfile prof = cylinder_profile(2, 1, 1, {-1, 1});
  for (double u : linspace({-1, 1}, 21)) {
    EXPECT_LT(std::abs(smyth_residual(prof, 1, 1, u)), 1e-8);
    EXPECT_NEAR(std::exp(smyth_phi(prof, u) / 2), prof.rho(u), 1e-12 * prof.rho(u));
    EXPECT_NEAR(smyth_mu(1, 1, u), std::exp(2 * u), 1e-15 * std::exp(2 * u));
  }
}

TEST(Smyth, NumericalRunSelectsExponentSign) {
  const OdeSolution sol = solve_rho(2, 1, 1, 1, 0, {-1, 1});
  ASSERT_FALSE(sol.truncated);
  double chosen = 0.0, other = 0.0;
  for (double u : linspace({-0.95, 0.95}, 39)) {
    chosen = std::max(chosen, std::abs(smyth_residual(sol.profile(), 1, 1, u)));
    other = std::max(other, std::abs(smyth_residual(sol.profile(), 1, 1, u, -kSmythExponentSign)));
  }
  EXPECT_LT(chosen, 1e-5);
  EXPECT_GT(other, 1e-2);
}
