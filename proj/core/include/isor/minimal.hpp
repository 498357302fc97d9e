#pragma once

// The minimal (H = 0) intrinsic surfaces of revolution with twist a v, normalized to b = 1:
// closed-form conformal factor, immersion, profile curve and frame, Weierstrass data and
// the Bjorling construction from the profile curve.

#include "isor/common.hpp"
#include "isor/intrinsic.hpp"
#include "isor/profile.hpp"
#include "isor/surface.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isor {

struct MinimalParams {
  double a = 1.0;  // twist rate
  double A = 1.0;
  double B = 1.0;
};

// Throws InvalidArgument unless a, A, B > 0.
void validate(const MinimalParams& p);

// True when |B - 2a| < 1e-9 max(B, 2a); such parameters use the B = 2a formulas.
bool is_resonant(const MinimalParams& p);

// rho(u) = e^{2au} (A e^{Bu} + e^{-Bu} / A) / (2B) and its derivatives.
double rho_minimal(const MinimalParams& p, double u);
double drho_minimal(const MinimalParams& p, double u);
double ddrho_minimal(const MinimalParams& p, double u);

MetricProfile minimal_profile(const MinimalParams& p, Interval domain);
// (profile, H = 0, a, b = 1)
IntrinsicData minimal_intrinsic(const MinimalParams& p, Interval domain);

// Parameters (A, B) whose conformal factor has value sigma and slope dsigma at u.
MinimalParams recover_AB(double sigma, double dsigma, double u, double a);

struct MinimalClassification {
  MinimalParams params;
  double scale = 1.0;  // rho = scale * rho_minimal(params, .)
};

// Classifies the H = 0 solution of the master ODE with constant b through (sigma, dsigma)
// at u. Throws PlaneCase for b = 0.
MinimalClassification classify_minimal(double a, double b, double sigma, double dsigma, double u);

Vec3 minimal_point(const MinimalParams& p, double u, double v);
SurfaceMap minimal_surface(const MinimalParams& p, Interval u_range, Interval v_range);

// Translation f(u, v + pi/a) - f(u, v) = (0, pi/(4 a^2 A), 0) in the resonant case.
std::optional<Vec3> period_vector(const MinimalParams& p);

struct Frame {
  Vec3 X = Vec3::UnitX();
  Vec3 Y = Vec3::UnitY();
  Vec3 N = Vec3::UnitZ();
};

// Frame along the profile curve v = 0, normalized to (e1, e2, e3) at s -> -infinity.
Frame frame_closed_form(const MinimalParams& p, double s);

// The planar profile curve f(s, 0) and its derivative.
Vec3 profile_curve(const MinimalParams& p, double s);
Vec3 profile_curve_derivative(const MinimalParams& p, double s);

// Gauss map G(z) = e^{-Bz} / A and height differential dh = -(1/B) e^{2az} dz.
std::complex<double> weierstrass_gauss_map(const MinimalParams& p, std::complex<double> z);
std::complex<double> weierstrass_height_density(const MinimalParams& p, std::complex<double> z);

// (1/G - G, i (1/G + G), 2) dh / 2 at z.
Eigen::Vector3cd weierstrass_integrand(const MinimalParams& p, std::complex<double> z);

// Unit normal obtained from G by inverse stereographic projection.
Vec3 weierstrass_normal(const MinimalParams& p, std::complex<double> z);

// Re of the Weierstrass integral along the straight segment z0 -> z, composite
// Gauss-Legendre with n_steps panels of `points` nodes.
Vec3 weierstrass_integrate(const MinimalParams& p, std::complex<double> z0, std::complex<double> z, int n_steps,
                           int points = 8);

// Re( c(z) - i int_u^z N(w) x c'(w) dw ) with c, N the holomorphic extensions of the
// profile curve and its normal; the path is the vertical segment u -> u + iv.
Vec3 bjorling_point(const MinimalParams& p, double u, double v, int n_steps, int points = 8);

struct PresetInfo {
  std::string name;
  bool takes_order;
  std::string description;
};

// enneper(n): B = n, a = (n+1)/2; planar-enneper(n): B = n+1, a = n/2;
// translation-invariant: B = 1, a = 1/2. A = 1 throughout.
MinimalParams preset(std::string_view name, int n = 1);
std::vector<PresetInfo> list_presets();

}  // namespace isor
