#pragma once

// Constant mean curvature intrinsic surfaces of revolution: numerical solution of the
// master ODE, moving-frame integration of the profile curve and of the full surface,
// the explicit cylinder, the Hopf differential and the reduction to a sinh equation.

#include "isor/common.hpp"
#include "isor/ode.hpp"
#include "isor/profile.hpp"
#include "isor/surface.hpp"

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isor {

struct RhoSolveOptions {
  double tol = 1e-10;  // rtol = atol
  double u0 = 0.0;     // where (rho0, drho0) are prescribed; must lie in u_range
  // Caps the node spacing of the interpolant; its second derivative between nodes is
  // accurate to ~1e-8 relative at this spacing for tol = 1e-10.
  double max_step = 0.0025;
};

// Accepted steps of the master ODE rho'' = (rho'^2 - H^2 rho^4 / 4 + b^2 e^{4au}) / rho,
// with a C^2 quintic Hermite interpolant through them.
struct OdeSolution {
  double H = 0.0, a = 0.0, b = 0.0;
  std::vector<double> u;
  std::vector<double> rho;
  std::vector<double> drho;
  std::vector<double> ddrho;  // from the ODE itself
  ode::Stats stats;
  bool truncated = false;  // rho -> 0 or |rho'| -> infinity (or step failure) before the end
  std::string diagnostic;
  std::optional<MetricProfile> interpolant;

  Interval covered() const { return {u.front(), u.back()}; }
  const MetricProfile& profile() const { return *interpolant; }
};

// Throws NonpositiveInitialRho for rho0 <= 0. A blow-up is reported through `truncated`,
// with the solution up to the last good step.
OdeSolution solve_rho(double H, double a, double b, double rho0, double drho0, Interval u_range,
                      const RhoSolveOptions& opt = {});

// rho'' from the master ODE.
double master_ode_rhs(double H, double a, double b, double u, double rho, double drho);

struct FrameState {
  Vec3 position = Vec3::Zero();
  Vec3 X = Vec3::UnitX();
  Vec3 Y = Vec3::UnitY();
  Vec3 N = Vec3::UnitZ();
};

struct FrameOptions {
  double tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
};

struct TransportStats {
  ode::Stats steps;
  // Largest deviation of (X, Y, N) from orthonormality seen before a re-projection.
  double max_step_drift = 0.0;
  // Summed pre-projection drift divided by the arc length travelled.
  double drift_per_length = 0.0;
  double arc_length = 0.0;
};

struct ProfileFrames {
  std::vector<double> s;
  std::vector<FrameState> frames;  // frames[k] at s[k]
  TransportStats stats;
  bool truncated = false;  // samples beyond the profile domain were dropped
};

// Integrates the profile curve c' = rho X together with X' = -k N, Y' = 0, N' = k X,
// k = b e^{2as} / rho + H rho / 2, from init at s_samples[0] through the (monotone)
// samples. The frame is re-orthonormalized after every accepted step.
ProfileFrames integrate_profile(const MetricProfile& profile, double H, double a, double b,
                                std::span<const double> s_samples, const FrameState& init,
                                const FrameOptions& opt = {});

enum class Direction { u, v };

// Moves a frame along a coordinate line: along u at fixed v (dir = u) or along v at
// fixed u (dir = v), from parameter t0 through the monotone stops. Returns the frames
// at the stops.
std::vector<FrameState> transport(const MetricProfile& profile, double H, double a, double b, Direction dir,
                                  double fixed, double t0, const FrameState& init, std::span<const double> stops,
                                  const FrameOptions& opt = {}, TransportStats* stats = nullptr);

struct CmcSurface {
  Mesh mesh;
  TransportStats profile_stats;
  TransportStats column_stats;  // merged over all columns
};

// Profile pass along v = 0 from (u_range.lo, 0) with the standard frame at the origin,
// then every u-column is transported along v. Throws BlowUp if the profile domain does
// not cover u_range.
CmcSurface integrate_surface(const MetricProfile& profile, double H, double a, double b, Interval u_range,
                             Interval v_range, int nu, int nv, const FrameOptions& opt = {});

// rho = sqrt(2b/H) e^{au}, the explicit solution with lambda = (H, 0).
double cylinder_rho(double H, double a, double b, double u);
MetricProfile cylinder_profile(double H, double a, double b, Interval domain);
// Cylinder of radius 1/H in geodesic polar coordinates.
Vec3 cylinder_point(double H, double a, double b, double u, double v);
SurfaceMap cylinder_surface(double H, double a, double b, Interval u_range, Interval v_range);

// Omega(z) = b e^{2az} / 2.
std::complex<double> hopf(double b, double a, std::complex<double> z);
// rho^2 w^T S w with w = (1, -i)/2 and S in the orthonormal frame (U, V).
std::complex<double> hopf_from_shape(double rho, const Mat2& S_orthonormal);

// Exponent sign in F'' = -4 b e^{sign 2au} sinh F, fixed by a substitution check.
inline constexpr int kSmythExponentSign = +1;

// phi = 2 log rho, F = phi - sign 2au - log b, mu = rho^2 (lambda1 - H/2) = b e^{2au}.
double smyth_phi(const MetricProfile& profile, double u);
double smyth_F(const MetricProfile& profile, double a, double b, double u, int sign = kSmythExponentSign);
double smyth_mu(double a, double b, double u);

// F'' + 4 b e^{sign 2au} sinh F for a profile solving the master ODE with H = 2.
double smyth_residual(const MetricProfile& profile, double a, double b, double u,
                      int sign = kSmythExponentSign);

}  // namespace isor
