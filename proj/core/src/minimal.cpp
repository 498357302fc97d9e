#include "isor/minimal.hpp"

#include "isor/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isor {

namespace {

using cd = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
constexpr cd kI{0.0, 1.0};

Vec3c cross(const Vec3c& x, const Vec3c& y) {
  return Vec3c(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
}

// Closed forms shared by the real and holomorphic evaluations.
template <class T>
Eigen::Matrix<T, 3, 1> profile_curve_t(const MinimalParams& p, T s) {
  const double a = p.a, A = p.A, B = p.B;
  if (is_resonant(p)) {
    const T e = std::exp(2.0 * a * s);
    return Eigen::Matrix<T, 3, 1>(-e * (0.25 * A * e) / (4.0 * a * a) + s / (4.0 * a * A), T(0.0),
                                  -e / (4.0 * a * a));
  }
  const T pre = -std::exp(2.0 * a * s) / (2.0 * B);
  return Eigen::Matrix<T, 3, 1>(pre * (std::exp(B * s) * A / (B + 2.0 * a) + std::exp(-B * s) / (A * (B - 2.0 * a))),
                                T(0.0), pre / a);
}

template <class T>
Eigen::Matrix<T, 3, 1> profile_curve_derivative_t(const MinimalParams& p, T s) {
  const T pre = -std::exp(2.0 * p.a * s) / (2.0 * p.B);
  return Eigen::Matrix<T, 3, 1>(pre * (p.A * std::exp(p.B * s) - std::exp(-p.B * s) / p.A), T(0.0), 2.0 * pre);
}

template <class T>
Eigen::Matrix<T, 3, 1> frame_normal_t(const MinimalParams& p, T s) {
  const T q = p.A * std::exp(p.B * s);
  const T den = 1.0 + q * q;
  return Eigen::Matrix<T, 3, 1>(2.0 * q / den, T(0.0), (1.0 - q * q) / den);
}

}  // namespace

void validate(const MinimalParams& p) {
  if (!(p.a > 0.0) || !(p.A > 0.0) || !(p.B > 0.0)) {
    throw InvalidArgument("minimal family requires a > 0, A > 0, B > 0");
  }
}

bool is_resonant(const MinimalParams& p) { return std::abs(p.B - 2.0 * p.a) < 1e-9 * std::max(p.B, 2.0 * p.a); }

double rho_minimal(const MinimalParams& p, double u) {
  return (p.A * std::exp((2.0 * p.a + p.B) * u) + std::exp((2.0 * p.a - p.B) * u) / p.A) / (2.0 * p.B);
}

double drho_minimal(const MinimalParams& p, double u) {
  const double kp = 2.0 * p.a + p.B, km = 2.0 * p.a - p.B;
  return (p.A * kp * std::exp(kp * u) + km * std::exp(km * u) / p.A) / (2.0 * p.B);
}

double ddrho_minimal(const MinimalParams& p, double u) {
  const double kp = 2.0 * p.a + p.B, km = 2.0 * p.a - p.B;
  return (p.A * kp * kp * std::exp(kp * u) + km * km * std::exp(km * u) / p.A) / (2.0 * p.B);
}

MetricProfile minimal_profile(const MinimalParams& p, Interval domain) {
  validate(p);
  return MetricProfile([p](double u) { return rho_minimal(p, u); }, [p](double u) { return drho_minimal(p, u); },
                       [p](double u) { return ddrho_minimal(p, u); }, domain);
}

IntrinsicData minimal_intrinsic(const MinimalParams& p, Interval domain) {
  return IntrinsicData{minimal_profile(p, domain), 0.0, p.a, 1.0};
}

MinimalParams recover_AB(double sigma, double dsigma, double u, double a) {
  if (!(sigma > 0.0)) throw InvalidArgument("recover_AB: sigma must be positive");
  const double e4 = std::exp(4.0 * a * u);
  const double slope = dsigma - 2.0 * a * sigma;
  MinimalParams p;
  p.a = a;
  p.B = std::sqrt(e4 + slope * slope) / sigma;
  const double scaled = p.B * std::exp(-2.0 * a * u) * sigma;  // >= 1 by construction
  const double radicand = scaled * scaled - 1.0;
  if (radicand < -1e-12 * scaled * scaled) throw Error("recover_AB: internal radicand became negative");
  // The two roots give the same sigma; the sign of sigma' - 2a sigma picks the one that
  // also reproduces sigma'.
  const double root = std::sqrt(std::max(radicand, 0.0));
  p.A = std::exp(-p.B * u) * (slope >= 0.0 ? scaled + root : 1.0 / (scaled + root));
  return p;
}

MinimalClassification classify_minimal(double a, double b, double sigma, double dsigma, double u) {
  if (b == 0.0) throw PlaneCase();
  const double scale = std::abs(b);
  return {recover_AB(sigma / scale, dsigma / scale, u, a), scale};
}

Vec3 minimal_point(const MinimalParams& p, double u, double v) {
  const double a = p.a, A = p.A, B = p.B;
  if (is_resonant(p)) {
    const double e4 = std::exp(4.0 * a * u);
    return Vec3(a * u / A - 0.25 * A * e4 * std::cos(4.0 * a * v), a * v / A + 0.25 * A * e4 * std::sin(4.0 * a * v),
                -std::exp(2.0 * a * u) * std::cos(2.0 * a * v)) /
           (4.0 * a * a);
  }
  const double pre = std::exp(2.0 * a * u) / (2.0 * B);
  const double em = std::exp(-B * u) / (A * (2.0 * a - B));
  const double ep = A * std::exp(B * u) / (2.0 * a + B);
  return pre * Vec3(em * std::cos((2.0 * a - B) * v) - ep * std::cos((2.0 * a + B) * v),
                    em * std::sin((2.0 * a - B) * v) + ep * std::sin((2.0 * a + B) * v), -std::cos(2.0 * a * v) / a);
}

SurfaceMap minimal_surface(const MinimalParams& p, Interval u_range, Interval v_range) {
  validate(p);
  return SurfaceMap{[p](double u, double v) { return minimal_point(p, u, v); }, u_range, v_range};
}

std::optional<Vec3> period_vector(const MinimalParams& p) {
  if (!is_resonant(p)) return std::nullopt;
  return Vec3(0.0, std::numbers::pi / (4.0 * p.a * p.a * p.A), 0.0);
}

Frame frame_closed_form(const MinimalParams& p, double s) {
  const double q = p.A * std::exp(p.B * s);
  const double den = 1.0 + q * q;
  Frame f;
  f.X = Vec3(1.0 - q * q, 0.0, -2.0 * q) / den;
  f.Y = Vec3::UnitY();
  f.N = Vec3(2.0 * q, 0.0, 1.0 - q * q) / den;
  return f;
}

Vec3 profile_curve(const MinimalParams& p, double s) { return profile_curve_t<double>(p, s); }

Vec3 profile_curve_derivative(const MinimalParams& p, double s) { return profile_curve_derivative_t<double>(p, s); }

cd weierstrass_gauss_map(const MinimalParams& p, cd z) { return std::exp(-p.B * z) / p.A; }

cd weierstrass_height_density(const MinimalParams& p, cd z) { return -std::exp(2.0 * p.a * z) / p.B; }

Eigen::Vector3cd weierstrass_integrand(const MinimalParams& p, cd z) {
  const cd G = weierstrass_gauss_map(p, z);
  const cd dh = weierstrass_height_density(p, z);
  return Vec3c(0.5 * (1.0 / G - G) * dh, 0.5 * kI * (1.0 / G + G) * dh, dh);
}

Vec3 weierstrass_normal(const MinimalParams& p, cd z) {
  const cd G = weierstrass_gauss_map(p, z);
  const double g2 = std::norm(G);
  return Vec3(2.0 * G.real(), 2.0 * G.imag(), g2 - 1.0) / (g2 + 1.0);
}

Vec3 weierstrass_integrate(const MinimalParams& p, cd z0, cd z, int n_steps, int points) {
  validate(p);
  if (n_steps < 1) throw InvalidArgument("weierstrass_integrate: n_steps must be >= 1");
  const GaussLegendre rule(points);
  const Vec3c integral = rule.integrate_segment<Vec3c>([&](cd w) { return weierstrass_integrand(p, w); }, z0, z,
                                                       n_steps, Vec3c::Zero());
  return integral.real();
}

Vec3 bjorling_point(const MinimalParams& p, double u, double v, int n_steps, int points) {
  validate(p);
  if (n_steps < 1) throw InvalidArgument("bjorling_point: n_steps must be >= 1");
  const cd z(u, v);
  const Vec3c core = profile_curve_t<cd>(p, z);
  if (v == 0.0) return core.real();
  const GaussLegendre rule(points);
  // N has poles where A^2 e^{2Bw} = -1; they cancel in N x c', which is entire.
  const Vec3c twist = rule.integrate_segment<Vec3c>(
      [&](cd w) { return cross(frame_normal_t<cd>(p, w), profile_curve_derivative_t<cd>(p, w)); }, cd(u, 0.0), z,
      n_steps, Vec3c::Zero());
  return (core - kI * twist).real();
}

MinimalParams preset(std::string_view name, int n) {
  if (name == "enneper") {
    if (n < 1) throw InvalidArgument("preset enneper: order must be >= 1");
    return {0.5 * (n + 1), 1.0, static_cast<double>(n)};
  }
  if (name == "planar-enneper") {
    if (n < 1) throw InvalidArgument("preset planar-enneper: order must be >= 1");
    return {0.5 * n, 1.0, static_cast<double>(n + 1)};
  }
  if (name == "translation-invariant") return {0.5, 1.0, 1.0};
  throw UnknownPreset(std::string(name));
}

std::vector<PresetInfo> list_presets() {
  return {
      {"enneper", true, "Enneper surface with cyclic symmetry of order n+1: B = n, a = (n+1)/2, A = 1"},
      {"planar-enneper", true, "Enneper-type end plus a planar end: B = n+1, a = n/2, A = 1"},
      {"translation-invariant", false, "singly periodic resonant case B = 2a: B = 1, a = 1/2, A = 1"},
  };
}

}  // namespace isor
