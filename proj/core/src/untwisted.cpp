#include "isor/untwisted.hpp"

#include "isor/quadrature.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace isor {

double untwisted_radicand(const MetricProfile& profile, double c, double u) {
  const double rho = profile.rho(u);
  const double drho = profile.drho(u);
  return c * c * rho * rho - drho * drho;
}

namespace {

double checked_root(const MetricProfile& profile, double c, double u) {
  const double R = untwisted_radicand(profile, c, u);
  if (!(R > 0.0)) throw RadicandNonpositive(u, c, R);
  return std::sqrt(R);
}

}  // namespace

UntwistedLambdas untwisted_lambdas(const MetricProfile& profile, double c, double u) {
  const double root = checked_root(profile, c, u);
  const double rho = profile.rho(u);
  const double drho = profile.drho(u);
  const double rho2 = rho * rho;
  return {(rho * profile.ddrho(u) - drho * drho) / (rho2 * root), -root / rho2};
}

double untwisted_dlambda2(const MetricProfile& profile, double c, double u) {
  const double root = checked_root(profile, c, u);
  const double rho = profile.rho(u);
  const double drho = profile.drho(u);
  return drho * (c * c * rho * rho + rho * profile.ddrho(u) - 2.0 * drho * drho) / (rho * rho * rho * root);
}

double untwisted_gauss_residual(const MetricProfile& profile, double c, double u) {
  const auto l = untwisted_lambdas(profile, c, u);
  const double rho = profile.rho(u);
  const double drho = profile.drho(u);
  return l.lambda1 * l.lambda2 - (drho * drho - rho * profile.ddrho(u)) / (rho * rho * rho * rho);
}

double untwisted_codazzi_residual(const MetricProfile& profile, double c, double u) {
  const auto l = untwisted_lambdas(profile, c, u);
  return profile.drho(u) / profile.rho(u) * (l.lambda1 - l.lambda2) - untwisted_dlambda2(profile, c, u);
}

double min_admissible_c(const MetricProfile& profile, Interval u_range, int samples) {
  if (samples < 2) throw InvalidArgument("min_admissible_c: need at least 2 samples");
  auto ratio = [&](double u) { return std::abs(profile.drho(u)) / profile.rho(u); };
  const auto us = linspace(u_range, samples);
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t k = 0; k < us.size(); ++k) {
    const double r = ratio(us[k]);
    if (r > best_val) {
      best_val = r;
      best = k;
    }
  }
  const double lo = us[best == 0 ? 0 : best - 1];
  const double hi = us[std::min(best + 1, us.size() - 1)];
  const auto refined =
      boost::math::tools::brent_find_minima([&](double u) { return -ratio(u); }, lo, hi, 52);
  return std::max(best_val, -refined.second);
}

double RevolveProfile::g(double u) const { return profile_.rho(u) / c_; }

double RevolveProfile::dg(double u) const { return profile_.drho(u) / c_; }

double RevolveProfile::dh(double u) const { return checked_root(profile_, c_, u) / c_; }

double RevolveProfile::h(double u) const {
  const double x = u_range_.clamp(u);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  k = std::min(k, prefix_.size() - 1);
  if (x == breaks_[k]) return prefix_[k];
  return prefix_[k] + rule_->integrate<double>([&](double s) { return dh(s); }, breaks_[k], x, 1, 0.0);
}

RevolveProfile build_revolve(const MetricProfile& profile, double c, Interval u_range, int n_quad, int points) {
  if (!(c > 0.0)) throw InvalidArgument("build_revolve: c must be positive");
  if (n_quad < 1) throw InvalidArgument("build_revolve: n_quad must be >= 1");
  // Report the first inadmissible u in increasing order.
  for (double u : linspace(u_range, std::max(1001, 4 * n_quad + 1))) checked_root(profile, c, u);

  RevolveProfile rp(profile, c, u_range);
  rp.panels_ = n_quad;
  rp.rule_ = std::make_shared<const GaussLegendre>(points);
  rp.breaks_ = linspace(u_range, n_quad + 1);
  rp.prefix_.assign(rp.breaks_.size(), 0.0);
  const GaussLegendre& rule = *rp.rule_;
  auto integrand = [&](double s) { return rp.dh(s); };
  for (std::size_t k = 1; k < rp.breaks_.size(); ++k) {
    rp.prefix_[k] = rp.prefix_[k - 1] + rule.integrate<double>(integrand, rp.breaks_[k - 1], rp.breaks_[k], 1, 0.0);
  }
  const double fine = rule.integrate<double>(integrand, u_range.lo, u_range.hi, 2 * n_quad, 0.0);
  rp.quad_error_ = std::abs(fine - rp.prefix_.back());
  return rp;
}

Vec3 revolve_point(const RevolveProfile& rp, double u, double v) {
  const double g = rp.g(u);
  return Vec3(g * std::cos(rp.c() * v), g * std::sin(rp.c() * v), rp.h(u));
}

SurfaceMap revolve_surface(const RevolveProfile& rp, Interval v_range) {
  return SurfaceMap{[rp](double u, double v) { return revolve_point(rp, u, v); }, rp.u_range(), v_range};
}

}  // namespace isor
