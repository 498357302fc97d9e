#pragma once

// Untwisted (alpha = 0) intrinsic surfaces of revolution realized as honest surfaces of
// revolution f(u, v) = (g(u) cos(cv), g(u) sin(cv), h(u)) with g = rho / c.

#include "isor/common.hpp"
#include "isor/profile.hpp"
#include "isor/surface.hpp"

#include <memory>
#include <vector>

namespace isor {

class GaussLegendre;

struct UntwistedLambdas {
  double lambda1 = 0.0;  // along the meridian
  double lambda2 = 0.0;  // along the parallel
};

// c^2 rho^2 - rho'^2.
double untwisted_radicand(const MetricProfile& profile, double c, double u);

// lambda1 = (rho rho'' - rho'^2) / (rho^2 sqrt(R)), lambda2 = -sqrt(R) / rho^2, with R the
// radicand. Throws RadicandNonpositive when R <= 0.
UntwistedLambdas untwisted_lambdas(const MetricProfile& profile, double c, double u);

// d lambda2 / du, in closed form.
double untwisted_dlambda2(const MetricProfile& profile, double c, double u);

// lambda1 lambda2 - (rho'^2 - rho rho'') / rho^4.
double untwisted_gauss_residual(const MetricProfile& profile, double c, double u);
// (rho'/rho)(lambda1 - lambda2) - lambda2'.
double untwisted_codazzi_residual(const MetricProfile& profile, double c, double u);

// sup |rho'| / rho over u_range: dense sampling refined by Brent's method. Every c above
// the returned value is admissible on the whole range.
double min_admissible_c(const MetricProfile& profile, Interval u_range, int samples = 2001);

class RevolveProfile {
 public:
  double c() const { return c_; }
  const Interval& u_range() const { return u_range_; }
  const MetricProfile& profile() const { return profile_; }
  int panels() const { return panels_; }

  double g(double u) const;
  double dg(double u) const;
  double h(double u) const;   // h(u_range.lo) = 0
  double dh(double u) const;  // sqrt(c^2 rho^2 - rho'^2) / c
  // |h(u2) computed with `panels` - h(u2) computed with 2 * `panels`|.
  double quadrature_error() const { return quad_error_; }

 private:
  friend RevolveProfile build_revolve(const MetricProfile&, double, Interval, int, int);
  RevolveProfile(MetricProfile profile, double c, Interval u_range)
      : profile_(std::move(profile)), c_(c), u_range_(u_range) {}

  MetricProfile profile_;
  double c_;
  Interval u_range_;
  int panels_ = 0;
  std::shared_ptr<const GaussLegendre> rule_;
  std::vector<double> breaks_;  // panel boundaries
  std::vector<double> prefix_;  // h at the panel boundaries
  double quad_error_ = 0.0;
};

// g = rho / c and h by composite Gauss-Legendre quadrature of h' (n_quad panels of
// `points` nodes). Throws RadicandNonpositive at the first u where c is inadmissible.
RevolveProfile build_revolve(const MetricProfile& profile, double c, Interval u_range, int n_quad = 256,
                             int points = 8);

Vec3 revolve_point(const RevolveProfile& rp, double u, double v);
SurfaceMap revolve_surface(const RevolveProfile& rp, Interval v_range);

}  // namespace isor
