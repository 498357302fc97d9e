#pragma once

#include "isor/common.hpp"

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace isor {

// The conformal factor rho(u) > 0 of I = rho(u)^2 (du^2 + dv^2), together with its first
// and second derivatives. Derivatives are evaluated by the backend, never by differencing.
class MetricProfile {
 public:
  enum class Backend { closed_form, quintic_hermite };
  using Fn = std::function<double(double)>;

  MetricProfile(Fn rho, Fn drho, Fn ddrho, Interval domain, Backend backend = Backend::closed_form);

  double rho(double u) const { return rho_(u); }
  double drho(double u) const { return drho_(u); }
  double ddrho(double u) const { return ddrho_(u); }

  const Interval& domain() const { return domain_; }
  Backend backend() const { return backend_; }
  bool closed_form() const { return backend_ == Backend::closed_form; }

  // c * rho, with derivatives scaled alike.
  MetricProfile scaled(double factor) const;
  MetricProfile restricted(Interval sub) const;

 private:
  Fn rho_, drho_, ddrho_;
  Interval domain_;
  Backend backend_;
};

// Piecewise quintic Hermite interpolant through (u_k, rho_k, rho'_k, rho''_k): C^2, exact
// at the nodes, fifth-order polynomial on each cell. Nodes must be strictly increasing.
class QuinticHermite {
 public:
  QuinticHermite(std::vector<double> nodes, std::vector<double> values, std::vector<double> d1,
                 std::vector<double> d2);

  // Returns {p(u), p'(u), p''(u)}.
  std::array<double, 3> evaluate(double u) const;

  const std::vector<double>& nodes() const { return nodes_; }
  Interval domain() const { return {nodes_.front(), nodes_.back()}; }

  MetricProfile as_profile() const;

 private:
  std::vector<double> nodes_;
  // Six monomial coefficients per cell in the local variable t = (u - u_k) / h_k.
  std::vector<std::array<double, 6>> coeffs_;
};

// rho(u) = exp(k u) on `domain`.
MetricProfile exponential_profile(double k, Interval domain);
// rho(u) = value on `domain`.
MetricProfile constant_profile(double value, Interval domain);

}  // namespace isor
