#include "isor/profile.hpp"

#include <algorithm>
#include <cmath>

namespace isor {

MetricProfile::MetricProfile(Fn rho, Fn drho, Fn ddrho, Interval domain, Backend backend)
    : rho_(std::move(rho)), drho_(std::move(drho)), ddrho_(std::move(ddrho)), domain_(domain), backend_(backend) {
  if (!rho_ || !drho_ || !ddrho_) throw InvalidArgument("MetricProfile: all three evaluators are required");
  if (!(domain_.hi > domain_.lo)) throw InvalidArgument("MetricProfile: empty domain");
}

MetricProfile MetricProfile::scaled(double factor) const {
  auto r = rho_;
  auto d = drho_;
  auto dd = ddrho_;
  return MetricProfile([r, factor](double u) { return factor * r(u); },
                       [d, factor](double u) { return factor * d(u); },
                       [dd, factor](double u) { return factor * dd(u); }, domain_, backend_);
}

MetricProfile MetricProfile::restricted(Interval sub) const {
  if (!domain_.contains(sub)) throw InvalidArgument("MetricProfile::restricted: sub-interval outside the domain");
  MetricProfile out = *this;
  out.domain_ = sub;
  return out;
}

QuinticHermite::QuinticHermite(std::vector<double> nodes, std::vector<double> values, std::vector<double> d1,
                               std::vector<double> d2)
    : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  if (n < 2 || values.size() != n || d1.size() != n || d2.size() != n) {
    throw InvalidArgument("QuinticHermite: need >= 2 nodes with matching value/derivative arrays");
  }
  coeffs_.resize(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h = nodes_[k + 1] - nodes_[k];
    if (!(h > 0.0)) throw InvalidArgument("QuinticHermite: nodes must be strictly increasing");
    auto& c = coeffs_[k];
    c[0] = values[k];
    c[1] = h * d1[k];
    c[2] = 0.5 * h * h * d2[k];
    const double P = values[k + 1] - (c[0] + c[1] + c[2]);
    const double D = h * d1[k + 1] - (c[1] + 2.0 * c[2]);
    const double S = h * h * d2[k + 1] - 2.0 * c[2];
    c[3] = 10.0 * P - 4.0 * D + 0.5 * S;
    c[4] = -15.0 * P + 7.0 * D - S;
    c[5] = 6.0 * P - 3.0 * D + 0.5 * S;
  }
}

std::array<double, 3> QuinticHermite::evaluate(double u) const {
  // Cell k with nodes_[k] <= u < nodes_[k+1]; points outside extend the end cells.
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t k = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  k = std::min(k, coeffs_.size() - 1);
  const double h = nodes_[k + 1] - nodes_[k];
  const double t = (u - nodes_[k]) / h;
  const auto& c = coeffs_[k];
  const double p = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  const double dp = c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
  const double ddp = 2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
  return {p, dp / h, ddp / (h * h)};
}

MetricProfile QuinticHermite::as_profile() const {
  auto self = std::make_shared<const QuinticHermite>(*this);
  return MetricProfile([self](double u) { return self->evaluate(u)[0]; },
                       [self](double u) { return self->evaluate(u)[1]; },
                       [self](double u) { return self->evaluate(u)[2]; }, domain(),
                       MetricProfile::Backend::quintic_hermite);
}

MetricProfile exponential_profile(double k, Interval domain) {
  return MetricProfile([k](double u) { return std::exp(k * u); }, [k](double u) { return k * std::exp(k * u); },
                       [k](double u) { return k * k * std::exp(k * u); }, domain);
}

MetricProfile constant_profile(double value, Interval domain) {
  if (!(value > 0.0)) throw InvalidArgument("constant_profile: value must be positive");
  return MetricProfile([value](double) { return value; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                       domain);
}

}  // namespace isor
