#include "isor/intrinsic.hpp"

#include <algorithm>
#include <cmath>

namespace isor {

LambdaPair lambda_pair(const IntrinsicData& d, double u) {
  const double rho = d.profile.rho(u);
  const double mu = d.b * std::exp(2.0 * d.a * u) / (rho * rho);
  return {0.5 * d.H + mu, 0.5 * d.H - mu};
}

LambdaPair lambda_pair_derivative(const IntrinsicData& d, double u) {
  const double rho = d.profile.rho(u);
  const double drho = d.profile.drho(u);
  // d/du [b e^{2au} rho^{-2}] = b e^{2au} (2a rho - 2 rho') / rho^3
  const double dmu = d.b * std::exp(2.0 * d.a * u) * (2.0 * d.a * rho - 2.0 * drho) / (rho * rho * rho);
  return {dmu, -dmu};
}

double gauss_residual(const IntrinsicData& d, double u) {
  const double rho = d.profile.rho(u);
  const double drho = d.profile.drho(u);
  const double ddrho = d.profile.ddrho(u);
  const LambdaPair l = lambda_pair(d, u);
  const double rho2 = rho * rho;
  return l.lambda1 * l.lambda2 - (drho * drho - rho * ddrho) / (rho2 * rho2);
}

CodazziResiduals codazzi_residuals(const IntrinsicData& d, double u, double v) {
  const double rho = d.profile.rho(u);
  const double drho = d.profile.drho(u);
  const LambdaPair l = lambda_pair(d, u);
  const LambdaPair dl = lambda_pair_derivative(d, u);
  const double s = std::sin(d.a * v);
  const double c = std::cos(d.a * v);
  CodazziResiduals r;
  r.r1 = (dl.lambda1 + dl.lambda2) * s * c;
  r.r2 = (l.lambda1 - l.lambda2) * (drho - rho * d.a) / rho - (-dl.lambda1 * s * s + dl.lambda2 * c * c);
  return r;
}

double master_ode_residual(const IntrinsicData& d, double u) {
  const double rho = d.profile.rho(u);
  const double drho = d.profile.drho(u);
  const double ddrho = d.profile.ddrho(u);
  const double rho2 = rho * rho;
  const double lhs = drho * drho - rho * ddrho;
  const double rhs = 0.25 * d.H * d.H * rho2 * rho2 - d.b * d.b * std::exp(4.0 * d.a * u);
  return lhs - rhs;
}

double master_ode_relative_residual(const IntrinsicData& d, double u) {
  const double rho = d.profile.rho(u);
  const double drho = d.profile.drho(u);
  const double scale = std::max(1.0, drho * drho + std::abs(rho * d.profile.ddrho(u)));
  return master_ode_residual(d, u) / scale;
}

Mat2 twisted_shape_operator(double lambda1, double lambda2, double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  Mat2 S;
  S(0, 0) = lambda1 * c * c + lambda2 * s * s;
  S(1, 1) = lambda1 * s * s + lambda2 * c * c;
  S(0, 1) = S(1, 0) = (lambda2 - lambda1) * s * c;
  return S;
}

}  // namespace isor
