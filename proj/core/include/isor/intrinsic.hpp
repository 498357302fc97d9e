#pragma once

// Intrinsic data of a surface with I = rho(u)^2 (du^2 + dv^2), twist alpha(v) = a v and
// constant mean curvature H = lambda1 + lambda2, plus the integrability residuals.

#include "isor/common.hpp"
#include "isor/profile.hpp"

namespace isor {

struct IntrinsicData {
  MetricProfile profile;
  double H = 0.0;  // sum of principal curvatures
  double a = 0.0;  // twist rate
  double b = 0.0;  // Codazzi integration constant
};

struct LambdaPair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct CodazziResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
};

// lambda_{1,2}(u) = H/2 +- b e^{2au} / rho(u)^2.
LambdaPair lambda_pair(const IntrinsicData& d, double u);

// u-derivatives of lambda_pair, from the closed form and rho'.
LambdaPair lambda_pair_derivative(const IntrinsicData& d, double u);

// lambda1 lambda2 - (rho'^2 - rho rho'') / rho^4.
double gauss_residual(const IntrinsicData& d, double u);

// r1 = (lambda1' + lambda2') sin(av) cos(av)
// r2 = (lambda1 - lambda2)(rho' - rho a) / rho - (-lambda1' sin^2(av) + lambda2' cos^2(av))
CodazziResiduals codazzi_residuals(const IntrinsicData& d, double u, double v);

// rho'^2 - rho rho'' - (H^2 rho^4 / 4 - b^2 e^{4au}).
double master_ode_residual(const IntrinsicData& d, double u);

// master_ode_residual / max(1, rho'^2 + |rho rho''|): the residual relative to the size
// of the terms that cancel in it.
double master_ode_relative_residual(const IntrinsicData& d, double u);

// Shape operator R^{-alpha} diag(lambda1, lambda2) R^{alpha} in the orthonormal frame
// (U, V) = (d/du, d/dv) / rho.
Mat2 twisted_shape_operator(double lambda1, double lambda2, double alpha);

}  // namespace isor
