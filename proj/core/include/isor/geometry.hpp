#pragma once

// Finite-difference differential geometry of parametrized surfaces. Every other module
// is checked against these routines, so nothing here knows about the intrinsic data.
//
// Sign convention: N = f_u x f_v / |f_u x f_v| and II_ij = <f_i, N_j> = -<f_ij, N>,
// so the shape operator S = I^{-1} II satisfies dN = df o S.

#include "isor/common.hpp"
#include "isor/surface.hpp"

#include <optional>
#include <span>
#include <vector>

namespace isor {

struct FormPair {
  double E = 1.0, F = 0.0, G = 1.0;  // first fundamental form
  double L = 0.0, M = 0.0, N = 0.0;  // second fundamental form

  Mat2 first() const { return (Mat2() << E, F, F, G).finished(); }
  Mat2 second() const { return (Mat2() << L, M, M, N).finished(); }
};

struct PrincipalData {
  double lambda1 = 0.0;  // lambda1 >= lambda2
  double lambda2 = 0.0;
  // Angle of the lambda1 direction in the orthonormal frame (U, V) obtained by
  // Gram-Schmidt from (f_u, f_v), reduced to [0, pi). Empty at umbilics.
  std::optional<double> theta;

  double mean() const { return lambda1 + lambda2; }  // sum convention
  double gauss() const { return lambda1 * lambda2; }
  bool umbilic() const { return !theta.has_value(); }
};

struct TwistFit {
  double a_est = 0.0;
  double max_dev = 0.0;
  double intercept = 0.0;
};

// 1e-4 times the diameter of the parameter rectangle.
double default_step(const SurfaceMap& map);

// Central differences of order h^2. Requires (u, v) at distance > 2h from the boundary.
FormPair fundamental_forms(const SurfaceMap& map, double u, double v, double h);

// Forms of a structured mesh at interior node (i, j), 1 <= i <= nu-2, 1 <= j <= nv-2,
// from three-point (possibly non-uniform) stencils on the grid itself.
FormPair grid_fundamental_forms(const Mesh& mesh, int i, int j);

// S = I^{-1} II in the coordinate basis. Throws SingularMetric if I is not positive definite.
Mat2 shape_from_forms(const FormPair& fp);

// Default umbilic threshold: 1e-9 * max(|lambda1|, |lambda2|, 1).
double default_gap_tolerance(double lambda1, double lambda2);

// Eigen-decomposition of S in the orthonormal frame. gap_tol < 0 selects the default.
PrincipalData principal_data(const Mat2& S, const FormPair& fp, double gap_tol = -1.0);

// Convenience: forms -> shape operator -> principal data at one point.
PrincipalData principal_at(const SurfaceMap& map, double u, double v, double h);

// Fits alpha(v) = a v + c to the principal angle, alpha = -theta (mod pi), over the
// tensor grid u_samples x v_samples. Each u-row is unwrapped along v and all rows are
// brought onto one branch before a single least-squares line is fitted.
TwistFit fit_twist(const SurfaceMap& map, std::span<const double> u_samples,
                   std::span<const double> v_samples, double h);

// Same fit from precomputed principal angles; rows of theta are indexed by u, columns by v.
TwistFit fit_twist_angles(std::span<const double> v_samples,
                          const std::vector<std::vector<double>>& theta_rows);

// Proper rigid motion x -> R x + t.
struct RigidMotion {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
};

struct RigidFit {
  RigidMotion motion;
  double max_error = 0.0;
  double rms_error = 0.0;
};

// Least-squares proper rigid motion taking `from` onto `to` (Kabsch).
RigidFit fit_rigid_motion(std::span<const Vec3> from, std::span<const Vec3> to);

}  // namespace isor
