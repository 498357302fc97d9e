#include "isor/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isor {

namespace {

constexpr double kPi = std::numbers::pi;

FormPair assemble(const Vec3& fu, const Vec3& fv, const Vec3& fuu, const Vec3& fuv, const Vec3& fvv,
                  double u, double v) {
  const Vec3 cross = fu.cross(fv);
  const double len = cross.norm();
  if (!(len >= 1e-12)) throw DegenerateImmersion(u, v);
  const Vec3 n = cross / len;
  FormPair fp;
  fp.E = fu.dot(fu);
  fp.F = fu.dot(fv);
  fp.G = fv.dot(fv);
  fp.L = -fuu.dot(n);
  fp.M = -fuv.dot(n);
  fp.N = -fvv.dot(n);
  return fp;
}

// Three-point weights for first and second derivative at x0 given spacings
// hm = x0 - x_{-1} and hp = x_{+1} - x0.
struct Stencil {
  double d1[3];
  double d2[3];
};

Stencil three_point(double hm, double hp) {
  Stencil s;
  const double sum = hm + hp;
  s.d1[0] = -hp / (hm * sum);
  s.d1[1] = (hp - hm) / (hm * hp);
  s.d1[2] = hm / (hp * sum);
  s.d2[0] = 2.0 / (hm * sum);
  s.d2[1] = -2.0 / (hm * hp);
  s.d2[2] = 2.0 / (hp * sum);
  return s;
}

double reduce_mod_pi(double angle) {
  double r = std::fmod(angle, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

}  // namespace

double default_step(const SurfaceMap& map) { return 1e-4 * map.diameter(); }

FormPair fundamental_forms(const SurfaceMap& map, double u, double v, double h) {
  if (!(h > 0.0)) throw InvalidArgument("fundamental_forms: step must be positive");
  if (u - 2.0 * h < map.u_range.lo || u + 2.0 * h > map.u_range.hi || v - 2.0 * h < map.v_range.lo ||
      v + 2.0 * h > map.v_range.hi) {
    throw InvalidArgument("fundamental_forms: probe point closer than 2h to the domain boundary");
  }
  const Vec3 f00 = map(u, v);
  const Vec3 fp0 = map(u + h, v), fm0 = map(u - h, v);
  const Vec3 f0p = map(u, v + h), f0m = map(u, v - h);
  const Vec3 fpp = map(u + h, v + h), fpm = map(u + h, v - h);
  const Vec3 fmp = map(u - h, v + h), fmm = map(u - h, v - h);

  const Vec3 fu = (fp0 - fm0) / (2.0 * h);
  const Vec3 fv = (f0p - f0m) / (2.0 * h);
  const Vec3 fuu = ((fp0 - f00) + (fm0 - f00)) / (h * h);
  const Vec3 fvv = ((f0p - f00) + (f0m - f00)) / (h * h);
  const Vec3 fuv = ((fpp - fpm) - (fmp - fmm)) / (4.0 * h * h);
  return assemble(fu, fv, fuu, fuv, fvv, u, v);
}

FormPair grid_fundamental_forms(const Mesh& mesh, int i, int j) {
  if (i < 1 || i > mesh.nu - 2 || j < 1 || j > mesh.nv - 2) {
    throw InvalidArgument("grid_fundamental_forms: node must be interior");
  }
  const auto& us = mesh.u_samples;
  const auto& vs = mesh.v_samples;
  const auto iu = static_cast<std::size_t>(i);
  const auto jv = static_cast<std::size_t>(j);
  const Stencil su = three_point(us[iu] - us[iu - 1], us[iu + 1] - us[iu]);
  const Stencil sv = three_point(vs[jv] - vs[jv - 1], vs[jv + 1] - vs[jv]);

  Vec3 fu = Vec3::Zero(), fv = Vec3::Zero(), fuu = Vec3::Zero(), fvv = Vec3::Zero(), fuv = Vec3::Zero();
  const Vec3& center = mesh.vertex(i, j);
  for (int k = 0; k < 3; ++k) {
    // Differences against the centre vertex keep the stencils free of large offsets.
    const Vec3 du = mesh.vertex(i + k - 1, j) - center;
    const Vec3 dv = mesh.vertex(i, j + k - 1) - center;
    fu += su.d1[k] * du;
    fuu += su.d2[k] * du;
    fv += sv.d1[k] * dv;
    fvv += sv.d2[k] * dv;
    for (int l = 0; l < 3; ++l) {
      fuv += su.d1[k] * sv.d1[l] * (mesh.vertex(i + k - 1, j + l - 1) - center);
    }
  }
  return assemble(fu, fv, fuu, fuv, fvv, us[iu], vs[jv]);
}

Mat2 shape_from_forms(const FormPair& fp) {
  const double det = fp.E * fp.G - fp.F * fp.F;
  if (!(fp.E > 0.0) || !(det > 0.0)) throw SingularMetric();
  const Mat2 inv_first = (Mat2() << fp.G, -fp.F, -fp.F, fp.E).finished() / det;
  return inv_first * fp.second();
}

double default_gap_tolerance(double lambda1, double lambda2) {
  return 1e-9 * std::max({std::abs(lambda1), std::abs(lambda2), 1.0});
}

PrincipalData principal_data(const Mat2& S, const FormPair& fp, double gap_tol) {
  const double det = fp.E * fp.G - fp.F * fp.F;
  if (!(fp.E > 0.0) || !(det > 0.0)) throw SingularMetric();
  // Columns of P are the coordinates of U = f_u/|f_u| and the Gram-Schmidt V.
  const double sqrt_e = std::sqrt(fp.E);
  const double sqrt_d = std::sqrt(det / fp.E);
  Mat2 P;
  P << 1.0 / sqrt_e, -fp.F / (fp.E * sqrt_d), 0.0, 1.0 / sqrt_d;
  Mat2 S_on = P.inverse() * S * P;
  S_on = 0.5 * (S_on + S_on.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Mat2> eig(S_on);
  PrincipalData out;
  out.lambda1 = eig.eigenvalues()(1);
  out.lambda2 = eig.eigenvalues()(0);
  const double tol = gap_tol < 0.0 ? default_gap_tolerance(out.lambda1, out.lambda2) : gap_tol;
  if (out.lambda1 - out.lambda2 >= tol) {
    const Vec2 dir = eig.eigenvectors().col(1);
    out.theta = reduce_mod_pi(std::atan2(dir.y(), dir.x()));
  }
  return out;
}

PrincipalData principal_at(const SurfaceMap& map, double u, double v, double h) {
  const FormPair fp = fundamental_forms(map, u, v, h);
  return principal_data(shape_from_forms(fp), fp);
}

TwistFit fit_twist_angles(std::span<const double> v_samples, const std::vector<std::vector<double>>& theta_rows) {
  const std::size_t nv = v_samples.size();
  if (nv < 2 || theta_rows.empty()) throw InvalidArgument("fit_twist: need at least two v-samples and one u-row");

  std::vector<std::vector<double>> unwrapped;
  unwrapped.reserve(theta_rows.size());
  for (const auto& row : theta_rows) {
    if (row.size() != nv) throw InvalidArgument("fit_twist: angle row length differs from v-sample count");
    std::vector<double> w(nv);
    w[0] = row[0];
    for (std::size_t j = 1; j < nv; ++j) {
      double d = row[j] - row[j - 1];
      d -= kPi * std::round(d / kPi);
      if (std::abs(d) > 0.4 * kPi) {
        throw UnwrapAmbiguity("fit_twist: principal angle jumps by " + std::to_string(d) +
                              " between consecutive v-samples; sample v more densely");
      }
      w[j] = w[j - 1] + d;
    }
    if (!unwrapped.empty()) {
      const double shift = kPi * std::round((w[0] - unwrapped.front()[0]) / kPi);
      for (double& x : w) x -= shift;
    }
    unwrapped.push_back(std::move(w));
  }

  // alpha = -theta
  double sv = 0.0, sa = 0.0, svv = 0.0, sva = 0.0;
  double count = 0.0;
  for (const auto& w : unwrapped) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double alpha = -w[j];
      sv += v_samples[j];
      sa += alpha;
      svv += v_samples[j] * v_samples[j];
      sva += v_samples[j] * alpha;
      count += 1.0;
    }
  }
  const double denom = count * svv - sv * sv;
  if (!(std::abs(denom) > 0.0)) throw InvalidArgument("fit_twist: v-samples must not all coincide");
  TwistFit fit;
  fit.a_est = (count * sva - sv * sa) / denom;
  fit.intercept = (sa - fit.a_est * sv) / count;
  for (const auto& w : unwrapped) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double dev = std::abs(-w[j] - (fit.a_est * v_samples[j] + fit.intercept));
      fit.max_dev = std::max(fit.max_dev, dev);
    }
  }
  return fit;
}

TwistFit fit_twist(const SurfaceMap& map, std::span<const double> u_samples, std::span<const double> v_samples,
                   double h) {
  std::vector<std::vector<double>> rows;
  rows.reserve(u_samples.size());
  for (double u : u_samples) {
    std::vector<double> row;
    row.reserve(v_samples.size());
    for (double v : v_samples) {
      const PrincipalData pd = principal_at(map, u, v, h);
      if (pd.umbilic()) throw UmbilicSample(u, v);
      row.push_back(*pd.theta);
    }
    rows.push_back(std::move(row));
  }
  return fit_twist_angles(v_samples, rows);
}

RigidFit fit_rigid_motion(std::span<const Vec3> from, std::span<const Vec3> to) {
  if (from.size() != to.size() || from.size() < 3) {
    throw InvalidArgument("fit_rigid_motion: need matching point sets of size >= 3");
  }
  Vec3 cf = Vec3::Zero(), ct = Vec3::Zero();
  for (std::size_t k = 0; k < from.size(); ++k) {
    cf += from[k];
    ct += to[k];
  }
  cf /= static_cast<double>(from.size());
  ct /= static_cast<double>(to.size());
  Mat3 cov = Mat3::Zero();
  for (std::size_t k = 0; k < from.size(); ++k) cov += (from[k] - cf) * (to[k] - ct).transpose();

  Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 D = Mat3::Identity();
  D(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0 ? -1.0 : 1.0;

  RigidFit fit;
  fit.motion.rotation = svd.matrixV() * D * svd.matrixU().transpose();
  fit.motion.translation = ct - fit.motion.rotation * cf;
  double sq = 0.0;
  for (std::size_t k = 0; k < from.size(); ++k) {
    const double e = (fit.motion.apply(from[k]) - to[k]).norm();
    fit.max_error = std::max(fit.max_error, e);
    sq += e * e;
  }
  fit.rms_error = std::sqrt(sq / static_cast<double>(from.size()));
  return fit;
}

}  // namespace isor
