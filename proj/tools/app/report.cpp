#include "report.hpp"

#include "isor/geometry.hpp"
#include "isor/intrinsic.hpp"
#include "isor/parallel.hpp"
#include "isor/untwisted.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace isor::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Claimed principal curvatures (descending), mean curvature and residuals at (u, v).
struct Expected {
  double l1, l2, gauss, codazzi, master;
};

Expected expected_at(const Claim& c, double u, double v) {
  if (c.untwisted) {
    const UntwistedLambdas l = untwisted_lambdas(c.profile, c.c, u);
    return {std::max(l.lambda1, l.lambda2), std::min(l.lambda1, l.lambda2),
            std::abs(untwisted_gauss_residual(c.profile, c.c, u)),
            std::abs(untwisted_codazzi_residual(c.profile, c.c, u)), kNaN};
  }
  const IntrinsicData d{c.profile, c.H, c.a, c.b};
  const LambdaPair l = lambda_pair(d, u);
  const CodazziResiduals r = codazzi_residuals(d, u, v);
  return {std::max(l.lambda1, l.lambda2), std::min(l.lambda1, l.lambda2), std::abs(gauss_residual(d, u)),
          std::max(std::abs(r.r1), std::abs(r.r2)), std::abs(master_ode_relative_residual(d, u))};
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CurvatureReport verify(const SurfaceJob& job, const Claim& claim, const Tolerances& tol, double fd_step) {
  const Mesh& m = job.mesh;
  const int ni = m.nu - 2, nj = m.nv - 2;
  CurvatureReport rep;
  rep.tolerances = tol;
  rep.rows.resize(static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj));

  parallel_for(ni, [&](int ii) {
    const int i = ii + 1;
    const double u = m.u_samples[i];
    for (int j = 1; j <= nj; ++j) {
      const double v = m.v_samples[j];
      const FormPair fp = job.map ? fundamental_forms(*job.map, u, v, fd_step) : grid_fundamental_forms(m, i, j);
      const PrincipalData pd = principal_data(shape_from_forms(fp), fp);
      const Expected ex = expected_at(claim, u, v);
      const double r2 = claim.profile.rho(u) * claim.profile.rho(u);
      // Curvature errors relative to the curvature scale, floored at 1.
      const double kscale = std::max({1.0, std::abs(ex.l1), std::abs(ex.l2)});
      ReportRow& row = rep.rows[static_cast<std::size_t>(ii) * nj + (j - 1)];
      row = {u,
             v,
             fp.E,
             fp.F,
             fp.G,
             pd.lambda1,
             pd.lambda2,
             pd.mean(),
             pd.gauss(),
             pd.theta.value_or(kNaN),
             std::max({std::abs(fp.E - r2), std::abs(fp.G - r2), std::abs(fp.F)}) / r2,
             std::max(std::abs(pd.lambda1 - ex.l1), std::abs(pd.lambda2 - ex.l2)) / kscale,
             std::abs(pd.mean() - (ex.l1 + ex.l2)) / kscale,
             ex.gauss,
             ex.codazzi,
             ex.master};
    }
  });

  ReportSummary& s = rep.summary;
  s.samples = rep.rows.size();
  double sum_h = 0.0;
  for (const ReportRow& r : rep.rows) {
    s.max_metric_err = std::max(s.max_metric_err, r.metric_err);
    s.max_lambda_err = std::max(s.max_lambda_err, r.lambda_err);
    s.max_mean_err = std::max(s.max_mean_err, r.mean_err);
    s.max_gauss = std::max(s.max_gauss, r.gauss);
    s.max_codazzi = std::max(s.max_codazzi, r.codazzi);
    if (!std::isnan(r.master)) s.max_master = std::max(s.max_master, r.master);
    s.max_abs_mean_curvature = std::max(s.max_abs_mean_curvature, std::abs(r.H));
    sum_h += r.H;
    if (std::isnan(r.theta)) ++s.umbilics;
  }
  s.mean_curvature_avg = s.samples ? sum_h / static_cast<double>(s.samples) : kNaN;
  if (claim.untwisted) s.max_master = kNaN;

  // Twist: rows of principal angles without umbilics.
  std::vector<double> vs(m.v_samples.begin() + 1, m.v_samples.end() - 1);
  std::vector<std::vector<double>> theta_rows;
  for (int ii = 0; ii < ni; ++ii) {
    std::vector<double> row(static_cast<std::size_t>(nj));
    bool ok = true;
    for (int j = 0; j < nj; ++j) {
      row[j] = rep.rows[static_cast<std::size_t>(ii) * nj + j].theta;
      ok = ok && !std::isnan(row[j]);
    }
    if (ok) theta_rows.push_back(std::move(row));
  }
  s.a_claim = claim.untwisted ? 0.0 : claim.a;
  if (!theta_rows.empty()) {
    const TwistFit fit = fit_twist_angles(vs, theta_rows);
    s.twist_checked = true;
    s.a_est = fit.a_est;
    s.twist_max_dev = fit.max_dev;
    s.twist_err = std::abs(fit.a_est - s.a_claim);
  } else {
    s.a_est = kNaN;
    s.twist_err = kNaN;
  }

  s.metric_ok = s.max_metric_err <= tol.metric;
  s.curvature_ok = s.max_lambda_err <= tol.curvature && s.max_mean_err <= tol.curvature;
  s.residual_ok = s.max_gauss <= tol.residual && s.max_codazzi <= tol.residual &&
                  (claim.untwisted || s.max_master <= tol.residual);
  s.twist_ok = !s.twist_checked || s.twist_err <= tol.twist;
  return rep;
}

void write_report_csv(const CurvatureReport& rep, std::ostream& os) {
  os << "u,v,E,F,G,lambda1,lambda2,H,K,theta,metric_err,lambda_err,mean_err,gauss,codazzi,master\n";
  for (const ReportRow& r : rep.rows) {
    const double cols[] = {r.u,       r.v,       r.E,       r.F,          r.G,          r.lambda1,
                           r.lambda2, r.H,       r.K,       r.theta,      r.metric_err, r.lambda_err,
                           r.mean_err, r.gauss, r.codazzi, r.master};
    bool first = true;
    for (double x : cols) {
      if (!first) os << ',';
      os << num(x);
      first = false;
    }
    os << '\n';
  }
}

nlohmann::json summary_json(const CurvatureReport& rep, const SurfaceJob& job, const JobConfig& cfg) {
  const ReportSummary& s = rep.summary;
  auto opt = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  nlohmann::json j;
  j["samples"] = s.samples;
  j["umbilics"] = s.umbilics;
  j["max_metric_err"] = s.max_metric_err;
  j["max_lambda_err"] = s.max_lambda_err;
  j["max_mean_err"] = s.max_mean_err;
  j["max_gauss_residual"] = s.max_gauss;
  j["max_codazzi_residual"] = s.max_codazzi;
  j["max_master_residual"] = opt(s.max_master);
  j["max_abs_mean_curvature"] = s.max_abs_mean_curvature;
  j["mean_curvature_avg"] = opt(s.mean_curvature_avg);
  j["a_claim"] = s.a_claim;
  j["a_est"] = opt(s.a_est);
  j["twist_err"] = opt(s.twist_err);
  j["twist_max_dev"] = opt(s.twist_max_dev);
  if (job.period)
    j["period_vector"] = {(*job.period)(0), (*job.period)(1), (*job.period)(2)};
  else
    j["period_vector"] = nullptr;
  j["checks"] = {{"metric", s.metric_ok},
                 {"curvature", s.curvature_ok},
                 {"residual", s.residual_ok},
                 {"twist", s.twist_ok}};
  j["pass"] = s.pass();
  j["tolerances"] = {{"residual", rep.tolerances.residual},
                     {"metric", rep.tolerances.metric},
                     {"curvature", rep.tolerances.curvature},
                     {"twist", rep.tolerances.twist}};
  j["notes"] = job.notes;
  j["config"] = to_json(cfg);
  return j;
}

}  // namespace isor::app
