#pragma once

#include "config.hpp"
#include "job.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace isor::app {

struct ReportRow {
  double u, v;
  double E, F, G;
  double lambda1, lambda2, H, K, theta;  // theta is nan at umbilics
  double metric_err, lambda_err, mean_err;
  double gauss, codazzi, master;  // master is nan for untwisted claims
};

struct ReportSummary {
  std::size_t samples = 0;
  std::size_t umbilics = 0;
  double max_metric_err = 0, max_lambda_err = 0, max_mean_err = 0;
  double max_gauss = 0, max_codazzi = 0, max_master = 0;
  double max_abs_mean_curvature = 0;  // max |lambda1 + lambda2| on the mesh
  double mean_curvature_avg = 0;
  double a_claim = 0, a_est = 0, twist_err = 0, twist_max_dev = 0;
  bool twist_checked = false;

  bool metric_ok = false, curvature_ok = false, residual_ok = false, twist_ok = false;
  bool pass() const { return metric_ok && curvature_ok && residual_ok && twist_ok; }
};

struct CurvatureReport {
  std::vector<ReportRow> rows;
  ReportSummary summary;
  Tolerances tolerances;
};

// Measures the mesh (or the analytic map, when present) at interior nodes and compares
// it with the claimed intrinsic data.
CurvatureReport verify(const SurfaceJob& job, const Claim& claim, const Tolerances& tol, double fd_step);

void write_report_csv(const CurvatureReport& rep, std::ostream& os);
nlohmann::json summary_json(const CurvatureReport& rep, const SurfaceJob& job, const JobConfig& cfg);

}  // namespace isor::app
