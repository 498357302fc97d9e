#pragma once

#include "isor/common.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace isor::app {

// Invalid or incomplete job description; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double residual = 1e-8;   // gauss, codazzi, master-ODE (relative)
  double metric = 1e-6;     // max(|E - rho^2|, |G - rho^2|, |F|) / rho^2
  double curvature = 1e-5;  // principal curvatures and H, relative to max(1, |lambda|)
  double twist = 1e-4;      // |a_est - a|
};

struct JobConfig {
  std::string mode = "minimal";  // minimal | cmc | untwisted

  // minimal
  std::string preset;  // empty: use a, A, B
  int order = 1;
  double a = 1.0;
  double A = 1.0;
  double B = 1.0;

  // cmc (a shared with minimal)
  double H = 0.5;
  double b = 1.0;
  double rho0 = 1.0;
  double drho0 = 0.0;
  bool cylinder = false;

  // untwisted
  std::string source = "enneper";  // enneper | enneper-half | minimal | exponential
  double k = 1.0;                  // exponential source rate
  double c = 3.0;
  int n_quad = 256;

  // sampling
  std::optional<Interval> u_range;
  std::optional<Interval> v_range;
  // Unset: 80 x 240, or 321 x 481 for a numerically integrated cmc mesh, which is
  // differentiated on its own grid.
  std::optional<int> nu;
  std::optional<int> nv;

  double tol = 1e-10;     // ODE tolerance
  double fd_step = 1e-4;  // finite-difference step for analytic maps

  std::optional<double> residual_tol, metric_tol, curvature_tol, twist_tol;

  // Claimed intrinsic data for verification; unset means "the data used to build it".
  std::optional<double> claim_H, claim_b;
  double claim_rho_scale = 1.0;

  std::string mesh_path = "isor_mesh.obj";
  std::string report_path = "isor_report.csv";  // summary goes to <report>.json

  Interval resolved_u_range() const;
  Interval resolved_v_range() const;
  int resolved_nu() const;
  int resolved_nv() const;
  Tolerances resolved_tolerances() const;

  // Throws ConfigError on incomplete or inconsistent settings.
  void validate() const;
};

// "lo:hi" -> Interval.
Interval parse_range(const std::string& text);

// Overwrites fields of cfg with the keys present in j. Unknown keys are errors.
void apply_json(const nlohmann::json& j, JobConfig& cfg);
void load_config_file(const std::string& path, JobConfig& cfg);

nlohmann::json to_json(const JobConfig& cfg);

}  // namespace isor::app
