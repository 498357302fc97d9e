#include "run.hpp"

#include "config.hpp"
#include "job.hpp"
#include "obj.hpp"
#include "report.hpp"

#include "isor/cmc.hpp"
#include "isor/intrinsic.hpp"
#include "isor/minimal.hpp"
#include "isor/untwisted.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace isor::app {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  return os;
}

// Flags given on the command line, applied on top of the --config file after parsing.
class Overrides {
 public:
  template <class T>
  void add(CLI::App* app, const std::string& name, const std::string& desc,
           std::function<void(JobConfig&, const T&)> set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, desc);
    items_.push_back({opt, [value, set](JobConfig& c) { set(c, *value); }});
  }

  void flag(CLI::App* app, const std::string& name, const std::string& desc,
            std::function<void(JobConfig&)> set) {
    CLI::Option* opt = app->add_flag(name, desc);
    items_.push_back({opt, std::move(set)});
  }

  void apply(JobConfig& cfg) const {
    for (const auto& [opt, set] : items_)
      if (opt->count() > 0) set(cfg);
  }

 private:
  std::vector<std::pair<CLI::Option*, std::function<void(JobConfig&)>>> items_;
};

struct Command {
  CLI::App* app = nullptr;
  Overrides overrides;
  std::string config_path;

  JobConfig resolve() const {
    JobConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    overrides.apply(cfg);
    return cfg;
  }
};

#define ISOR_SET(field) [](JobConfig& c, const auto& x) { c.field = x; }

void add_minimal_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<std::string>(cmd.app, "--preset", "minimal preset (see `isor presets`)", ISOR_SET(preset));
  o.add<int>(cmd.app, "--order", "order n for presets that take one", ISOR_SET(order));
  o.add<double>(cmd.app, "--a", "twist rate a", ISOR_SET(a));
  o.add<double>(cmd.app, "--A", "minimal parameter A", ISOR_SET(A));
  o.add<double>(cmd.app, "--B", "minimal parameter B", ISOR_SET(B));
}

void add_cmc_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<double>(cmd.app, "--H", "mean curvature (sum convention)", ISOR_SET(H));
  o.add<double>(cmd.app, "--b", "Codazzi constant b", ISOR_SET(b));
  o.add<double>(cmd.app, "--rho0", "rho at u = 0", ISOR_SET(rho0));
  o.add<double>(cmd.app, "--drho0", "rho' at u = 0", ISOR_SET(drho0));
  o.add<double>(cmd.app, "--tol", "ODE tolerance", ISOR_SET(tol));
}

void add_untwisted_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<std::string>(cmd.app, "--source", "enneper | enneper-half | minimal | exponential", ISOR_SET(source));
  o.add<double>(cmd.app, "--k", "rate of the exponential source", ISOR_SET(k));
  o.add<double>(cmd.app, "--c", "speed-up constant c", ISOR_SET(c));
  o.add<int>(cmd.app, "--n-quad", "quadrature panels for h(u)", ISOR_SET(n_quad));
}

void add_range_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<std::string>(cmd.app, "--u", "u range lo:hi",
                     [](JobConfig& c, const std::string& s) { c.u_range = parse_range(s); });
  o.add<std::string>(cmd.app, "--v", "v range lo:hi (radians)",
                     [](JobConfig& c, const std::string& s) { c.v_range = parse_range(s); });
  o.add<int>(cmd.app, "--nu", "grid nodes along u", ISOR_SET(nu));
  o.add<int>(cmd.app, "--nv", "grid nodes along v", ISOR_SET(nv));
}

void add_surface_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<std::string>(cmd.app, "--mode", "minimal | cmc | untwisted", ISOR_SET(mode));
  add_minimal_options(cmd);
  add_cmc_options(cmd);
  o.flag(cmd.app, "--cylinder", "use the explicit cylinder for the cmc mode",
         [](JobConfig& c) { c.cylinder = true; });
  add_untwisted_options(cmd);
  add_range_options(cmd);
  o.add<double>(cmd.app, "--fd-step", "finite-difference step for analytic maps", ISOR_SET(fd_step));
  o.add<double>(cmd.app, "--residual-tol", "tolerance on Gauss/Codazzi/master residuals", ISOR_SET(residual_tol));
  o.add<double>(cmd.app, "--metric-tol", "relative tolerance on E, F, G", ISOR_SET(metric_tol));
  o.add<double>(cmd.app, "--curvature-tol", "tolerance on principal curvatures", ISOR_SET(curvature_tol));
  o.add<double>(cmd.app, "--twist-tol", "tolerance on the fitted twist rate", ISOR_SET(twist_tol));
  o.add<std::string>(cmd.app, "--report", "report CSV path (summary at <path>.json)", ISOR_SET(report_path));
}

void add_claim_options(Command& cmd) {
  Overrides& o = cmd.overrides;
  o.add<double>(cmd.app, "--claim-H", "claimed H to verify against", ISOR_SET(claim_H));
  o.add<double>(cmd.app, "--claim-b", "claimed b to verify against", ISOR_SET(claim_b));
  o.add<double>(cmd.app, "--claim-rho-scale", "scale the claimed rho by this factor", ISOR_SET(claim_rho_scale));
}

#undef ISOR_SET

void print_summary(const CurvatureReport& rep, const JobConfig& cfg, std::ostream& out) {
  const ReportSummary& s = rep.summary;
  out << "mode: " << cfg.mode << (cfg.mode == "cmc" && cfg.cylinder ? " (cylinder)" : "") << '\n';
  out << "samples: " << s.samples << '\n';
  out << "max_metric_err: " << short_fmt(s.max_metric_err) << '\n';
  out << "max_lambda_err: " << short_fmt(s.max_lambda_err) << '\n';
  out << "max_mean_err: " << short_fmt(s.max_mean_err) << '\n';
  out << "max_abs_mean_curvature: " << short_fmt(s.max_abs_mean_curvature) << '\n';
  out << "max_gauss_residual: " << short_fmt(s.max_gauss) << '\n';
  out << "max_codazzi_residual: " << short_fmt(s.max_codazzi) << '\n';
  out << "max_master_residual: " << short_fmt(s.max_master) << '\n';
  out << "a_est: " << short_fmt(s.a_est) << " (claimed " << short_fmt(s.a_claim) << ")\n";
  out << "result: " << (s.pass() ? "PASS" : "FAIL") << '\n';
}

int surface_command(const Command& cmd, bool write_mesh, std::ostream& out) {
  const JobConfig cfg = cmd.resolve();
  cfg.validate();
  const SurfaceJob job = build_job(cfg);
  if (write_mesh) {
    std::ofstream os = open_out(cfg.mesh_path);
    write_obj(job.mesh, os);
  }
  const CurvatureReport rep = verify(job, claimed_data(job, cfg), cfg.resolved_tolerances(), cfg.fd_step);
  {
    std::ofstream os = open_out(cfg.report_path);
    write_report_csv(rep, os);
  }
  {
    std::ofstream os = open_out(cfg.report_path + ".json");
    os << summary_json(rep, job, cfg).dump(2) << '\n';
  }
  print_summary(rep, cfg, out);
  return rep.summary.pass() ? kPass : kChecksFailed;
}

int solve_rho_command(const Command& cmd, const std::string& out_path, std::ostream& out, std::ostream& err) {
  JobConfig cfg = cmd.resolve();
  cfg.mode = "cmc";
  cfg.validate();
  const Interval ur = cfg.resolved_u_range();
  RhoSolveOptions opt;
  opt.tol = cfg.tol;
  const OdeSolution sol = solve_rho(cfg.H, cfg.a, cfg.b, cfg.rho0, cfg.drho0, ur, opt);
  const IntrinsicData d{sol.profile(), cfg.H, cfg.a, cfg.b};
  std::ofstream os = open_out(out_path);
  os << "u,rho,drho,ddrho,residual\n";
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    os << fmt(sol.u[k]) << ',' << fmt(sol.rho[k]) << ',' << fmt(sol.drho[k]) << ',' << fmt(sol.ddrho[k]) << ','
       << fmt(master_ode_relative_residual(d, sol.u[k])) << '\n';
  }
  out << "nodes: " << sol.u.size() << '\n';
  out << "accepted_steps: " << sol.stats.accepted << '\n';
  out << "rejected_steps: " << sol.stats.rejected << '\n';
  out << "covered: " << fmt(sol.covered().lo) << ':' << fmt(sol.covered().hi) << '\n';
  if (sol.truncated) {
    err << "isor: numerical failure: blow-up: " << sol.diagnostic << '\n';
    return kNumericError;
  }
  return kPass;
}

int revolve_command(const Command& cmd, const std::string& out_path, std::ostream& out) {
  JobConfig cfg = cmd.resolve();
  cfg.mode = "untwisted";
  cfg.validate();
  const Interval ur = cfg.resolved_u_range();
  const MetricProfile prof = untwisted_source(cfg, ur);
  out << "min_admissible_c: " << fmt(min_admissible_c(prof, ur)) << '\n';
  const RevolveProfile rp = build_revolve(prof, cfg.c, ur, cfg.n_quad);
  out << "quadrature_error: " << short_fmt(rp.quadrature_error()) << '\n';
  std::ofstream os = open_out(out_path);
  os << "u,rho,g,h,lambda1,lambda2\n";
  for (double u : linspace(ur, cfg.resolved_nu())) {
    const UntwistedLambdas l = untwisted_lambdas(prof, cfg.c, u);
    os << fmt(u) << ',' << fmt(prof.rho(u)) << ',' << fmt(rp.g(u)) << ',' << fmt(rp.h(u)) << ',' << fmt(l.lambda1)
       << ',' << fmt(l.lambda2) << '\n';
  }
  return kPass;
}

int presets_command(std::ostream& out) {
  for (const PresetInfo& p : list_presets()) {
    const MinimalParams mp = preset(p.name, 1);
    out << p.name << (p.takes_order ? " (takes --order)" : "") << ": " << p.description << "  [n=1: a=" << fmt(mp.a)
        << " A=" << fmt(mp.A) << " B=" << fmt(mp.B) << "]\n";
  }
  return kPass;
}

template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnknownPreset& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PlaneCase& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NonpositiveInitialRho& e) {
    err << "isor: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "isor: numerical failure: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surfaces with rotationally symmetric metric and twisted principal directions", "isor"};
  app.require_subcommand(1);

  Command generate, verify_cmd, solve, revolve;
  generate.app = app.add_subcommand("generate", "build a surface, write OBJ mesh and curvature report");
  verify_cmd.app = app.add_subcommand("verify", "re-evaluate a surface against (possibly altered) intrinsic data");
  solve.app = app.add_subcommand("solve-rho", "integrate the master ODE and dump the solution as CSV");
  revolve.app = app.add_subcommand("revolve", "untwisted profile (g, h) and the admissible range of c");
  CLI::App* presets = app.add_subcommand("presets", "list minimal-family presets");

  for (Command* c : {&generate, &verify_cmd, &solve, &revolve})
    c->app->add_option("--config", c->config_path, "JSON job file; flags override its values");

  add_surface_options(generate);
  generate.overrides.add<std::string>(generate.app, "--mesh", "OBJ output path",
                                      [](JobConfig& c, const std::string& s) { c.mesh_path = s; });
  add_surface_options(verify_cmd);
  add_claim_options(verify_cmd);

  add_cmc_options(solve);
  solve.overrides.add<double>(solve.app, "--a", "twist rate a", [](JobConfig& c, const double& x) { c.a = x; });
  solve.overrides.add<std::string>(solve.app, "--u", "u range lo:hi",
                                   [](JobConfig& c, const std::string& s) { c.u_range = parse_range(s); });
  std::string solve_out = "isor_rho.csv";
  solve.app->add_option("--out", solve_out, "CSV output path");

  add_untwisted_options(revolve);
  revolve.overrides.add<double>(revolve.app, "--a", "minimal source parameter a",
                                [](JobConfig& c, const double& x) { c.a = x; });
  revolve.overrides.add<double>(revolve.app, "--A", "minimal source parameter A",
                                [](JobConfig& c, const double& x) { c.A = x; });
  revolve.overrides.add<double>(revolve.app, "--B", "minimal source parameter B",
                                [](JobConfig& c, const double& x) { c.B = x; });
  add_range_options(revolve);
  std::string revolve_out = "isor_revolve.csv";
  revolve.app->add_option("--out", revolve_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  return guarded(
      [&]() -> int {
        if (*generate.app) return surface_command(generate, true, out);
        if (*verify_cmd.app) return surface_command(verify_cmd, false, out);
        if (*solve.app) return solve_rho_command(solve, solve_out, out, err);
        if (*revolve.app) return revolve_command(revolve, revolve_out, out);
        if (*presets) return presets_command(out);
        return kConfigError;
      },
      err);
}

}  // namespace isor::app
