#include "job.hpp"

#include "isor/cmc.hpp"
#include "isor/minimal.hpp"
#include "isor/untwisted.hpp"

namespace isor::app {

namespace {

MinimalParams minimal_params(const JobConfig& cfg) {
  if (!cfg.preset.empty()) return preset(cfg.preset, cfg.order);
  return {cfg.a, cfg.A, cfg.B};
}

}  // namespace

MetricProfile untwisted_source(const JobConfig& cfg, Interval domain) {
  if (cfg.source == "enneper") return minimal_profile({1, 1, 1}, domain);
  if (cfg.source == "enneper-half") return minimal_profile({1, 1, 1}, domain).scaled(0.5);
  if (cfg.source == "minimal") return minimal_profile({cfg.a, cfg.A, cfg.B}, domain);
  return exponential_profile(cfg.k, domain);
}

SurfaceJob build_job(const JobConfig& cfg) {
  const Interval ur = cfg.resolved_u_range(), vr = cfg.resolved_v_range();
  SurfaceJob job{Mesh{}, std::nullopt, Claim{false, constant_profile(1.0, ur)}, std::nullopt, nlohmann::json::object()};

  if (cfg.mode == "minimal") {
    const MinimalParams p = minimal_params(cfg);
    job.map = minimal_surface(p, ur, vr);
    job.claim = {false, minimal_profile(p, ur), 0.0, p.a, 1.0, 0.0};
    job.period = period_vector(p);
    job.notes["params"] = {{"a", p.a}, {"A", p.A}, {"B", p.B}};
    job.notes["resonant"] = is_resonant(p);
  } else if (cfg.mode == "cmc" && cfg.cylinder) {
    job.map = cylinder_surface(cfg.H, cfg.a, cfg.b, ur, vr);
    job.claim = {false, cylinder_profile(cfg.H, cfg.a, cfg.b, ur), cfg.H, cfg.a, cfg.b, 0.0};
  } else if (cfg.mode == "cmc") {
    RhoSolveOptions opt;
    opt.tol = cfg.tol;
    const OdeSolution sol = solve_rho(cfg.H, cfg.a, cfg.b, cfg.rho0, cfg.drho0, ur, opt);
    if (sol.truncated) throw BlowUp("solve_rho: " + sol.diagnostic);
    FrameOptions fo;
    fo.tol = cfg.tol;
    CmcSurface surf = integrate_surface(sol.profile(), cfg.H, cfg.a, cfg.b, ur, vr, cfg.resolved_nu(), cfg.resolved_nv(), fo);
    job.mesh = std::move(surf.mesh);
    job.claim = {false, sol.profile(), cfg.H, cfg.a, cfg.b, 0.0};
    job.notes["ode_nodes"] = sol.u.size();
    job.notes["ode_steps"] = {{"accepted", sol.stats.accepted}, {"rejected", sol.stats.rejected}};
    job.notes["frame_drift_per_length"] =
        std::max(surf.profile_stats.drift_per_length, surf.column_stats.drift_per_length);
  } else {
    const MetricProfile prof = untwisted_source(cfg, ur);
    job.notes["min_admissible_c"] = min_admissible_c(prof, ur);
    const RevolveProfile rp = build_revolve(prof, cfg.c, ur, cfg.n_quad);
    job.notes["quadrature_error"] = rp.quadrature_error();
    job.map = revolve_surface(rp, vr);
    job.claim = {true, prof, 0.0, 0.0, 0.0, cfg.c};
  }
  if (job.map) job.mesh = sample_mesh(*job.map, cfg.resolved_nu(), cfg.resolved_nv());
  return job;
}

Claim claimed_data(const SurfaceJob& job, const JobConfig& cfg) {
  Claim c = job.claim;
  if (cfg.claim_H) c.H = *cfg.claim_H;
  if (cfg.claim_b) c.b = *cfg.claim_b;
  if (cfg.claim_rho_scale != 1.0) c.profile = c.profile.scaled(cfg.claim_rho_scale);
  return c;
}

}  // namespace isor::app
