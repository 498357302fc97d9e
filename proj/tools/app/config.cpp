#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace isor::app {

namespace {

const char* const kModes[] = {"minimal", "cmc", "untwisted"};

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

int read_int(const nlohmann::json& j, const char* key) {
  int x = 0;
  read(j, key, x);
  return x;
}

Interval read_range(const nlohmann::json& v, const char* key) {
  if (v.is_string()) return parse_range(v.get<std::string>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const Interval r{v[0].get<double>(), v[1].get<double>()};
    if (!(r.hi > r.lo)) throw ConfigError(std::string("config key '") + key + "': empty range");
    return r;
  }
  throw ConfigError(std::string("config key '") + key + "' must be \"lo:hi\" or [lo, hi]");
}

}  // namespace

Interval parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("range '" + text + "' must have the form lo:hi");
  Interval r;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    r.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    r.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::logic_error&) {
    throw ConfigError("range '" + text + "' must have the form lo:hi with numeric bounds");
  }
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo)) {
    throw ConfigError("range '" + text + "' must be finite with lo < hi");
  }
  return r;
}

Interval JobConfig::resolved_u_range() const { return u_range.value_or(Interval{-1.0, 1.0}); }

Interval JobConfig::resolved_v_range() const {
  if (v_range) return *v_range;
  const double pi = std::numbers::pi;
  if (mode == "cmc") return {-pi / 2, pi / 2};
  if (mode == "untwisted") return {0.0, 2 * pi / c};
  return {0.0, 2 * pi};
}

namespace {
bool grid_differentiated(const JobConfig& c) { return c.mode == "cmc" && !c.cylinder; }
}  // namespace

int JobConfig::resolved_nu() const { return nu.value_or(grid_differentiated(*this) ? 321 : 80); }
int JobConfig::resolved_nv() const { return nv.value_or(grid_differentiated(*this) ? 481 : 240); }

Tolerances JobConfig::resolved_tolerances() const {
  Tolerances t;
  // A numerically integrated mesh is differentiated on its own grid.
  if (grid_differentiated(*this)) {
    t.metric = 1e-3;
    t.curvature = 1e-3;
    t.twist = 1e-3;
  }
  if (residual_tol) t.residual = *residual_tol;
  if (metric_tol) t.metric = *metric_tol;
  if (curvature_tol) t.curvature = *curvature_tol;
  if (twist_tol) t.twist = *twist_tol;
  return t;
}

void JobConfig::validate() const {
  bool known = false;
  for (const char* m : kModes) known = known || mode == m;
  if (!known) throw ConfigError("unknown mode '" + mode + "' (expected minimal, cmc or untwisted)");
  const int nu = resolved_nu(), nv = resolved_nv();
  if (nu < 3 || nv < 3) throw ConfigError("nu and nv must be at least 3 (reports use interior nodes)");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(fd_step > 0.0)) throw ConfigError("fd-step must be positive");
  if (!(claim_rho_scale > 0.0)) throw ConfigError("claim-rho-scale must be positive");
  if (mode == "minimal" && preset.empty() && !(a > 0.0 && A > 0.0 && B > 0.0)) {
    throw ConfigError("minimal mode needs a, A, B > 0");
  }
  if (mode == "cmc" && !cylinder && !(rho0 > 0.0)) throw ConfigError("cmc mode needs rho0 > 0");
  if (mode == "cmc" && cylinder && !(H > 0.0 && b > 0.0 && a != 0.0)) {
    throw ConfigError("the cylinder needs H > 0, b > 0 and a != 0");
  }
  if (mode == "untwisted") {
    if (!(c > 0.0)) throw ConfigError("c must be positive");
    if (source != "enneper" && source != "enneper-half" && source != "minimal" && source != "exponential") {
      throw ConfigError("unknown source '" + source + "' (expected enneper, enneper-half, minimal or exponential)");
    }
    if (n_quad < 1) throw ConfigError("n-quad must be >= 1");
  }
  const Interval u = resolved_u_range();
  if (mode == "cmc" && !cylinder && !u.contains(0.0)) {
    throw ConfigError("cmc mode prescribes rho(0), rho'(0): the u range must contain 0");
  }
  const Interval v = resolved_v_range();
  if (2 * fd_step >= u.length() / (nu - 1) || 2 * fd_step >= v.length() / (nv - 1)) {
    // Probes of boundary-adjacent nodes would leave the domain.
    throw ConfigError("fd-step is too large for the requested grid spacing");
  }
}

void apply_json(const nlohmann::json& j, JobConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "mode") read(j, "mode", cfg.mode);
    else if (key == "preset") read(j, "preset", cfg.preset);
    else if (key == "order") read(j, "order", cfg.order);
    else if (key == "a") read(j, "a", cfg.a);
    else if (key == "A") read(j, "A", cfg.A);
    else if (key == "B") read(j, "B", cfg.B);
    else if (key == "H") read(j, "H", cfg.H);
    else if (key == "b") read(j, "b", cfg.b);
    else if (key == "rho0") read(j, "rho0", cfg.rho0);
    else if (key == "drho0") read(j, "drho0", cfg.drho0);
    else if (key == "cylinder") read(j, "cylinder", cfg.cylinder);
    else if (key == "source") read(j, "source", cfg.source);
    else if (key == "k") read(j, "k", cfg.k);
    else if (key == "c") read(j, "c", cfg.c);
    else if (key == "n_quad") read(j, "n_quad", cfg.n_quad);
    else if (key == "u") cfg.u_range = read_range(v, "u");
    else if (key == "v") cfg.v_range = read_range(v, "v");
    else if (key == "nu") cfg.nu = read_int(j, "nu");
    else if (key == "nv") cfg.nv = read_int(j, "nv");
    else if (key == "tol") read(j, "tol", cfg.tol);
    else if (key == "fd_step") read(j, "fd_step", cfg.fd_step);
    else if (key == "residual_tol") cfg.residual_tol = v.get<double>();
    else if (key == "metric_tol") cfg.metric_tol = v.get<double>();
    else if (key == "curvature_tol") cfg.curvature_tol = v.get<double>();
    else if (key == "twist_tol") cfg.twist_tol = v.get<double>();
    else if (key == "claim_H") cfg.claim_H = v.get<double>();
    else if (key == "claim_b") cfg.claim_b = v.get<double>();
    else if (key == "claim_rho_scale") read(j, "claim_rho_scale", cfg.claim_rho_scale);
    else if (key == "mesh") read(j, "mesh", cfg.mesh_path);
    else if (key == "report") read(j, "report", cfg.report_path);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

void load_config_file(const std::string& path, JobConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    apply_json(j, cfg);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file '") + path + "': " + e.what());
  }
}

nlohmann::json to_json(const JobConfig& cfg) {
  nlohmann::json j;
  j["mode"] = cfg.mode;
  const Interval u = cfg.resolved_u_range(), v = cfg.resolved_v_range();
  j["u"] = {u.lo, u.hi};
  j["v"] = {v.lo, v.hi};
  j["nu"] = cfg.resolved_nu();
  j["nv"] = cfg.resolved_nv();
  if (cfg.mode == "minimal") {
    if (!cfg.preset.empty()) {
      j["preset"] = cfg.preset;
      j["order"] = cfg.order;
    } else {
      j["a"] = cfg.a;
      j["A"] = cfg.A;
      j["B"] = cfg.B;
    }
  } else if (cfg.mode == "cmc") {
    j["H"] = cfg.H;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["cylinder"] = cfg.cylinder;
    if (!cfg.cylinder) {
      j["rho0"] = cfg.rho0;
      j["drho0"] = cfg.drho0;
      j["tol"] = cfg.tol;
    }
  } else {
    j["source"] = cfg.source;
    if (cfg.source == "minimal") {
      j["a"] = cfg.a;
      j["A"] = cfg.A;
      j["B"] = cfg.B;
    } else if (cfg.source == "exponential") {
      j["k"] = cfg.k;
    }
    j["c"] = cfg.c;
    j["n_quad"] = cfg.n_quad;
  }
  j["fd_step"] = cfg.fd_step;
  if (cfg.claim_H) j["claim_H"] = *cfg.claim_H;
  if (cfg.claim_b) j["claim_b"] = *cfg.claim_b;
  if (cfg.claim_rho_scale != 1.0) j["claim_rho_scale"] = cfg.claim_rho_scale;
  return j;
}

}  // namespace isor::app
