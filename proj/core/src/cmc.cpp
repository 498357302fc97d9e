#include "isor/cmc.hpp"

#include "isor/intrinsic.hpp"
#include "isor/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace isor {

namespace {

using State2 = Eigen::Vector2d;
using State12 = Eigen::Matrix<double, 12, 1>;

constexpr double kRhoFloor = 1e-8;
constexpr double kSlopeCeiling = 1e8;

State12 pack(const FrameState& f) {
  State12 y;
  y << f.position, f.X, f.Y, f.N;
  return y;
}

FrameState unpack(const State12& y) {
  return {y.segment<3>(0), y.segment<3>(3), y.segment<3>(6), y.segment<3>(9)};
}

double orthonormality_drift(const State12& y) {
  const Vec3 X = y.segment<3>(3), Y = y.segment<3>(6), N = y.segment<3>(9);
  return std::max({std::abs(X.squaredNorm() - 1.0), std::abs(Y.squaredNorm() - 1.0), std::abs(N.squaredNorm() - 1.0),
                   std::abs(X.dot(Y)), std::abs(X.dot(N)), std::abs(Y.dot(N))});
}

// Modified Gram-Schmidt in the order Y, X, then N = X x Y. Y comes first so that a
// constant Y stays bitwise constant.
void reorthonormalize(State12& y) {
  Vec3 Y = y.segment<3>(6).normalized();
  Vec3 X = y.segment<3>(3);
  X -= X.dot(Y) * Y;
  X.normalize();
  const Vec3 N = X.cross(Y);
  y.segment<3>(3) = X;
  y.segment<3>(6) = Y;
  y.segment<3>(9) = N;
}

struct FrameRhs {
  const MetricProfile& profile;
  double H, a, b;
  Direction dir;
  double fixed;

  State12 operator()(double t, const State12& y) const {
    const double u = dir == Direction::u ? t : fixed;
    const double v = dir == Direction::u ? fixed : t;
    const double rho = profile.rho(u);
    const double mu = b * std::exp(2.0 * a * u) / (rho * rho);
    const Mat2 S = twisted_shape_operator(0.5 * H + mu, 0.5 * H - mu, a * v);
    const Vec3 X = y.segment<3>(3), Y = y.segment<3>(6), N = y.segment<3>(9);
    State12 dy;
    if (dir == Direction::u) {
      dy.segment<3>(0) = rho * X;
      dy.segment<3>(3) = -rho * S(0, 0) * N;
      dy.segment<3>(6) = -rho * S(0, 1) * N;
      dy.segment<3>(9) = rho * (S(0, 0) * X + S(0, 1) * Y);
    } else {
      const double g = profile.drho(u) / rho;
      dy.segment<3>(0) = rho * Y;
      dy.segment<3>(3) = g * Y - rho * S(0, 1) * N;
      dy.segment<3>(6) = -g * X - rho * S(1, 1) * N;
      dy.segment<3>(9) = rho * (S(0, 1) * X + S(1, 1) * Y);
    }
    return dy;
  }
};

std::vector<FrameState> run_transport(const MetricProfile& profile, double H, double a, double b, Direction dir,
                                      double fixed, double t0, const FrameState& init, std::span<const double> stops,
                                      const FrameOptions& opt, TransportStats& stats) {
  std::vector<FrameState> out;
  out.reserve(stops.size());
  if (stops.empty()) return out;
  const FrameRhs rhs{profile, H, a, b, dir, fixed};
  ode::Options o;
  o.rtol = o.atol = opt.tol;
  o.max_step = opt.max_step;
  double t_prev = t0;
  double drift_sum = 0.0;
  auto observer = [&](double t, State12& y, int stop) {
    const double drift = orthonormality_drift(y);
    stats.max_step_drift = std::max(stats.max_step_drift, drift);
    drift_sum += drift;
    const double u_mid = dir == Direction::u ? 0.5 * (t + t_prev) : fixed;
    stats.arc_length += profile.rho(u_mid) * std::abs(t - t_prev);
    t_prev = t;
    reorthonormalize(y);
    if (stop >= 0) out.push_back(unpack(y));
    return true;
  };
  State12 y0 = pack(init);
  const auto res = ode::integrate<12>(rhs, t0, y0, stops, o, observer);
  stats.steps += res.stats;
  if (res.status != ode::Status::completed) throw Error("frame transport failed: step size underflow or step limit");
  stats.drift_per_length = stats.arc_length > 0.0 ? drift_sum / stats.arc_length : 0.0;
  return out;
}

void merge(TransportStats& into, const TransportStats& s) {
  into.steps += s.steps;
  into.max_step_drift = std::max(into.max_step_drift, s.max_step_drift);
  into.drift_per_length = std::max(into.drift_per_length, s.drift_per_length);
  into.arc_length += s.arc_length;
}

}  // namespace

double master_ode_rhs(double H, double a, double b, double u, double rho, double drho) {
  const double rho2 = rho * rho;
  return (drho * drho - 0.25 * H * H * rho2 * rho2 + b * b * std::exp(4.0 * a * u)) / rho;
}

OdeSolution solve_rho(double H, double a, double b, double rho0, double drho0, Interval u_range,
                      const RhoSolveOptions& opt) {
  if (!(rho0 > 0.0)) throw NonpositiveInitialRho(rho0);
  if (!(opt.tol > 0.0)) throw InvalidArgument("solve_rho: tol must be positive");
  if (!(u_range.hi > u_range.lo)) throw InvalidArgument("solve_rho: empty u range");
  if (!u_range.contains(opt.u0)) throw InvalidArgument("solve_rho: u0 must lie in the u range");

  OdeSolution sol;
  sol.H = H;
  sol.a = a;
  sol.b = b;
  auto rhs = [&](double u, const State2& y) {
    return State2(y(1), master_ode_rhs(H, a, b, u, y(0), y(1)));
  };
  ode::Options o;
  o.rtol = o.atol = opt.tol;
  o.max_step = opt.max_step;

  // One pass per direction; each returns its accepted points in integration order.
  auto pass = [&](double end, std::vector<double>& us, std::vector<State2>& ys) {
    if (end == opt.u0) return;
    const double stop[] = {end};
    auto observer = [&](double u, State2& y, int) {
      if (!std::isfinite(y(0)) || !std::isfinite(y(1)) || y(0) < kRhoFloor || std::abs(y(1)) > kSlopeCeiling) {
        sol.truncated = true;
        sol.diagnostic = "blow-up detected near u = " + std::to_string(u) + " (rho = " + std::to_string(y(0)) +
                         ", rho' = " + std::to_string(y(1)) + ")";
        return false;
      }
      us.push_back(u);
      ys.push_back(y);
      return true;
    };
    const auto res = ode::integrate<2>(rhs, opt.u0, State2(rho0, drho0), std::span<const double>(stop), o, observer);
    sol.stats += res.stats;
    if (res.status == ode::Status::step_size_underflow || res.status == ode::Status::too_many_steps) {
      sol.truncated = true;
      sol.diagnostic = "integration stopped at u = " + std::to_string(res.t) +
                       (res.status == ode::Status::too_many_steps ? ": step limit" : ": step size underflow");
    }
  };
  std::vector<double> ub, uf;
  std::vector<State2> yb, yf;
  pass(u_range.lo, ub, yb);
  pass(u_range.hi, uf, yf);

  auto push = [&](double u, const State2& y) {
    sol.u.push_back(u);
    sol.rho.push_back(y(0));
    sol.drho.push_back(y(1));
    sol.ddrho.push_back(master_ode_rhs(H, a, b, u, y(0), y(1)));
  };
  for (std::size_t k = ub.size(); k-- > 0;) push(ub[k], yb[k]);
  push(opt.u0, State2(rho0, drho0));
  for (std::size_t k = 0; k < uf.size(); ++k) push(uf[k], yf[k]);

  if (sol.u.size() < 2) throw BlowUp("solve_rho: " + sol.diagnostic);
  const auto interp = std::make_shared<QuinticHermite>(sol.u, sol.rho, sol.drho, sol.ddrho);
  sol.interpolant = interp->as_profile();
  return sol;
}

ProfileFrames integrate_profile(const MetricProfile& profile, double H, double a, double b,
                                std::span<const double> s_samples, const FrameState& init, const FrameOptions& opt) {
  if (s_samples.empty()) throw InvalidArgument("integrate_profile: no samples");
  ProfileFrames out;
  const Interval dom = profile.domain();
  std::size_t n = 0;
  while (n < s_samples.size() && dom.contains(s_samples[n])) ++n;
  out.truncated = n < s_samples.size();
  if (n == 0) throw BlowUp("integrate_profile: start outside the profile domain");
  out.s.assign(s_samples.begin(), s_samples.begin() + static_cast<std::ptrdiff_t>(n));
  out.frames.push_back(init);
  const auto rest = run_transport(profile, H, a, b, Direction::u, 0.0, s_samples[0], init,
                                  std::span<const double>(s_samples.data() + 1, n - 1), opt, out.stats);
  out.frames.insert(out.frames.end(), rest.begin(), rest.end());
  return out;
}

std::vector<FrameState> transport(const MetricProfile& profile, double H, double a, double b, Direction dir,
                                  double fixed, double t0, const FrameState& init, std::span<const double> stops,
                                  const FrameOptions& opt, TransportStats* stats) {
  TransportStats local;
  auto out = run_transport(profile, H, a, b, dir, fixed, t0, init, stops, opt, local);
  if (stats) *stats = local;
  return out;
}

CmcSurface integrate_surface(const MetricProfile& profile, double H, double a, double b, Interval u_range,
                             Interval v_range, int nu, int nv, const FrameOptions& opt) {
  if (nu < 2 || nv < 2) throw InvalidArgument("integrate_surface: nu, nv must be >= 2");
  if (!profile.domain().contains(u_range)) {
    throw BlowUp("integrate_surface: the conformal factor is only available on [" +
                 std::to_string(profile.domain().lo) + ", " + std::to_string(profile.domain().hi) + "]");
  }
  CmcSurface out;
  Mesh& m = out.mesh;
  m.nu = nu;
  m.nv = nv;
  m.u_samples = linspace(u_range, nu);
  m.v_samples = linspace(v_range, nv);
  m.vertices.resize(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  m.normals.resize(m.vertices.size());

  const ProfileFrames prof = integrate_profile(profile, H, a, b, m.u_samples, FrameState{}, opt);
  out.profile_stats = prof.stats;

  // v samples on either side of the profile line v = 0.
  std::vector<int> up, down;
  for (int j = 0; j < nv; ++j) (m.v_samples[static_cast<std::size_t>(j)] >= 0.0 ? up : down).push_back(j);
  std::reverse(down.begin(), down.end());

  std::vector<TransportStats> col_stats(static_cast<std::size_t>(nu));
  parallel_for(nu, [&](int i) {
    const double u = m.u_samples[static_cast<std::size_t>(i)];
    const FrameState& start = prof.frames[static_cast<std::size_t>(i)];
    for (const auto* side : {&up, &down}) {
      if (side->empty()) continue;
      std::vector<double> stops;
      for (int j : *side) stops.push_back(m.v_samples[static_cast<std::size_t>(j)]);
      TransportStats st;
      const auto frames = run_transport(profile, H, a, b, Direction::v, u, 0.0, start, stops, opt, st);
      merge(col_stats[static_cast<std::size_t>(i)], st);
      for (std::size_t k = 0; k < frames.size(); ++k) {
        const std::size_t idx = m.index(i, (*side)[k]);
        m.vertices[idx] = frames[k].position;
        m.normals[idx] = frames[k].N;
      }
    }
  });
  for (const auto& s : col_stats) merge(out.column_stats, s);
  return out;
}

double cylinder_rho(double H, double a, double b, double u) { return std::sqrt(2.0 * b / H) * std::exp(a * u); }

MetricProfile cylinder_profile(double H, double a, double b, Interval domain) {
  if (!(H > 0.0) || !(b > 0.0)) throw InvalidArgument("cylinder requires H > 0 and b > 0");
  return MetricProfile([=](double u) { return cylinder_rho(H, a, b, u); },
                       [=](double u) { return a * cylinder_rho(H, a, b, u); },
                       [=](double u) { return a * a * cylinder_rho(H, a, b, u); }, domain);
}

Vec3 cylinder_point(double H, double a, double b, double u, double v) {
  const double r = std::sqrt(2.0 * b * H) * std::exp(a * u) / a;
  const double phi = r * std::cos(a * v);
  return Vec3(std::cos(phi), std::sin(phi), r * std::sin(a * v)) / H;
}

SurfaceMap cylinder_surface(double H, double a, double b, Interval u_range, Interval v_range) {
  if (!(H > 0.0) || !(b > 0.0) || a == 0.0) throw InvalidArgument("cylinder requires H > 0, b > 0, a != 0");
  return SurfaceMap{[=](double u, double v) { return cylinder_point(H, a, b, u, v); }, u_range, v_range};
}

std::complex<double> hopf(double b, double a, std::complex<double> z) { return 0.5 * b * std::exp(2.0 * a * z); }

std::complex<double> hopf_from_shape(double rho, const Mat2& S) {
  using cd = std::complex<double>;
  const cd w0(0.5, 0.0), w1(0.0, -0.5);
  return rho * rho * (w0 * S(0, 0) * w0 + 2.0 * w0 * S(0, 1) * w1 + w1 * S(1, 1) * w1);
}

double smyth_phi(const MetricProfile& profile, double u) { return 2.0 * std::log(profile.rho(u)); }

double smyth_F(const MetricProfile& profile, double a, double b, double u, int sign) {
  return smyth_phi(profile, u) - sign * 2.0 * a * u - std::log(b);
}

double smyth_mu(double a, double b, double u) { return b * std::exp(2.0 * a * u); }

double smyth_residual(const MetricProfile& profile, double a, double b, double u, int sign) {
  if (!(b > 0.0)) throw InvalidArgument("smyth_residual requires b > 0");
  const double rho = profile.rho(u);
  const double drho = profile.drho(u);
  const double F2 = 2.0 * (rho * profile.ddrho(u) - drho * drho) / (rho * rho);
  return F2 + 4.0 * b * std::exp(sign * 2.0 * a * u) * std::sinh(smyth_F(profile, a, b, u, sign));
}

}  // namespace isor
