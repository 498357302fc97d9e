#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta integrator with per-step error control.
//
// Integration proceeds from t0 through an ordered list of stop points (all on the same
// side of t0); the step is clamped so every stop is hit exactly. After each accepted
// step the observer sees (t, y, stop_index) and may modify y in place, e.g. to project
// back onto a constraint, or return false to terminate early.

#include "isor/common.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace isor::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0: pick from the first derivative
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 5'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;

  Stats& operator+=(const Stats& o) {
    accepted += o.accepted;
    rejected += o.rejected;
    rhs_evals += o.rhs_evals;
    return *this;
  }
};

enum class Status { completed, stopped_by_observer, step_size_underflow, too_many_steps };

template <int N>
struct Result {
  Eigen::Matrix<double, N, 1> y;
  double t = 0.0;
  Status status = Status::completed;
  Stats stats;
};

// No observer: accept every step.
struct NoObserver {
  template <class State>
  bool operator()(double, State&, int) const {
    return true;
  }
};

namespace detail {

// Dormand & Prince (1980) coefficients.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                        b6 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace detail

// One Dormand-Prince step of size h from (t, y) with f(t, y) = k1 given.
// Writes the fifth-order solution to y_new and the embedded error estimate to err.
template <int N, class Rhs>
void dopri_step(const Rhs& rhs, double t, const Eigen::Matrix<double, N, 1>& y,
                const Eigen::Matrix<double, N, 1>& k1, double h, Eigen::Matrix<double, N, 1>& y_new,
                Eigen::Matrix<double, N, 1>& err) {
  using namespace detail;
  using State = Eigen::Matrix<double, N, 1>;
  const State k2 = rhs(t + c2 * h, State(y + h * (a21 * k1)));
  const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 = rhs(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = rhs(t + h, y_new);
  err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
}

// Integrates y' = rhs(t, y) from (t0, y0) through `stops` (monotone, same direction).
template <int N, class Rhs, class Observer = NoObserver>
Result<N> integrate(const Rhs& rhs, double t0, const Eigen::Matrix<double, N, 1>& y0, std::span<const double> stops,
                    const Options& opt, Observer&& observer = Observer{}) {
  using State = Eigen::Matrix<double, N, 1>;
  Result<N> res;
  res.t = t0;
  res.y = y0;
  if (stops.empty()) return res;

  const double dir = (stops.back() >= t0) ? 1.0 : -1.0;
  const double span_len = std::abs(stops.back() - t0);
  auto error_norm = [&](const State& y, const State& yn, const State& e) {
    double s = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(yn(i)));
      s += (e(i) / sc) * (e(i) / sc);
    }
    return std::sqrt(s / static_cast<double>(y.size()));
  };

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  ++res.stats.rhs_evals;

  double h = opt.initial_step;
  if (!(h > 0.0)) {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y(i));
      d0 += (y(i) / sc) * (y(i) / sc);
      d1 += (k1(i) / sc) * (k1(i) / sc);
    }
    d0 = std::sqrt(d0 / static_cast<double>(y.size()));
    d1 = std::sqrt(d1 / static_cast<double>(y.size()));
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, 0.1 * std::max(span_len, 1e-12));
  }
  h = std::min(h, opt.max_step);

  State y_new, err;
  std::size_t next = 0;
  // Skip stops that coincide with the start.
  while (next < stops.size() && stops[next] == t0) {
    if (!observer(t, y, static_cast<int>(next))) {
      res.status = Status::stopped_by_observer;
      res.y = y;
      return res;
    }
    ++next;
  }
  while (next < stops.size()) {
    if (res.stats.accepted + res.stats.rejected >= opt.max_steps) {
      res.status = Status::too_many_steps;
      break;
    }
    const double remaining = std::abs(stops[next] - t);
    bool hits_stop = false;
    double step = std::min(h, opt.max_step);
    if (step >= remaining * (1.0 - 1e-12)) {
      step = remaining;
      hits_stop = true;
    } else if (remaining - step < 0.1 * step) {
      // Avoid leaving a sliver before the stop.
      step = 0.5 * remaining;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      res.status = Status::step_size_underflow;
      break;
    }
    dopri_step<N>(rhs, t, y, k1, dir * step, y_new, err);
    res.stats.rhs_evals += 6;
    const double en = error_norm(y, y_new, err);
    if (!std::isfinite(en)) {
      ++res.stats.rejected;
      h = 0.2 * step;
      continue;
    }
    if (en <= 1.0) {
      ++res.stats.accepted;
      t = hits_stop ? stops[next] : t + dir * step;
      y = y_new;
      const int stop_index = hits_stop ? static_cast<int>(next) : -1;
      if (hits_stop) ++next;
      if (!observer(t, y, stop_index)) {
        res.status = Status::stopped_by_observer;
        break;
      }
      k1 = rhs(t, y);
      ++res.stats.rhs_evals;
      const double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-10), -0.2), 0.2, 5.0);
      // A hit stop may have shortened the step; grow from the controller's proposal.
      h = hits_stop ? std::max(h, step * fac) : step * fac;
    } else {
      ++res.stats.rejected;
      h = step * std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0);
    }
  }
  res.t = t;
  res.y = y;
  return res;
}

// Fixed-step integration, used to check the order of the stepper.
template <int N, class Rhs>
Eigen::Matrix<double, N, 1> integrate_fixed(const Rhs& rhs, double t0, const Eigen::Matrix<double, N, 1>& y0,
                                            double t1, int steps) {
  using State = Eigen::Matrix<double, N, 1>;
  State y = y0, y_new, err;
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    dopri_step<N>(rhs, t, y, State(rhs(t, y)), h, y_new, err);
    y = y_new;
  }
  return y;
}

}  // namespace isor::ode
