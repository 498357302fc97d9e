#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace isor {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Closed real interval [lo, hi] with lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

// Uniform samples of [iv.lo, iv.hi], both endpoints included.
inline std::vector<double> linspace(Interval iv, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = iv.lo;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[static_cast<std::size_t>(i)] = (i == n - 1) ? iv.hi : iv.lo + t * iv.length();
  }
  return out;
}

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// |f_u x f_v| (or det I) vanished at a probe point.
class DegenerateImmersion : public Error {
 public:
  DegenerateImmersion(double u, double v)
      : Error("degenerate immersion at (u, v) = (" + std::to_string(u) + ", " + std::to_string(v) + ")"),
        u_(u),
        v_(v) {}
  double u() const { return u_; }
  double v() const { return v_; }

 private:
  double u_, v_;
};

class SingularMetric : public Error {
 public:
  SingularMetric() : Error("first fundamental form is not positive definite") {}
};

class UmbilicSample : public Error {
 public:
  UmbilicSample(double u, double v)
      : Error("umbilic sample at (u, v) = (" + std::to_string(u) + ", " + std::to_string(v) +
              "); principal direction undefined") {}
};

class UnwrapAmbiguity : public Error {
 public:
  using Error::Error;
};

// c^2 rho^2 - rho'^2 <= 0: the speed-up constant is inadmissible at u.
class RadicandNonpositive : public Error {
 public:
  RadicandNonpositive(double u, double c, double radicand)
      : Error("radicand negative at u = " + std::to_string(u) + " (c = " + std::to_string(c) +
              ", c^2 rho^2 - rho'^2 = " + std::to_string(radicand) + ")"),
        u_(u) {}
  double u() const { return u_; }

 private:
  double u_;
};

class NonpositiveInitialRho : public Error {
 public:
  explicit NonpositiveInitialRho(double rho0)
      : Error("initial conformal factor must be positive, got rho0 = " + std::to_string(rho0)) {}
};

// b = 0 in the minimal case: lambda1 = lambda2 = 0 and the surface is a plane.
class PlaneCase : public Error {
 public:
  PlaneCase() : Error("b = 0 gives a plane; the minimal family requires b != 0") {}
};

// The conformal factor reached 0 or infinity before the end of the requested range.
class BlowUp : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  explicit UnknownPreset(const std::string& name) : Error("unknown preset '" + name + "'") {}
};

}  // namespace isor
