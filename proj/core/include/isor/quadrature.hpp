#pragma once

#include "isor/common.hpp"

#include <complex>
#include <vector>

namespace isor {

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n - 1.
class GaussLegendre {
 public:
  explicit GaussLegendre(int points);

  int points() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Composite rule on [a, b] with `panels` equal panels. f: double -> T, T a vector space.
  template <class T, class Fn>
  T integrate(const Fn& f, double a, double b, int panels, T zero) const {
    const double width = (b - a) / panels;
    T total = zero;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width;
      T panel = zero;
      for (std::size_t k = 0; k < nodes_.size(); ++k) panel += weights_[k] * f(mid + 0.5 * width * nodes_[k]);
      total += (0.5 * width) * panel;
    }
    return total;
  }

  // Integral of a holomorphic integrand along the straight segment z0 -> z1:
  // int_0^1 f(z0 + t (z1 - z0)) (z1 - z0) dt.
  template <class T, class Fn>
  T integrate_segment(const Fn& f, std::complex<double> z0, std::complex<double> z1, int panels, T zero) const {
    const std::complex<double> dz = z1 - z0;
    T sum = integrate<T>([&](double t) -> T { return f(z0 + t * dz); }, 0.0, 1.0, panels, zero);
    return sum * dz;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace isor
