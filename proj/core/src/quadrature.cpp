#include "isor/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace isor {

GaussLegendre::GaussLegendre(int points) {
  if (points < 1 || points > 128) throw InvalidArgument("GaussLegendre: points must be in [1, 128]");
  const int n = points;
  nodes_.assign(static_cast<std::size_t>(n), 0.0);
  weights_.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration on P_n from the Chebyshev-like initial guess; roots are symmetric.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[static_cast<std::size_t>(i)] = -x;
    nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
    weights_[static_cast<std::size_t>(i)] = w;
    weights_[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes_[static_cast<std::size_t>(n / 2)] = 0.0;
}

}  // namespace isor
