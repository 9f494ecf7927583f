#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace boundstate {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// sum_i w_i f(x_i) after mapping [-1, 1] onto [lo, hi].
  template <class F>
  double integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(mid + half * nodes[i]);
    return acc * half;
  }
};

/// Nodes are the roots of P_n, found by Newton iteration from the Tricomi
/// estimate; w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
inline GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = static_cast<double>(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = nd * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[m - 1] = 0.0;
  return rule;
}

} // namespace boundstate
