#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace pit {

template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_N, starting from
// the Chebyshev-like guess cos(pi (i + 0.75) / (N + 0.5)).
template <std::size_t N>
GaussLegendreRule<N> make_gauss_legendre() {
  GaussLegendreRule<N> rule;
  constexpr double n = static_cast<double>(N);
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= N; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[N - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[N - 1 - i] = w;
  }
  return rule;
}

inline const GaussLegendreRule<16>& gauss_legendre_16() {
  static const GaussLegendreRule<16> rule = make_gauss_legendre<16>();
  return rule;
}

// Composite 16-point Gauss-Legendre over `panels` equal panels of [a, b].
// Panels are summed left to right, so the result is reproducible.
template <typename F>
double composite_gauss_legendre(F&& f, double a, double b, std::size_t panels) {
  const auto& rule = gauss_legendre_16();
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * h;
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace pit
