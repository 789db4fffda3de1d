#pragma once

// Closed-form contraction factors for Parareal on u' = -lambda u.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pit/core.hpp"

namespace pit {

enum class StabilityKind { backward_euler };

// Amplification R(z) of a one-step method on u' = z u.
struct StabilityFunction {
  StabilityKind kind = StabilityKind::backward_euler;

  double operator()(double z) const {
    switch (kind) {
      case StabilityKind::backward_euler: return 1.0 / (1.0 - z);
    }
    throw std::logic_error("unknown stability function");
  }
};

// Without coarse propagator: exp(-lambda dT).
inline double rho_no_coarse(double lambda, double slice_width) {
  if (lambda < 0.0) throw std::invalid_argument("decay rate must be nonnegative");
  if (!(slice_width > 0.0)) throw std::invalid_argument("slice width must be positive");
  return std::exp(-lambda * slice_width);
}

// With a coarse propagator of stability function R:
//   |exp(-lambda dT) - R(-lambda dT)| / (1 - |R(-lambda dT)|)
inline double rho_with_coarse(double lambda, double slice_width, const StabilityFunction& R = {}) {
  if (lambda < 0.0) throw std::invalid_argument("decay rate must be nonnegative");
  if (!(slice_width > 0.0)) throw std::invalid_argument("slice width must be positive");
  const double z = -lambda * slice_width;
  const double r = R(z);
  if (!(std::abs(r) < 1.0)) throw UndefinedFactorError("|R(z)| >= 1: contraction factor undefined");
  return std::abs(std::exp(z) - r) / (1.0 - std::abs(r));
}

// Decay rate of sine/cosine mode m on a domain of length L.
inline double mode_decay_rate(int m, double domain_length) {
  const double k = m * std::numbers::pi / domain_length;
  return k * k;
}

// exp(-((m_G + 1) pi / L)^2 k dT) * initial_sup_error
inline double theorem1_bound(int coarse_modes, double slice_width, int k, double initial_sup_error,
                             double domain_length = std::numbers::pi) {
  if (k < 0) throw std::invalid_argument("iteration count must be nonnegative");
  if (coarse_modes < 0) throw std::invalid_argument("coarse mode count must be nonnegative");
  return std::exp(-mode_decay_rate(coarse_modes + 1, domain_length) * k * slice_width) * initial_sup_error;
}

// General parabolic operator: exp(-lambda_{m_G+1} k dT) * initial_sup_error.
inline double contraction_bound(double first_unresolved_rate, double slice_width, int k, double initial_sup_error) {
  if (k < 0) throw std::invalid_argument("iteration count must be nonnegative");
  return std::exp(-first_unresolved_rate * k * slice_width) * initial_sup_error;
}

struct FactorPoint {
  int m = 0;
  double slice_width = 0.0;
  double lambda = 0.0;
  double rho_no_coarse = 0.0;
  double rho_coarse = 0.0;

  bool coarse_free_wins() const { return rho_no_coarse < rho_coarse; }
};

struct FactorGrid {
  std::vector<int> modes;
  std::vector<double> slice_widths;
  std::vector<FactorPoint> points;  // m-major, slice width minor

  std::size_t coarse_free_wins() const {
    std::size_t c = 0;
    for (const auto& p : points) c += p.coarse_free_wins();
    return c;
  }
  std::size_t coarse_wins() const {
    std::size_t c = 0;
    for (const auto& p : points) c += p.rho_coarse < p.rho_no_coarse;
    return c;
  }
};

inline FactorGrid factor_grid(const std::vector<int>& modes, const std::vector<double>& slice_widths,
                              double domain_length = std::numbers::pi, const StabilityFunction& R = {}) {
  if (modes.empty() || slice_widths.empty()) throw std::invalid_argument("factor grid ranges must be nonempty");
  FactorGrid g{modes, slice_widths, {}};
  g.points.reserve(modes.size() * slice_widths.size());
  for (int m : modes) {
    const double lambda = mode_decay_rate(m, domain_length);
    for (double dT : slice_widths) {
      double rc = 0.0;
      // lambda = 0 leaves R(0) = 1; the with-coarse factor is then exact (0/0 limit of identical propagators).
      if (lambda > 0.0) rc = rho_with_coarse(lambda, dT, R);
      g.points.push_back(FactorPoint{m, dT, lambda, rho_no_coarse(lambda, dT), rc});
    }
  }
  return g;
}

}  // namespace pit
