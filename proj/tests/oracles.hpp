#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pit/core.hpp"
#include "pit/tridiagonal.hpp"

namespace pit::oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const TridiagonalSystem& s) {
  const std::size_t n = s.size();
  Dense a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = s.diag[i];
    if (i > 0) a[i][i - 1] = s.sub[i - 1];
    if (i + 1 < n) a[i][i + 1] = s.super[i];
  }
  return a;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular dense system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// Strictly diagonally dominant random tridiagonal system.
inline TridiagonalSystem random_dominant_system(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 2.0);
  std::bernoulli_distribution sign;
  TridiagonalSystem s{std::vector<double>(n ? n - 1 : 0), std::vector<double>(n), std::vector<double>(n ? n - 1 : 0)};
  for (auto& v : s.sub) v = off(rng);
  for (auto& v : s.super) v = off(rng);
  for (std::size_t i = 0; i < n; ++i) {
    double r = margin(rng);
    if (i > 0) r += std::abs(s.sub[i - 1]);
    if (i + 1 < n) r += std::abs(s.super[i]);
    s.diag[i] = sign(rng) ? r : -r;
  }
  return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// int_a^b c exp(-lambda (b - tau)) dtau
inline double constant_source_integral(double lambda, double c, double a, double b) {
  if (lambda == 0.0) return c * (b - a);
  return c * (1.0 - std::exp(-lambda * (b - a))) / lambda;
}

// Steps `model` from t = 0 with a fixed dt, monolithically (no slices),
// recording the state after every `record_every` steps.
template <typename Model>
std::vector<StateVector> monolithic_run(const Model& model, StateVector u, double dt, long total_steps,
                                        long record_every) {
  std::vector<StateVector> out{u};
  for (long i = 0; i < total_steps; ++i) {
    u = model.step(u, static_cast<double>(i) * dt, dt);
    if ((i + 1) % record_every == 0) out.push_back(u);
  }
  return out;
}

}  // namespace pit::oracle
