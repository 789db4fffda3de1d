#pragma once

// Heat equation in a sine (Dirichlet) or cosine (Neumann) eigenbasis with
// exact-in-time evolution of each mode:
//   u_m(t) = u_m(t0) exp(-lambda_m (t - t0)) + int_{t0}^{t} f_m(tau) exp(-lambda_m (t - tau)) dtau,
// lambda_m = (m pi / L)^2.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "pit/core.hpp"
#include "pit/quadrature.hpp"
#include "pit/source.hpp"

namespace pit {

struct ZeroForcing {};
struct ConstantForcing {
  double value = 0.0;
};
// coefficient * sum_j exp(-t_rate (t - t_j)^2)
struct PulsedForcing {
  double coefficient = 0.0;
  std::vector<double> pulse_times;
  double t_rate = 100.0;
};

using ModeForcing = std::variant<ZeroForcing, ConstantForcing, PulsedForcing>;

inline double evaluate(const ModeForcing& f, double t) {
  if (const auto* c = std::get_if<ConstantForcing>(&f)) return c->value;
  if (const auto* p = std::get_if<PulsedForcing>(&f)) {
    double s = 0.0;
    for (double tj : p->pulse_times) s += std::exp(-p->t_rate * (t - tj) * (t - tj));
    return p->coefficient * s;
  }
  return 0.0;
}

inline bool is_zero(const ModeForcing& f) {
  if (std::holds_alternative<ZeroForcing>(f)) return true;
  if (const auto* c = std::get_if<ConstantForcing>(&f)) return c->value == 0.0;
  return std::get<PulsedForcing>(f).coefficient == 0.0;
}

// int_{t_from}^{t_to} f(tau) exp(-lambda (t_to - tau)) dtau by composite
// 16-point Gauss-Legendre. Panel width is at most min(0.01, width/8) and
// at most 8/lambda so the kernel stays well resolved for fast modes.
inline double source_mode_integral(double lambda, const ModeForcing& f, double t_from, double t_to) {
  if (!(t_to > t_from)) throw std::invalid_argument("integration interval must have t_to > t_from");
  if (is_zero(f)) return 0.0;
  const double width = t_to - t_from;
  double h = std::min(0.01, width / 8.0);
  if (lambda > 0.0) h = std::min(h, 8.0 / lambda);
  const auto panels = static_cast<std::size_t>(std::ceil(width / h - 1e-12));
  return composite_gauss_legendre([&](double tau) { return evaluate(f, tau) * std::exp(-lambda * (t_to - tau)); },
                                  t_from, t_to, std::max<std::size_t>(panels, 1));
}

inline double exact_mode_solution(double lambda, double u0, const ModeForcing& f, double t) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return u0;
  return u0 * std::exp(-lambda * t) + source_mode_integral(lambda, f, 0.0, t);
}

class SpectralModel {
 public:
  SpectralModel(double domain_length, Basis basis, std::size_t n_modes, std::vector<ModeForcing> forcing = {})
      : length_(domain_length), basis_(basis), n_modes_(n_modes), forcing_(std::move(forcing)) {
    if (!(length_ > 0.0)) throw std::invalid_argument("domain length must be positive");
    if (n_modes_ == 0) throw std::invalid_argument("spectral model needs at least one mode");
    if (!forcing_.empty() && forcing_.size() != n_modes_)
      throw std::invalid_argument("mode forcing must be empty or one entry per mode");
  }

  double domain_length() const { return length_; }
  Basis basis() const { return basis_; }
  std::size_t n_modes() const { return n_modes_; }
  ModeLayout layout() const { return ModeLayout{n_modes_, basis_, length_}; }
  StateVector zero_state() const { return StateVector::zeros(layout()); }

  int mode_number(std::size_t index) const { return layout().mode_number(index); }

  double decay_rate_of_mode(int m) const {
    const double k = m * std::numbers::pi / length_;
    return k * k;
  }
  double decay_rate(std::size_t index) const { return decay_rate_of_mode(mode_number(index)); }

  const ModeForcing& forcing(std::size_t index) const {
    static const ModeForcing none = ZeroForcing{};
    return forcing_.empty() ? none : forcing_[index];
  }
  bool unforced() const {
    return std::all_of(forcing_.begin(), forcing_.end(), [](const ModeForcing& f) { return is_zero(f); });
  }

  StateVector from_coefficients(std::vector<double> coefficients) const {
    coefficients.resize(n_modes_, 0.0);
    return StateVector(layout(), std::move(coefficients));
  }

  // Keeps the first spec.mode_count basis functions, evolved exactly;
  // the rest are truncated to zero.
  StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t_from, double t_to) const {
    const auto* l = std::get_if<ModeLayout>(&state.layout);
    if (l == nullptr || !(*l == layout())) throw std::invalid_argument("state layout does not match spectral model");
    if (!(t_to > t_from)) throw std::invalid_argument("propagation interval must have t_to > t_from");
    const std::size_t kept = spec.present() ? spec.mode_count : 0;
    if (kept > n_modes_) throw std::invalid_argument("mode count exceeds the model's modes");
    if (spec.role == PropagatorRole::fine && kept == 0)
      throw std::invalid_argument("fine spectral propagator needs at least one mode");
    StateVector out = StateVector::zeros(state.layout);
    const double dt = t_to - t_from;
    for (std::size_t i = 0; i < kept; ++i) {
      const double lambda = decay_rate(i);
      out.values[i] = state.values[i] * std::exp(-lambda * dt) + source_mode_integral(lambda, forcing(i), t_from, t_to);
    }
    return out;
  }

  // Decay rate of the slowest mode a coarse propagator leaves out; the
  // coarse-free iteration contracts at exp(-rate * dT).
  double first_unresolved_decay_rate(const PropagatorSpec& coarse) const {
    const std::size_t kept = coarse.present() ? coarse.mode_count : 0;
    return decay_rate_of_mode(layout().mode_number(kept));
  }

 private:
  double length_;
  Basis basis_;
  std::size_t n_modes_;
  std::vector<ModeForcing> forcing_;
};

inline double parseval_norm(const StateVector& state, double domain_length) {
  const auto& l = std::get<ModeLayout>(state.layout);
  double sum = 0.0;
  for (std::size_t i = 0; i < state.values.size(); ++i) {
    const double w = l.mode_number(i) == 0 ? domain_length : 0.5 * domain_length;
    sum += w * state.values[i] * state.values[i];
  }
  return std::sqrt(sum);
}

namespace detail {

inline std::size_t grid_cells(const GridLayout& g) {
  switch (g.bc) {
    case BoundaryKind::dirichlet_zero: return g.n_points + 1;
    case BoundaryKind::neumann_zero: return g.n_points - 1;
    default: throw std::invalid_argument("mode transforms need a Dirichlet or Neumann grid");
  }
}

}  // namespace detail

// Discrete sine transform (Dirichlet grid, DST-I) or cosine transform with
// trapezoidal end weights (Neumann grid, DCT-I). Exact on band-limited
// grid functions.
inline StateVector project_to_modes(const StateVector& grid_state, std::size_t n_modes) {
  const auto* g = std::get_if<GridLayout>(&grid_state.layout);
  if (g == nullptr || g->components != 1) throw std::invalid_argument("projection needs a scalar grid state");
  const std::size_t n = detail::grid_cells(*g);
  const double length = static_cast<double>(n) * g->dx;
  const auto u = std::span<const double>(grid_state.values);
  const double nd = static_cast<double>(n);

  if (g->bc == BoundaryKind::dirichlet_zero) {
    if (n_modes > n - 1) throw std::invalid_argument("mode count exceeds the grid's Nyquist limit");
    std::vector<double> c(n_modes, 0.0);
    for (std::size_t i = 0; i < n_modes; ++i) {
      const double m = static_cast<double>(i + 1);
      double s = 0.0;
      for (std::size_t j = 1; j < n; ++j) s += u[j - 1] * std::sin(m * std::numbers::pi * static_cast<double>(j) / nd);
      c[i] = 2.0 * s / nd;
    }
    return StateVector(ModeLayout{n_modes, Basis::sine, length}, std::move(c));
  }

  if (n_modes > n + 1) throw std::invalid_argument("mode count exceeds the grid's Nyquist limit");
  std::vector<double> c(n_modes, 0.0);
  for (std::size_t m = 0; m < n_modes; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * u[j] * std::cos(static_cast<double>(m) * std::numbers::pi * static_cast<double>(j) / nd);
    }
    c[m] = (m == 0 || m == n ? 1.0 : 2.0) * s / nd;
  }
  return StateVector(ModeLayout{n_modes, Basis::cosine, length}, std::move(c));
}

inline StateVector reconstruct(const StateVector& modes, const GridLayout& grid) {
  const auto& l = std::get<ModeLayout>(modes.layout);
  const std::size_t n = detail::grid_cells(grid);
  const std::size_t offset = grid.bc == BoundaryKind::dirichlet_zero ? 1 : 0;
  const bool sine = grid.bc == BoundaryKind::dirichlet_zero;
  if ((l.basis == Basis::sine) != sine) throw std::invalid_argument("basis does not match grid boundary condition");
  std::vector<double> u(grid.n_points, 0.0);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = static_cast<double>(j + offset) / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < l.n_modes; ++i) {
      const double arg = l.mode_number(i) * std::numbers::pi * x;
      s += modes.values[i] * (sine ? std::sin(arg) : std::cos(arg));
    }
    u[j] = s;
  }
  return StateVector(grid, std::move(u));
}

// Projects the spatial profile of a pulsed source onto the first n_modes
// basis functions on (0, L); the time dependence is carried unchanged.
inline std::vector<ModeForcing> project_source(const GaussianPulseSource& src, double domain_length, Basis basis,
                                               std::size_t n_modes) {
  const ModeLayout l{n_modes, basis, domain_length};
  std::vector<ModeForcing> out;
  out.reserve(n_modes);
  for (std::size_t i = 0; i < n_modes; ++i) {
    const int m = l.mode_number(i);
    const double k = m * std::numbers::pi / domain_length;
    const double integral = composite_gauss_legendre(
        [&](double x) { return src.spatial(x) * (basis == Basis::sine ? std::sin(k * x) : std::cos(k * x)); }, 0.0,
        domain_length, 512);
    const double coefficient = (m == 0 ? 1.0 : 2.0) * integral / domain_length;
    out.emplace_back(PulsedForcing{coefficient, src.pulse_times, src.t_rate});
  }
  return out;
}

}  // namespace pit
