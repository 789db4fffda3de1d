#pragma once

// Hyperbolic models on (0, 1): upwind advection u_t + a u_x = f with an
// inflow or periodic boundary, and the wave equation u_tt = u_xx as the
// first-order system (u, v = u_t) with Crank-Nicolson in time.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pit/core.hpp"
#include "pit/source.hpp"
#include "pit/stepping.hpp"
#include "pit/tridiagonal.hpp"

namespace pit {

class AdvectionModel {
 public:
  AdvectionModel(double speed, std::size_t n_cells, BoundaryKind bc, SourceTerm source = ZeroSource{})
      : speed_(speed), n_cells_(n_cells), bc_(bc), source_(std::move(source)) {
    if (!(speed_ > 0.0)) throw std::invalid_argument("advection speed must be positive");
    if (n_cells_ < 2) throw std::invalid_argument("advection model needs at least 2 cells");
    if (bc_ != BoundaryKind::periodic && bc_ != BoundaryKind::inflow_zero)
      throw std::invalid_argument("advection model supports periodic or inflow boundaries");
  }

  double speed() const { return speed_; }
  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return 1.0 / static_cast<double>(n_cells_); }
  BoundaryKind bc() const { return bc_; }
  const SourceTerm& source() const { return source_; }

  GridLayout layout() const { return GridLayout{n_cells_, dx(), bc_, 1}; }
  StateVector zero_state() const { return StateVector::zeros(layout()); }

  // Periodic: x_j = j dx, j = 0..n-1 (x = 1 wraps to 0).
  // Inflow: x_j = (j + 1) dx; the inflow point x = 0 is held at zero.
  std::vector<double> grid_points() const {
    const std::size_t offset = bc_ == BoundaryKind::inflow_zero ? 1 : 0;
    std::vector<double> x(n_cells_);
    for (std::size_t j = 0; j < n_cells_; ++j) x[j] = static_cast<double>(j + offset) * dx();
    return x;
  }

  template <typename F>
  StateVector sample(F&& f) const {
    const auto x = grid_points();
    std::vector<double> v(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) v[j] = f(x[j]);
    return StateVector(layout(), std::move(v));
  }

  double courant_number(double dt) const { return speed_ * dt / dx(); }

  // u_j <- (1 - nu) u_j + nu u_{j-1} + dt f(x_j, t)
  StateVector step(const StateVector& state, double t, double dt) const {
    check_layout(state);
    const double nu = courant_number(dt);
    if (nu > 1.0 + 1e-12)
      throw ConfigError("upwind step violates CFL: nu = " + std::to_string(nu) + " > 1");
    const auto& u = state.values;
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double upstream = j > 0 ? u[j - 1] : (bc_ == BoundaryKind::periodic ? u[n - 1] : 0.0);
      out[j] = (1.0 - nu) * u[j] + nu * upstream;
    }
    if (!is_zero(source_)) {
      const auto f = sample_source(source_, grid_points(), t);
      for (std::size_t j = 0; j < n; ++j) out[j] += dt * f[j];
    }
    return StateVector(state.layout, std::move(out));
  }

  StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t_from, double t_to) const {
    if (!spec.present()) throw std::invalid_argument("cannot propagate with an absent propagator");
    check_layout(state);
    return propagate_in_substeps([this](const StateVector& s, double t, double h) { return step(s, t, h); }, state,
                                 t_from, t_to, spec.steps_per_slice);
  }

 private:
  void check_layout(const StateVector& s) const {
    const auto* g = std::get_if<GridLayout>(&s.layout);
    if (g == nullptr || !(*g == layout())) throw std::invalid_argument("state layout does not match advection model");
  }

  double speed_;
  std::size_t n_cells_;
  BoundaryKind bc_;
  SourceTerm source_;
};

inline StateVector advection_step(const AdvectionModel& model, const StateVector& state, double t, double dt) {
  return model.step(state, t, dt);
}

class WaveModel {
 public:
  explicit WaveModel(std::size_t n_cells, SourceTerm source = ZeroSource{})
      : n_cells_(n_cells), source_(std::move(source)) {
    if (n_cells_ < 2) throw std::invalid_argument("wave model needs at least 2 cells");
  }

  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return 1.0 / static_cast<double>(n_cells_); }
  const SourceTerm& source() const { return source_; }

  // Interior points only; u occupies the first half of the values, v the second.
  GridLayout layout() const { return GridLayout{n_cells_ - 1, dx(), BoundaryKind::dirichlet_zero, 2}; }
  StateVector zero_state() const { return StateVector::zeros(layout()); }

  std::vector<double> grid_points() const {
    std::vector<double> x(n_cells_ - 1);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<double>(j + 1) * dx();
    return x;
  }

  template <typename U, typename V>
  StateVector sample(U&& u0, V&& v0) const {
    const auto x = grid_points();
    std::vector<double> w(2 * x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      w[j] = u0(x[j]);
      w[x.size() + j] = v0(x[j]);
    }
    return StateVector(layout(), std::move(w));
  }

  std::vector<double> apply_laplacian(std::span<const double> u) const {
    const std::size_t n = u.size();
    const double s = 1.0 / (dx() * dx());
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double left = j > 0 ? u[j - 1] : 0.0;
      const double right = j + 1 < n ? u[j + 1] : 0.0;
      r[j] = s * (left - 2.0 * u[j] + right);
    }
    return r;
  }

  // E = dx (sum v^2 + sum ((u_{j+1} - u_j)/dx)^2), boundary values zero.
  double energy(const StateVector& state) const {
    check_layout(state);
    const std::size_t n = n_cells_ - 1;
    const auto u = std::span<const double>(state.values).first(n);
    const auto v = std::span<const double>(state.values).subspan(n);
    double kinetic = 0.0, potential = 0.0;
    for (double x : v) kinetic += x * x;
    for (std::size_t j = 0; j <= n; ++j) {
      const double right = j < n ? u[j] : 0.0;
      const double left = j > 0 ? u[j - 1] : 0.0;
      const double d = (right - left) / dx();
      potential += d * d;
    }
    return dx() * (kinetic + potential);
  }

  // Trapezoidal rule on u' = v, v' = L u + f, with u eliminated:
  //   (I - dt^2/4 L) v+ = v + dt L u + dt^2/4 L v + dt/2 (f(t) + f(t+dt))
  //   u+ = u + dt/2 (v + v+)
  StateVector step(const StateVector& state, double t, double dt) const {
    check_layout(state);
    const std::size_t n = n_cells_ - 1;
    const auto u = std::span<const double>(state.values).first(n);
    const auto v = std::span<const double>(state.values).subspan(n);
    const auto Lu = apply_laplacian(u);
    const auto Lv = apply_laplacian(v);
    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = v[j] + dt * Lu[j] + 0.25 * dt * dt * Lv[j];
    if (!is_zero(source_)) {
      const auto x = grid_points();
      const auto f0 = sample_source(source_, x, t);
      const auto f1 = sample_source(source_, x, t + dt);
      for (std::size_t j = 0; j < n; ++j) rhs[j] += 0.5 * dt * (f0[j] + f1[j]);
    }
    const double r = 0.25 * dt * dt / (dx() * dx());
    const TridiagonalSystem sys{std::vector<double>(n - 1, -r), std::vector<double>(n, 1.0 + 2.0 * r),
                                std::vector<double>(n - 1, -r)};
    const auto v_new = thomas_solve(sys, rhs);
    std::vector<double> out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = u[j] + 0.5 * dt * (v[j] + v_new[j]);
      out[n + j] = v_new[j];
    }
    return StateVector(state.layout, std::move(out));
  }

  StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t_from, double t_to) const {
    if (!spec.present()) throw std::invalid_argument("cannot propagate with an absent propagator");
    check_layout(state);
    return propagate_in_substeps([this](const StateVector& s, double t, double h) { return step(s, t, h); }, state,
                                 t_from, t_to, spec.steps_per_slice);
  }

 private:
  void check_layout(const StateVector& s) const {
    const auto* g = std::get_if<GridLayout>(&s.layout);
    if (g == nullptr || !(*g == layout())) throw std::invalid_argument("state layout does not match wave model");
  }

  std::size_t n_cells_;
  SourceTerm source_;
};

inline StateVector wave_step(const WaveModel& model, const StateVector& state, double t, double dt) {
  return model.step(state, t, dt);
}

}  // namespace pit
