#pragma once

// One-dimensional heat equation u_t = u_xx + f on (0, 1), centered finite
// differences in space and Backward Euler in time.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pit/core.hpp"
#include "pit/source.hpp"
#include "pit/stepping.hpp"
#include "pit/tridiagonal.hpp"

namespace pit {

class HeatModel {
 public:
  HeatModel(std::size_t n_cells, BoundaryKind bc, SourceTerm source = ZeroSource{})
      : n_cells_(n_cells), bc_(bc), source_(std::move(source)) {
    if (n_cells_ < 2) throw std::invalid_argument("heat model needs at least 2 cells");
    if (bc_ != BoundaryKind::dirichlet_zero && bc_ != BoundaryKind::neumann_zero)
      throw std::invalid_argument("heat model supports Dirichlet or Neumann boundaries");
  }

  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return 1.0 / static_cast<double>(n_cells_); }
  BoundaryKind bc() const { return bc_; }
  const SourceTerm& source() const { return source_; }

  // Dirichlet keeps the n-1 interior points, Neumann all n+1 points.
  GridLayout layout() const {
    const std::size_t np = bc_ == BoundaryKind::dirichlet_zero ? n_cells_ - 1 : n_cells_ + 1;
    return GridLayout{np, dx(), bc_, 1};
  }

  std::vector<double> grid_points() const {
    const auto l = layout();
    const std::size_t offset = bc_ == BoundaryKind::dirichlet_zero ? 1 : 0;
    std::vector<double> x(l.n_points);
    for (std::size_t j = 0; j < l.n_points; ++j)
      x[j] = static_cast<double>(j + offset) / static_cast<double>(n_cells_);
    return x;
  }

  StateVector zero_state() const { return StateVector::zeros(layout()); }

  template <typename F>
  StateVector sample(F&& f) const {
    const auto x = grid_points();
    std::vector<double> v(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) v[j] = f(x[j]);
    return StateVector(layout(), std::move(v));
  }

  // Discrete Laplacian, stencil (1, -2, 1)/dx^2. The Neumann ends use the
  // ghost-point reflection u_{-1} = u_1, i.e. the row (-2, 2)/dx^2, which
  // keeps constants in the kernel.
  std::vector<double> apply_laplacian(std::span<const double> u) const {
    const std::size_t n = u.size();
    const double s = 1.0 / (dx() * dx());
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double left = j > 0 ? u[j - 1] : (bc_ == BoundaryKind::neumann_zero ? u[1] : 0.0);
      const double right = j + 1 < n ? u[j + 1] : (bc_ == BoundaryKind::neumann_zero ? u[n - 2] : 0.0);
      r[j] = s * (left - 2.0 * u[j] + right);
    }
    return r;
  }

  // I - dt * L
  TridiagonalSystem implicit_matrix(double dt) const {
    const std::size_t n = layout().n_points;
    const double r = dt / (dx() * dx());
    TridiagonalSystem sys{std::vector<double>(n - 1, -r), std::vector<double>(n, 1.0 + 2.0 * r),
                          std::vector<double>(n - 1, -r)};
    if (bc_ == BoundaryKind::neumann_zero) {
      sys.super.front() = -2.0 * r;
      sys.sub.back() = -2.0 * r;
    }
    return sys;
  }

  // Eigenvalue of -L for the sampled sin(m pi x) under Dirichlet conditions.
  double dirichlet_eigenvalue(int m) const {
    const double h = dx();
    return 2.0 / (h * h) * (1.0 - std::cos(m * std::numbers::pi * h));
  }

  // Solves (I - dt L) u_new = u + dt f(., t + dt).
  StateVector backward_euler_step(const StateVector& state, double t, double dt) const {
    check_layout(state);
    std::vector<double> rhs = state.values;
    if (!is_zero(source_)) {
      const auto f = sample_source(source_, grid_points(), t + dt);
      for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += dt * f[j];
    }
    return StateVector(state.layout, thomas_solve(implicit_matrix(dt), rhs));
  }

  StateVector step(const StateVector& state, double t, double dt) const { return backward_euler_step(state, t, dt); }

  StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t_from, double t_to) const {
    if (!spec.present()) throw std::invalid_argument("cannot propagate with an absent propagator");
    check_layout(state);
    return propagate_in_substeps(
        [this](const StateVector& s, double t, double h) { return backward_euler_step(s, t, h); }, state, t_from,
        t_to, spec.steps_per_slice);
  }

 private:
  void check_layout(const StateVector& s) const {
    const auto* g = std::get_if<GridLayout>(&s.layout);
    if (g == nullptr || !(*g == layout())) throw std::invalid_argument("state layout does not match heat model");
  }

  std::size_t n_cells_;
  BoundaryKind bc_;
  SourceTerm source_;
};

inline StateVector backward_euler_step(const HeatModel& model, const StateVector& state, double t, double dt) {
  return model.backward_euler_step(state, t, dt);
}

// Mean with trapezoidal end weights; this is the quantity the Neumann
// Laplacian conserves.
inline double trapezoidal_mean(std::span<const double> u) {
  if (u.size() < 2) throw std::invalid_argument("trapezoidal mean needs at least two points");
  double s = 0.5 * (u.front() + u.back());
  for (std::size_t j = 1; j + 1 < u.size(); ++j) s += u[j];
  return s / static_cast<double>(u.size() - 1);
}

}  // namespace pit
