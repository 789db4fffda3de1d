#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pit/heat.hpp"

using namespace pit;

TEST(Thomas, IdentitySystemReturnsRhs) {
  const TridiagonalSystem id{{0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}};
  const std::vector<double> r{3.0, -1.0, 2.5};
  EXPECT_EQ(thomas_solve(id, r), r);
}

TEST(Thomas, SecondDifferenceMatrix) {
  const TridiagonalSystem s{{-1.0, -1.0}, {2.0, 2.0, 2.0}, {-1.0, -1.0}};
  const std::vector<double> rhs{1.0, 0.0, 0.0};
  const auto x = thomas_solve(s, rhs);
  const std::vector<double> expected{0.75, 0.5, 0.25};
  EXPECT_LE(oracle::max_abs_diff(x, expected), 1e-15);
  EXPECT_LE(oracle::max_abs_diff(s.apply(x), rhs), 1e-15);
}

TEST(Thomas, MatchesDenseSolverOnRandomDominantSystems) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sys = oracle::random_dominant_system(50, rng);
    std::vector<double> rhs(50);
    for (auto& v : rhs) v = d(rng);
    const auto x = thomas_solve(sys, rhs);
    const auto ref = oracle::dense_solve(oracle::to_dense(sys), rhs);
    EXPECT_LE(oracle::max_abs_diff(x, ref), 1e-12);
    const double resid = oracle::max_abs_diff(sys.apply(x), rhs);
    EXPECT_LE(resid, 1e-12 * (oracle::max_abs(rhs) + oracle::max_abs(x)));
  }
}

TEST(Thomas, ZeroPivotIsSingular) {
  const TridiagonalSystem s{{1.0}, {0.0, 1.0}, {1.0}};
  EXPECT_THROW(thomas_solve(s, std::vector<double>{1.0, 1.0}), SingularSystemError);
  const TridiagonalSystem t{{1.0}, {1.0, 1.0}, {1.0}};  // second pivot 1 - 1 = 0
  EXPECT_THROW(thomas_solve(t, std::vector<double>{1.0, 1.0}), SingularSystemError);
}

TEST(Thomas, SizeMismatchRejected) {
  const TridiagonalSystem s{{1.0}, {2.0, 2.0}, {1.0}};
  EXPECT_THROW(thomas_solve(s, std::vector<double>{1.0}), std::invalid_argument);
  const TridiagonalSystem bad{{1.0, 1.0}, {2.0, 2.0}, {1.0}};
  EXPECT_THROW(thomas_solve(bad, std::vector<double>{1.0, 1.0}), std::invalid_argument);
}

TEST(HeatModel, LayoutsStoreUnknownsOnly) {
  const HeatModel d(128, BoundaryKind::dirichlet_zero);
  const HeatModel n(128, BoundaryKind::neumann_zero);
  EXPECT_EQ(d.layout().n_points, 127u);
  EXPECT_EQ(n.layout().n_points, 129u);
  EXPECT_DOUBLE_EQ(d.grid_points().front(), 1.0 / 128.0);
  EXPECT_DOUBLE_EQ(n.grid_points().back(), 1.0);
  EXPECT_THROW(HeatModel(1, BoundaryKind::dirichlet_zero), std::invalid_argument);
  EXPECT_THROW(HeatModel(8, BoundaryKind::periodic), std::invalid_argument);
}

TEST(HeatModel, ImplicitMatrixMatchesLaplacian) {
  for (auto bc : {BoundaryKind::dirichlet_zero, BoundaryKind::neumann_zero}) {
    const HeatModel m(16, bc);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> u(m.layout().n_points);
    for (auto& v : u) v = d(rng);
    const double dt = 0.01;
    const auto Au = m.implicit_matrix(dt).apply(u);
    const auto Lu = m.apply_laplacian(u);
    for (std::size_t j = 0; j < u.size(); ++j) EXPECT_NEAR(Au[j], u[j] - dt * Lu[j], 1e-12);
  }
}

TEST(BackwardEuler, ZeroStaysZero) {
  const HeatModel m(32, BoundaryKind::dirichlet_zero);
  const auto s = m.backward_euler_step(m.zero_state(), 0.0, 0.1);
  EXPECT_EQ(oracle::max_abs(s.values), 0.0);
}

TEST(BackwardEuler, DirichletSineModesAreEigenvectors) {
  const HeatModel m(128, BoundaryKind::dirichlet_zero);
  const double dt = 1.0 / 96.0;
  for (int mode = 1; mode <= 5; ++mode) {
    const auto u = m.sample([mode](double x) { return std::sin(mode * std::numbers::pi * x); });
    const auto v = backward_euler_step(m, u, 0.0, dt);
    const double factor = 1.0 / (1.0 + dt * m.dirichlet_eigenvalue(mode));
    for (std::size_t j = 0; j < u.size(); ++j)
      EXPECT_LE(std::abs(v.values[j] - factor * u.values[j]), 1e-12 * factor);
  }
}

TEST(BackwardEuler, DirichletStepAgreesWithDenseSolve) {
  const HeatModel m(16, BoundaryKind::dirichlet_zero, heater_source());
  const auto u = m.sample([](double x) { return x * (1.0 - x); });
  const double t = 0.05, dt = 0.02;
  const auto v = m.backward_euler_step(u, t, dt);
  auto rhs = u.values;
  const auto x = m.grid_points();
  for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += dt * heater_source()(x[j], t + dt);
  const auto ref = oracle::dense_solve(oracle::to_dense(m.implicit_matrix(dt)), rhs);
  EXPECT_LE(oracle::max_abs_diff(v.values, ref), 1e-13);
}

TEST(BackwardEuler, NeumannPreservesConstants) {
  const HeatModel m(128, BoundaryKind::neumann_zero);
  const auto u = m.sample([](double) { return 2.5; });
  const auto v = m.backward_euler_step(u, 0.0, 0.5);
  for (double x : v.values) EXPECT_NEAR(x, 2.5, 1e-13);
}

TEST(BackwardEuler, DirichletContractsInL2) {
  const HeatModel m(64, BoundaryKind::dirichlet_zero);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double dt : {1e-4, 1.0 / 96.0, 0.5}) {
    for (int trial = 0; trial < 20; ++trial) {
      StateVector u = m.zero_state();
      for (auto& v : u.values) v = d(rng);
      const auto w = m.backward_euler_step(u, 0.0, dt);
      const double bound = 1.0 / (1.0 + dt * m.dirichlet_eigenvalue(1));
      EXPECT_LE(discrete_l2_norm(w) / discrete_l2_norm(u), bound + 1e-12);
    }
  }
}

TEST(BackwardEuler, NeumannConservesTrapezoidalMean) {
  const HeatModel m(128, BoundaryKind::neumann_zero);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  StateVector u = m.zero_state();
  for (auto& v : u.values) v = d(rng);
  const double mean0 = trapezoidal_mean(u.values);
  for (int i = 0; i < 50; ++i) u = m.backward_euler_step(u, 0.0, 1.0 / 96.0);
  EXPECT_LE(std::abs(trapezoidal_mean(u.values) - mean0), 1e-13 * std::abs(mean0));
}

TEST(BackwardEuler, LayoutMismatchRejected) {
  const HeatModel d(16, BoundaryKind::dirichlet_zero);
  const HeatModel n(16, BoundaryKind::neumann_zero);
  EXPECT_THROW(d.backward_euler_step(n.zero_state(), 0.0, 0.1), std::invalid_argument);
}

TEST(HeatPropagate, FineSliceUsesSixSubsteps) {
  EXPECT_EQ(steps_per_slice_for(3.0 / 48.0, 1.0 / 96.0), 6);
  EXPECT_EQ(steps_per_slice_for(0.5, 1.0 / 96.0), 48);
  EXPECT_THROW(steps_per_slice_for(0.3, 1.0 / 96.0), ConfigError);
}

TEST(HeatPropagate, FineMatchesExplicitSubsteps) {
  const HeatModel m(128, BoundaryKind::dirichlet_zero, heater_source());
  const auto u0 = m.sample([](double x) { return std::sin(std::numbers::pi * x); });
  const double dt = 1.0 / 96.0;
  StateVector ref = u0;
  for (int i = 0; i < 6; ++i) ref = m.backward_euler_step(ref, static_cast<double>(i) * dt, dt);
  const auto got = m.propagate(PropagatorSpec::fine_steps(6), u0, 0.0, 0.0625);
  EXPECT_LE(oracle::max_abs_diff(got.values, ref.values), 1e-14);
}

TEST(HeatPropagate, CoarseIsOneBigStep) {
  const HeatModel m(128, BoundaryKind::dirichlet_zero, heater_source());
  const auto u0 = m.sample([](double x) { return x * (1.0 - x); });
  const auto a = m.propagate(PropagatorSpec::coarse_steps(1), u0, 0.5, 1.0);
  const auto b = m.backward_euler_step(u0, 0.5, 0.5);
  EXPECT_EQ(a.values, b.values);
}

TEST(HeatPropagate, ConsecutiveSlicesComposeWithMatchingSubsteps) {
  const HeatModel m(64, BoundaryKind::neumann_zero, heater_source());
  const auto u0 = m.sample([](double x) { return std::cos(std::numbers::pi * x); });
  const auto two = m.propagate(PropagatorSpec::fine_steps(6),
                               m.propagate(PropagatorSpec::fine_steps(6), u0, 0.0, 0.0625), 0.0625, 0.125);
  const auto one = m.propagate(PropagatorSpec::fine_steps(12), u0, 0.0, 0.125);
  EXPECT_LE(oracle::max_abs_diff(one.values, two.values), 1e-13);
}

TEST(HeatPropagate, RejectsBadIntervalsAndAbsentSpec) {
  const HeatModel m(16, BoundaryKind::dirichlet_zero);
  EXPECT_THROW(m.propagate(PropagatorSpec::fine_steps(1), m.zero_state(), 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(m.propagate(PropagatorSpec::fine_steps(0), m.zero_state(), 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(m.propagate(PropagatorSpec::absent(), m.zero_state(), 0.0, 1.0), std::invalid_argument);
}

TEST(SampleSource, ZeroKind) {
  const std::vector<double> x{0.1, 0.5, 0.9};
  EXPECT_EQ(sample_source(ZeroSource{}, x, 0.3), std::vector<double>(3, 0.0));
}

TEST(SampleSource, HeaterPeakAtFirstPulse) {
  const std::vector<double> x{0.5};
  const auto f = sample_source(heater_source(), x, 0.1);
  EXPECT_NEAR(f[0], 10.00000000013888, 1e-12);
}

TEST(SampleSource, HeaterOffAtFinalTime) {
  const HeatModel m(128, BoundaryKind::neumann_zero);
  const auto f = sample_source(heater_source(), m.grid_points(), 3.0);
  EXPECT_LE(oracle::max_abs(f), 10.0 * 4.0 * std::exp(-100.0 * 1.15 * 1.15));
  EXPECT_LT(oracle::max_abs(f), 1e-55);
}

TEST(SampleSource, SineModesSource) {
  const SineModesSource s{{0.0, 2.0}, 1.0};
  EXPECT_NEAR(evaluate(SourceTerm{s}, 0.25, 0.0), 2.0, 1e-15);
}
