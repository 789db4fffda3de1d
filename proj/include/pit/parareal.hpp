#pragma once

// Parareal driver:
//   U_{n+1}^{k+1} = F(U_n^k) + G(U_n^{k+1}) - G(U_n^k)
// and, with the coarse propagator removed, U_{n+1}^{k+1} = F(U_n^k).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pit/core.hpp"
#include "pit/parallel.hpp"

namespace pit {

template <typename M>
concept Propagator = requires(const M& m, const PropagatorSpec& spec, const StateVector& s, double t) {
  { m.propagate(spec, s, t, t) } -> std::same_as<StateVector>;
};

// Models that know the coarse-free contraction rate (the spectral model).
template <typename M>
concept HasContractionRate = requires(const M& m, const PropagatorSpec& spec) {
  { m.first_unresolved_decay_rate(spec) } -> std::convertible_to<double>;
};

enum class InitialGuess { automatic, zero, replicate_u0, coarse_sweep, random };

inline const char* to_string(InitialGuess g) {
  switch (g) {
    case InitialGuess::automatic: return "automatic";
    case InitialGuess::zero: return "zero";
    case InitialGuess::replicate_u0: return "replicate_u0";
    case InitialGuess::coarse_sweep: return "coarse_sweep";
    case InitialGuess::random: return "random";
  }
  return "?";
}

struct PararealConfig {
  TimePartition partition = make_uniform_partition(1.0, 1);
  PropagatorSpec fine = PropagatorSpec::fine_steps(1);
  PropagatorSpec coarse = PropagatorSpec::absent();
  StateVector initial_condition;
  int max_iterations = 10;
  InitialGuess initial_guess = InitialGuess::automatic;
  double tolerance = 1e-10;
  Execution execution = Execution::parallel;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  bool record_timing = false;

  // automatic: coarse sweep when a coarse propagator exists, u0 otherwise.
  InitialGuess resolved_guess() const {
    if (initial_guess != InitialGuess::automatic) return initial_guess;
    return coarse.present() ? InitialGuess::coarse_sweep : InitialGuess::replicate_u0;
  }

  void validate() const {
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
    if (fine.role != PropagatorRole::fine) throw ConfigError("fine propagator must have the fine role");
    if (coarse.role == PropagatorRole::fine) throw ConfigError("coarse propagator cannot have the fine role");
    if (resolved_guess() == InitialGuess::coarse_sweep && !coarse.present())
      throw ConfigError("coarse_sweep initial guess requires a coarse propagator");
    if (!partition.is_uniform()) throw ConfigError("parareal driver expects a uniform time partition");
    if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be nonnegative");
  }
};

struct PararealState {
  int iteration = 0;
  std::vector<StateVector> values;    // U_n^k, n = 0..N
  std::vector<StateVector> previous;  // U_n^{k-1}; empty before the first iteration
};

struct ReferenceSolution {
  std::vector<StateVector> values;
};

template <Propagator M>
ReferenceSolution reference_fine_sequential(const M& model, const PararealConfig& config) {
  const auto& p = config.partition;
  ReferenceSolution ref;
  ref.values.reserve(p.n_slices() + 1);
  ref.values.push_back(config.initial_condition);
  for (std::size_t n = 0; n < p.n_slices(); ++n)
    ref.values.push_back(model.propagate(config.fine, ref.values.back(), p[n], p[n + 1]));
  return ref;
}

template <Propagator M>
PararealState initialize_guess(const M& model, const PararealConfig& config) {
  config.validate();
  const auto& p = config.partition;
  const std::size_t N = p.n_slices();
  const StateVector& u0 = config.initial_condition;
  PararealState state;
  state.values.reserve(N + 1);
  state.values.push_back(u0);

  switch (config.resolved_guess()) {
    case InitialGuess::zero:
      for (std::size_t n = 1; n <= N; ++n) state.values.push_back(StateVector::zeros(u0.layout));
      break;
    case InitialGuess::replicate_u0:
      for (std::size_t n = 1; n <= N; ++n) state.values.push_back(u0);
      break;
    case InitialGuess::coarse_sweep:
      for (std::size_t n = 0; n < N; ++n)
        state.values.push_back(model.propagate(config.coarse, state.values.back(), p[n], p[n + 1]));
      break;
    case InitialGuess::random: {
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (std::size_t n = 1; n <= N; ++n) {
        StateVector s = u0;
        for (auto& v : s.values) v += dist(rng);
        state.values.push_back(std::move(s));
      }
      break;
    }
    case InitialGuess::automatic:
      break;
  }
  return state;
}

// One Parareal iteration. The fine solves (and the coarse solves on the old
// iterate) are independent across slices and run concurrently, each writing
// its own slot; the correction sweep is sequential in n.
template <Propagator M>
PararealState parareal_iterate(const M& model, const PararealState& state, const PararealConfig& config) {
  const auto& p = config.partition;
  const std::size_t N = p.n_slices();
  const bool with_coarse = config.coarse.present();

  std::vector<StateVector> fine(N);
  std::vector<StateVector> coarse_old(with_coarse ? N : 0);
  parallel_for(
      N,
      [&](std::size_t n) {
        fine[n] = model.propagate(config.fine, state.values[n], p[n], p[n + 1]);
        if (with_coarse) coarse_old[n] = model.propagate(config.coarse, state.values[n], p[n], p[n + 1]);
      },
      config.execution, config.threads);

  PararealState next;
  next.iteration = state.iteration + 1;
  next.previous = state.values;
  next.values.reserve(N + 1);
  next.values.push_back(config.initial_condition);
  for (std::size_t n = 0; n < N; ++n) {
    if (!with_coarse) {
      next.values.push_back(std::move(fine[n]));
      continue;
    }
    const StateVector coarse_new = model.propagate(config.coarse, next.values[n], p[n], p[n + 1]);
    next.values.push_back(fine[n] + (coarse_new - coarse_old[n]));
  }
  return next;
}

struct PararealResult {
  IterationTrace trace;
  ReferenceSolution reference;
  std::vector<PararealState> history;  // only filled when requested
};

template <Propagator M>
PararealResult run_parareal(const M& model, const PararealConfig& config, bool keep_history = false) {
  using clock = std::chrono::steady_clock;
  config.validate();
  const auto& p = config.partition;
  const std::size_t N = p.n_slices();
  const double slice = p.slice_width();

  PararealResult result;
  result.reference = reference_fine_sequential(model, config);
  auto& trace = result.trace;
  trace.metadata["initial_guess"] = to_string(config.resolved_guess());
  trace.metadata["coarse_role"] = to_string(config.coarse.role);
  trace.metadata["n_slices"] = std::to_string(N);
  trace.metadata["norm"] = "discrete_l2";
  trace.metadata["max_iterations"] = std::to_string(config.max_iterations);
  trace.metadata["error_reference"] = "sequential_fine";

  std::optional<double> rate;
  if constexpr (HasContractionRate<M>) rate = model.first_unresolved_decay_rate(config.coarse);

  double initial_sup = 0.0;
  auto record = [&](const PararealState& s, double wall_ms) {
    std::vector<double> errors(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
      errors[n] = discrete_l2_norm(s.values[n] - result.reference.values[n]);
      if (!std::isfinite(errors[n]))
        throw NumericalError("non-finite error at k=" + std::to_string(s.iteration) + ", n=" + std::to_string(n));
    }
    if (s.iteration == 0)
      for (double e : errors) initial_sup = std::max(initial_sup, e);
    for (std::size_t n = 0; n <= N; ++n) {
      TraceEntry e{s.iteration, n, errors[n], std::nullopt, config.record_timing ? wall_ms : 0.0};
      if (rate) e.bound = std::exp(-*rate * s.iteration * slice) * initial_sup;
      trace.entries.push_back(e);
    }
    return *std::max_element(errors.begin(), errors.end());
  };

  auto start = clock::now();
  PararealState state = initialize_guess(model, config);
  double sup = record(state, std::chrono::duration<double, std::milli>(clock::now() - start).count());
  if (keep_history) result.history.push_back(state);

  for (int k = 1; k <= config.max_iterations && sup > config.tolerance; ++k) {
    start = clock::now();
    state = parareal_iterate(model, state, config);
    sup = record(state, std::chrono::duration<double, std::milli>(clock::now() - start).count());
    if (keep_history) result.history.push_back(state);
  }
  return result;
}

template <Propagator M>
IterationTrace run(const M& model, const PararealConfig& config) {
  return run_parareal(model, config).trace;
}

}  // namespace pit
