#pragma once

#include <cmath>
#include <stdexcept>

#include "pit/core.hpp"

namespace pit {

// Advances `state` from t_from to t_to with `steps` equal substeps. Substep
// start times are t_from + i * h, computed per index.
template <typename StepFn>
StateVector propagate_in_substeps(StepFn&& step, StateVector state, double t_from, double t_to, long steps) {
  if (!(t_to > t_from)) throw std::invalid_argument("propagation interval must have t_to > t_from");
  if (steps < 1) throw std::invalid_argument("steps_per_slice must be at least 1");
  const double h = (t_to - t_from) / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double t = t_from + static_cast<double>(i) * h;
    state = step(state, t, h);
  }
  return state;
}

// Number of substeps of size dt that tile a slice of width slice_width.
inline long steps_per_slice_for(double slice_width, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double ratio = slice_width / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("slice width " + std::to_string(slice_width) + " is not an integer multiple of dt " +
                      std::to_string(dt));
  return static_cast<long>(rounded);
}

}  // namespace pit
