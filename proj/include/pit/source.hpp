#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

namespace pit {

struct ZeroSource {};

// amplitude * exp(-x_rate (x - x_center)^2) * sum_j exp(-t_rate (t - t_j)^2):
// a heater switched on around each pulse time.
struct GaussianPulseSource {
  double amplitude = 10.0;
  double x_center = 0.5;
  double x_rate = 100.0;
  std::vector<double> pulse_times{0.1, 0.6, 1.35, 1.85};
  double t_rate = 100.0;

  double spatial(double x) const {
    const double d = x - x_center;
    return amplitude * std::exp(-x_rate * d * d);
  }
  double temporal(double t) const {
    double s = 0.0;
    for (double tj : pulse_times) s += std::exp(-t_rate * (t - tj) * (t - tj));
    return s;
  }
  double operator()(double x, double t) const { return spatial(x) * temporal(t); }
};

// Time-independent sum_m a_m sin(m pi x / L), m = 1..size.
struct SineModesSource {
  std::vector<double> amplitudes;
  double domain_length = 1.0;

  double operator()(double x, double) const {
    double s = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
      s += amplitudes[i] * std::sin(static_cast<double>(i + 1) * std::numbers::pi * x / domain_length);
    return s;
  }
};

using SourceTerm = std::variant<ZeroSource, GaussianPulseSource, SineModesSource>;

inline GaussianPulseSource heater_source() { return GaussianPulseSource{}; }

inline bool is_zero(const SourceTerm& s) { return std::holds_alternative<ZeroSource>(s); }

inline double evaluate(const SourceTerm& s, double x, double t) {
  return std::visit(
      [&](const auto& src) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(src)>, ZeroSource>)
          return 0.0;
        else
          return src(x, t);
      },
      s);
}

inline std::vector<double> sample_source(const SourceTerm& s, std::span<const double> x, double t) {
  std::vector<double> out(x.size(), 0.0);
  if (is_zero(s)) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = evaluate(s, x[i], t);
  return out;
}

}  // namespace pit
