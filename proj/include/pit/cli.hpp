#pragma once

// Command-line front end: run, factors, solution-field, presets.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pit/analysis.hpp"
#include "pit/experiment.hpp"

namespace pit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

inline std::pair<std::string, std::string> split_range(const std::string& field, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, text};
  if (text.find(':', colon + 1) != std::string::npos)
    throw ConfigError("field '" + field + "': expected LO:HI, got '" + text + "'");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

inline std::vector<int> parse_mode_range(const std::string& text) {
  const auto [lo, hi] = split_range("m-range", text);
  const long a = pit::detail::parse_long("m-range", lo);
  const long b = pit::detail::parse_long("m-range", hi);
  if (b < a) throw ConfigError("field 'm-range': empty range '" + text + "'");
  std::vector<int> m;
  for (long i = a; i <= b; ++i) m.push_back(static_cast<int>(i));
  return m;
}

// LO:HI stepping by factor 2, e.g. 1/64:2 gives 1/64, 1/32, ..., 2.
inline std::vector<double> parse_dt_range(const std::string& text) {
  const auto [lo, hi] = split_range("dt-range", text);
  const double a = pit::detail::parse_double("dt-range", lo);
  const double b = pit::detail::parse_double("dt-range", hi);
  if (!(a > 0.0) || b < a) throw ConfigError("field 'dt-range': empty or nonpositive range '" + text + "'");
  std::vector<double> dt;
  for (int i = 0;; ++i) {
    const double v = a * std::ldexp(1.0, i);
    if (v > b * (1.0 + 1e-12)) break;
    dt.push_back(v);
  }
  return dt;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("field 'out': cannot write '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

}  // namespace detail

inline void write_factor_grid(std::ostream& out, const FactorGrid& grid) {
  out << "m,dT,rho_nocoarse,rho_coarse\n";
  for (const auto& p : grid.points)
    out << p.m << ',' << pit::detail::format_double(p.slice_width) << ','
        << pit::detail::format_double(p.rho_no_coarse) << ',' << pit::detail::format_double(p.rho_coarse) << '\n';
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Parareal experiments with and without coarse propagator"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_path;
  bool no_coarse = false, sequential = false, timing = false;
  std::optional<int> iterations;
  std::optional<unsigned> threads;
  auto* run = app.add_subcommand("run", "Run Parareal and write an error trace (CSV)");
  run->add_option("--config", config_path, "INI configuration file");
  run->add_option("--preset", preset_name, "Named preset");
  run->add_option("--out", out_path, "Output path (default: config output.path, else stdout)");
  run->add_flag("--no-coarse", no_coarse, "Remove the coarse propagator");
  run->add_option("--iterations", iterations, "Maximum Parareal iterations");
  run->add_flag("--sequential", sequential, "Run the fine solves sequentially");
  run->add_option("--threads", threads, "Worker threads for the fine solves (0: hardware)");
  run->add_flag("--timing", timing, "Record wall time per iteration (trace is then not reproducible)");

  std::string m_range = "1:16", dt_range = "1/64:2", basis = "sine", length = "pi", factors_out;
  auto* factors = app.add_subcommand("factors", "Tabulate per-mode contraction factors (CSV)");
  factors->add_option("--m-range", m_range, "Mode range LO:HI")->capture_default_str();
  factors->add_option("--dt-range", dt_range, "Slice widths LO:HI, doubling")->capture_default_str();
  factors->add_option("--basis", basis, "sine or cosine")->capture_default_str();
  factors->add_option("--length", length, "Domain length (number or 'pi')")->capture_default_str();
  factors->add_option("--out", factors_out, "Output path (default stdout)");

  std::string field_preset, field_config, field_out;
  long stride = 0;
  auto* field = app.add_subcommand("solution-field", "Sequential fine solution u(x, t) as CSV");
  field->add_option("--preset", field_preset, "Named preset");
  field->add_option("--config", field_config, "INI configuration file");
  field->add_option("--out", field_out, "Output path (default stdout)");
  field->add_option("--stride", stride, "Fine steps between samples (0: about 96 samples)");

  auto* list = app.add_subcommand("presets", "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& [name, _] : presets()) out << name << '\n';
      return kExitOk;
    }

    if (*run) {
      if (config_path.empty() == preset_name.empty())
        throw ConfigError("field 'config': give exactly one of --config or --preset");
      ExperimentConfig cfg = config_path.empty() ? preset(preset_name) : load_config_file(config_path);
      if (no_coarse) cfg.coarse = false;
      if (iterations) cfg.iterations = *iterations;
      if (sequential) cfg.parallel = false;
      if (threads) cfg.threads = *threads;
      if (timing) cfg.timing = true;
      if (!out_path.empty()) cfg.output = out_path;
      const IterationTrace trace = run_experiment(cfg);
      detail::Output o(cfg.output, out);
      write_trace(o.get(), trace);
      return kExitOk;
    }

    if (*factors) {
      const auto modes = detail::parse_mode_range(m_range);
      const auto dts = detail::parse_dt_range(dt_range);
      const double L = length == "pi" ? std::numbers::pi : pit::detail::parse_double("length", length);
      if (!(L > 0.0)) throw ConfigError("field 'length': must be positive");
      if (basis != "sine" && basis != "cosine") throw ConfigError("field 'basis': expected sine or cosine");
      for (int m : modes) {
        if (m < 0) throw ConfigError("field 'm-range': modes must be nonnegative");
        if (m == 0 && basis == "sine") throw ConfigError("field 'm-range': the sine basis has no zero mode");
      }
      const FactorGrid grid = factor_grid(modes, dts, L);
      detail::Output o(factors_out, out);
      write_factor_grid(o.get(), grid);
      return kExitOk;
    }

    if (*field) {
      if (field_config.empty() == field_preset.empty())
        throw ConfigError("field 'preset': give exactly one of --preset or --config");
      const ExperimentConfig cfg = field_config.empty() ? preset(field_preset) : load_config_file(field_config);
      const SolutionField f = solution_field(cfg, stride);
      detail::Output o(field_out, out);
      write_solution_field(o.get(), f);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace pit::cli
