#pragma once

// Experiment configuration, named presets, trace files and solution fields
// for the command-line runner.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pit/core.hpp"
#include "pit/heat.hpp"
#include "pit/hyperbolic.hpp"
#include "pit/parareal.hpp"
#include "pit/spectral.hpp"

namespace pit {

enum class ModelKind { heat, spectral, advection, wave };

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::heat: return "heat";
    case ModelKind::spectral: return "spectral";
    case ModelKind::advection: return "advection";
    case ModelKind::wave: return "wave";
  }
  return "?";
}

// Flat description of one experiment. Every field defaults to the heat
// equation setup with dx = 1/128, dt = 1/96, T = 3.
struct ExperimentConfig {
  std::string preset = "heat-dirichlet-N6";

  // [model]
  ModelKind model = ModelKind::heat;
  BoundaryKind bc = BoundaryKind::dirichlet_zero;
  std::size_t n_cells = 128;
  std::string source = "heater";  // heater | zero
  double speed = 1.0;
  double fine_dt = 1.0 / 96.0;
  double coarse_dt = 0.0;  // 0: one step per slice
  double domain_length = std::numbers::pi;
  Basis basis = Basis::sine;
  std::size_t fine_modes = 64;
  std::size_t coarse_modes = 0;

  // [initial]
  std::string initial = "zero";  // zero | modes | bump | standing_wave | periodic_wave
  std::vector<double> initial_modes;

  // [partition]
  double t_end = 3.0;
  long n_slices = 6;

  // [parareal]
  bool coarse = true;
  int iterations = 6;
  InitialGuess initial_guess = InitialGuess::automatic;
  double tolerance = 1e-10;
  bool parallel = true;
  unsigned threads = 0;
  std::uint64_t seed = 0;

  // [output]
  std::string output;
  bool timing = false;

  // Sets "section.key" from text; throws ConfigError naming the field.
  void set(const std::string& key, const std::string& value);

  // key = value pairs in a fixed order, used for the trace header.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& key, const std::string& text) {
  std::string t = text;
  // Accept simple fractions such as 1/96.
  if (auto slash = t.find('/'); slash != std::string::npos) {
    const double num = parse_double(key, t.substr(0, slash));
    const double den = parse_double(key, t.substr(slash + 1));
    if (den == 0.0) throw ConfigError("field '" + key + "': division by zero in '" + text + "'");
    return num / den;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos != t.size()) throw std::invalid_argument(t);
    if (!std::isfinite(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected a number, got '" + text + "'");
  }
}

inline long parse_long(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected an integer, got '" + text + "'");
  }
}

inline std::size_t parse_count(const std::string& key, const std::string& text) {
  const long v = parse_long(key, text);
  if (v < 0) throw ConfigError("field '" + key + "': must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "off" || text == "no" || text == "0") return false;
  throw ConfigError("field '" + key + "': expected true/false, got '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(parse_double(key, item.substr(b, e - b + 1)));
  }
  return out;
}

template <typename Enum>
Enum parse_enum(const std::string& key, const std::string& text, const std::map<std::string, Enum>& options) {
  if (auto it = options.find(text); it != options.end()) return it->second;
  std::string names;
  for (const auto& [name, _] : options) names += (names.empty() ? "" : ", ") + name;
  throw ConfigError("field '" + key + "': unknown value '" + text + "' (expected one of " + names + ")");
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + format_double(x);
  return s;
}

}  // namespace detail

inline void ExperimentConfig::set(const std::string& key, const std::string& value) {
  using namespace detail;
  static const std::map<std::string, std::function<void(ExperimentConfig&, const std::string&, const std::string&)>>
      setters = {
          {"experiment.preset", [](auto& c, auto&, auto& v) { c.preset = v; }},
          {"model.kind",
           [](auto& c, auto& k, auto& v) {
             c.model = parse_enum<ModelKind>(k, v,
                                             {{"heat", ModelKind::heat},
                                              {"spectral", ModelKind::spectral},
                                              {"advection", ModelKind::advection},
                                              {"wave", ModelKind::wave}});
           }},
          {"model.bc",
           [](auto& c, auto& k, auto& v) {
             c.bc = parse_enum<BoundaryKind>(k, v,
                                             {{"dirichlet", BoundaryKind::dirichlet_zero},
                                              {"neumann", BoundaryKind::neumann_zero},
                                              {"periodic", BoundaryKind::periodic},
                                              {"inflow", BoundaryKind::inflow_zero}});
           }},
          {"model.n_cells", [](auto& c, auto& k, auto& v) { c.n_cells = parse_count(k, v); }},
          {"model.source",
           [](auto& c, auto& k, auto& v) {
             if (v != "heater" && v != "zero") throw ConfigError("field '" + k + "': expected heater or zero");
             c.source = v;
           }},
          {"model.speed", [](auto& c, auto& k, auto& v) { c.speed = parse_double(k, v); }},
          {"model.fine_dt", [](auto& c, auto& k, auto& v) { c.fine_dt = parse_double(k, v); }},
          {"model.coarse_dt", [](auto& c, auto& k, auto& v) { c.coarse_dt = parse_double(k, v); }},
          {"model.domain_length",
           [](auto& c, auto& k, auto& v) { c.domain_length = v == "pi" ? std::numbers::pi : parse_double(k, v); }},
          {"model.basis",
           [](auto& c, auto& k, auto& v) {
             c.basis = parse_enum<Basis>(k, v, {{"sine", Basis::sine}, {"cosine", Basis::cosine}});
           }},
          {"model.fine_modes", [](auto& c, auto& k, auto& v) { c.fine_modes = parse_count(k, v); }},
          {"model.coarse_modes", [](auto& c, auto& k, auto& v) { c.coarse_modes = parse_count(k, v); }},
          {"initial.kind",
           [](auto& c, auto& k, auto& v) {
             if (v != "zero" && v != "modes" && v != "bump" && v != "standing_wave" && v != "periodic_wave")
               throw ConfigError("field '" + k + "': expected zero, modes, bump, standing_wave or periodic_wave");
             c.initial = v;
           }},
          {"initial.modes", [](auto& c, auto& k, auto& v) { c.initial_modes = parse_list(k, v); }},
          {"partition.t_end", [](auto& c, auto& k, auto& v) { c.t_end = parse_double(k, v); }},
          {"partition.n_slices", [](auto& c, auto& k, auto& v) { c.n_slices = parse_long(k, v); }},
          {"parareal.coarse", [](auto& c, auto& k, auto& v) { c.coarse = parse_bool(k, v); }},
          {"parareal.iterations",
           [](auto& c, auto& k, auto& v) { c.iterations = static_cast<int>(parse_long(k, v)); }},
          {"parareal.initial_guess",
           [](auto& c, auto& k, auto& v) {
             c.initial_guess = parse_enum<InitialGuess>(k, v,
                                                        {{"automatic", InitialGuess::automatic},
                                                         {"zero", InitialGuess::zero},
                                                         {"replicate_u0", InitialGuess::replicate_u0},
                                                         {"coarse_sweep", InitialGuess::coarse_sweep},
                                                         {"random", InitialGuess::random}});
           }},
          {"parareal.tolerance", [](auto& c, auto& k, auto& v) { c.tolerance = parse_double(k, v); }},
          {"parareal.parallel", [](auto& c, auto& k, auto& v) { c.parallel = parse_bool(k, v); }},
          {"parareal.threads",
           [](auto& c, auto& k, auto& v) { c.threads = static_cast<unsigned>(parse_count(k, v)); }},
          {"parareal.seed",
           [](auto& c, auto& k, auto& v) { c.seed = static_cast<std::uint64_t>(parse_count(k, v)); }},
          {"output.path", [](auto& c, auto&, auto& v) { c.output = v; }},
          {"output.timing", [](auto& c, auto& k, auto& v) { c.timing = parse_bool(k, v); }},
      };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("field '" + key + "': unknown configuration key");
  it->second(*this, key, value);
}

inline std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  using detail::format_double;
  std::vector<std::pair<std::string, std::string>> e = {
      {"experiment.preset", preset},
      {"model.kind", to_string(model)},
      {"model.bc", to_string(bc)},
  };
  if (model == ModelKind::spectral) {
    e.insert(e.end(), {{"model.domain_length", format_double(domain_length)},
                       {"model.basis", to_string(basis)},
                       {"model.fine_modes", std::to_string(fine_modes)},
                       {"model.coarse_modes", std::to_string(coarse_modes)}});
  } else {
    e.insert(e.end(), {{"model.n_cells", std::to_string(n_cells)},
                       {"model.fine_dt", format_double(fine_dt)},
                       {"model.coarse_dt", format_double(coarse_dt)}});
  }
  if (model == ModelKind::advection) e.emplace_back("model.speed", format_double(speed));
  e.emplace_back("model.source", source);
  e.emplace_back("initial.kind", initial);
  if (initial == "modes") e.emplace_back("initial.modes", detail::join(initial_modes));
  e.insert(e.end(), {{"partition.t_end", format_double(t_end)},
                     {"partition.n_slices", std::to_string(n_slices)},
                     {"parareal.coarse", coarse ? "true" : "false"},
                     {"parareal.iterations", std::to_string(iterations)},
                     {"parareal.initial_guess", to_string(initial_guess)},
                     {"parareal.tolerance", format_double(tolerance)},
                     {"parareal.seed", std::to_string(seed)},
                     {"output.timing", timing ? "true" : "false"}});
  return e;
}

// ---------------------------------------------------------------------------
// Presets

inline std::map<std::string, ExperimentConfig> make_presets() {
  std::map<std::string, ExperimentConfig> p;

  for (const long N : {48L, 24L, 12L, 6L}) {
    for (const auto bc : {BoundaryKind::dirichlet_zero, BoundaryKind::neumann_zero}) {
      ExperimentConfig c;
      c.model = ModelKind::heat;
      c.bc = bc;
      c.n_slices = N;
      c.iterations = static_cast<int>(N);
      c.preset = std::string("heat-") + to_string(bc) + "-N" + std::to_string(N);
      p[c.preset] = c;
    }
  }
  for (const auto bc : {BoundaryKind::dirichlet_zero, BoundaryKind::neumann_zero}) {
    ExperimentConfig c = p[std::string("heat-") + to_string(bc) + "-N12"];
    c.preset = std::string("heat-") + to_string(bc);
    p[c.preset] = c;
  }

  {
    ExperimentConfig c;
    c.preset = "spectral-theorem";
    c.model = ModelKind::spectral;
    c.domain_length = std::numbers::pi;
    c.basis = Basis::sine;
    c.fine_modes = 64;
    c.coarse_modes = 0;
    c.coarse = false;
    c.source = "zero";
    c.initial = "modes";
    c.initial_modes = {1.0};
    c.t_end = 3.0;
    c.n_slices = 6;
    c.iterations = 5;
    c.initial_guess = InitialGuess::zero;
    c.tolerance = 0.0;
    p[c.preset] = c;
  }
  {
    ExperimentConfig c;
    c.preset = "spectral-heat";
    c.model = ModelKind::spectral;
    c.domain_length = 1.0;
    c.basis = Basis::sine;
    c.fine_modes = 64;
    c.coarse_modes = 2;
    c.source = "heater";
    c.initial = "zero";
    c.n_slices = 6;
    c.iterations = 6;
    p[c.preset] = c;
  }
  {
    ExperimentConfig c;
    c.preset = "advection-periodic";
    c.model = ModelKind::advection;
    c.bc = BoundaryKind::periodic;
    c.speed = 1.0;
    c.n_cells = 256;
    c.fine_dt = 1.0 / 512.0;
    c.coarse_dt = 1.0 / 256.0;
    c.source = "heater";
    c.initial = "zero";
    c.n_slices = 12;
    c.iterations = 12;
    p[c.preset] = c;
  }
  {
    // Source-free transport of a smooth periodic profile: the error is
    // carried around the domain instead of leaving it.
    ExperimentConfig c = p["advection-periodic"];
    c.preset = "advection-periodic-transport";
    c.source = "zero";
    c.initial = "periodic_wave";
    p[c.preset] = c;
  }
  {
    ExperimentConfig c = p["advection-periodic"];
    c.preset = "advection-inflow";
    c.bc = BoundaryKind::inflow_zero;
    c.n_slices = 6;
    c.iterations = 6;
    p[c.preset] = c;
  }
  {
    ExperimentConfig c;
    c.preset = "wave";
    c.model = ModelKind::wave;
    c.bc = BoundaryKind::dirichlet_zero;
    c.n_cells = 128;
    c.fine_dt = 1.0 / 256.0;
    c.coarse_dt = 0.0;
    c.source = "zero";
    c.initial = "standing_wave";
    c.n_slices = 12;
    c.iterations = 12;
    p[c.preset] = c;
  }
  return p;
}

inline const std::map<std::string, ExperimentConfig>& presets() {
  static const auto p = make_presets();
  return p;
}

inline ExperimentConfig preset(const std::string& name) {
  const auto& p = presets();
  const auto it = p.find(name);
  if (it == p.end()) throw ConfigError("field 'experiment.preset': unknown preset '" + name + "'");
  return it->second;
}

// Reads an INI document. The optional experiment.preset key selects the
// base configuration; every other key overrides it.
inline ExperimentConfig load_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig c;
  if (auto base = tree.get_optional<std::string>("experiment.preset")) c = preset(*base);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("field '" + section + "': keys must be inside a [section]");
    for (const auto& [key, value] : body) c.set(section + "." + key, value.data());
  }
  return c;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("field 'config': cannot read '" + path + "'");
  return load_config(in);
}

// ---------------------------------------------------------------------------
// Building models from a configuration

using AnyModel = std::variant<HeatModel, SpectralModel, AdvectionModel, WaveModel>;

inline SourceTerm make_source(const ExperimentConfig& c) {
  if (c.source == "heater") return heater_source();
  return ZeroSource{};
}

inline AnyModel build_model(const ExperimentConfig& c) {
  try {
    switch (c.model) {
      case ModelKind::heat: return HeatModel(c.n_cells, c.bc, make_source(c));
      case ModelKind::advection: return AdvectionModel(c.speed, c.n_cells, c.bc, make_source(c));
      case ModelKind::wave:
        if (c.bc != BoundaryKind::dirichlet_zero) throw ConfigError("field 'model.bc': wave model is Dirichlet only");
        return WaveModel(c.n_cells, make_source(c));
      case ModelKind::spectral: {
        std::vector<ModeForcing> forcing;
        if (c.source == "heater") forcing = project_source(heater_source(), c.domain_length, c.basis, c.fine_modes);
        return SpectralModel(c.domain_length, c.basis, c.fine_modes, std::move(forcing));
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'model': ") + e.what());
  }
  throw ConfigError("field 'model.kind': unsupported");
}

inline double bump(double x) { return std::exp(-200.0 * (x - 0.3) * (x - 0.3)); }

inline StateVector build_initial_state(const ExperimentConfig& c, const AnyModel& model) {
  return std::visit(
      [&](const auto& m) -> StateVector {
        using M = std::decay_t<decltype(m)>;
        if (c.initial == "zero") return m.zero_state();
        if constexpr (std::is_same_v<M, SpectralModel>) {
          if (c.initial != "modes") throw ConfigError("field 'initial.kind': spectral model takes zero or modes");
          if (c.initial_modes.size() > m.n_modes()) throw ConfigError("field 'initial.modes': more modes than the model");
          return m.from_coefficients(c.initial_modes);
        } else if constexpr (std::is_same_v<M, WaveModel>) {
          if (c.initial == "standing_wave")
            return m.sample([](double x) { return std::sin(std::numbers::pi * x) + bump(x); },
                            [](double) { return 0.0; });
          if (c.initial == "bump") return m.sample(bump, [](double) { return 0.0; });
          throw ConfigError("field 'initial.kind': wave model takes zero, bump or standing_wave");
        } else {
          if (c.initial == "bump") return m.sample(bump);
          if (c.initial == "standing_wave") return m.sample([](double x) { return std::sin(std::numbers::pi * x); });
          if (c.initial == "periodic_wave")
            return m.sample([](double x) { return std::sin(2.0 * std::numbers::pi * x); });
          throw ConfigError("field 'initial.kind': grid models take zero, bump, standing_wave or periodic_wave");
        }
      },
      model);
}

inline PararealConfig build_parareal_config(const ExperimentConfig& c, const AnyModel& model) {
  PararealConfig pc;
  try {
    pc.partition = make_uniform_partition(c.t_end, c.n_slices);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'partition': ") + e.what());
  }
  const double slice = pc.partition.slice_width();
  if (c.model == ModelKind::spectral) {
    if (c.coarse_modes >= c.fine_modes)
      throw ConfigError("field 'model.coarse_modes': must be smaller than model.fine_modes");
    pc.fine = PropagatorSpec::fine_modes(c.fine_modes);
    pc.coarse = c.coarse && c.coarse_modes > 0 ? PropagatorSpec::coarse_modes(c.coarse_modes) : PropagatorSpec::absent();
  } else {
    pc.fine = PropagatorSpec::fine_steps(steps_per_slice_for(slice, c.fine_dt));
    const long coarse_steps = c.coarse_dt > 0.0 ? steps_per_slice_for(slice, c.coarse_dt) : 1;
    pc.coarse = c.coarse ? PropagatorSpec::coarse_steps(coarse_steps) : PropagatorSpec::absent();
  }
  pc.initial_condition = build_initial_state(c, model);
  pc.max_iterations = c.iterations;
  pc.initial_guess = c.initial_guess;
  pc.tolerance = c.tolerance;
  pc.execution = c.parallel ? Execution::parallel : Execution::sequential;
  pc.threads = c.threads;
  pc.seed = c.seed;
  pc.record_timing = c.timing;
  pc.validate();
  return pc;
}

inline IterationTrace run_experiment(const ExperimentConfig& c) {
  const AnyModel model = build_model(c);
  const PararealConfig pc = build_parareal_config(c, model);
  IterationTrace trace = std::visit([&](const auto& m) { return run(m, pc); }, model);
  for (const auto& [k, v] : c.echo()) trace.metadata["config." + k] = v;
  return trace;
}

// ---------------------------------------------------------------------------
// Trace files

inline constexpr int kTraceSchemaVersion = 1;

// Header lines start with '#'; rows are k-major, n-minor.
inline void write_trace(std::ostream& out, const IterationTrace& trace) {
  out << "# pit-trace\n";
  out << "# schema_version=" << kTraceSchemaVersion << "\n";
  for (const auto& [k, v] : trace.metadata) out << "# " << k << "=" << v << "\n";
  out << "k,n,error_l2,bound,wall_time_ms\n";
  std::vector<TraceEntry> rows = trace.entries;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TraceEntry& a, const TraceEntry& b) { return a.k != b.k ? a.k < b.k : a.n < b.n; });
  char buf[64];
  for (const auto& e : rows) {
    out << e.k << ',' << e.n << ',' << detail::format_double(e.error_l2) << ',';
    if (e.bound) out << detail::format_double(*e.bound);
    std::snprintf(buf, sizeof buf, "%.3f", e.wall_time_ms);
    out << ',' << buf << '\n';
  }
}

inline IterationTrace read_trace(std::istream& in) {
  IterationTrace trace;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (line.size() <= 2 || eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "schema_version") {
        if (value != std::to_string(kTraceSchemaVersion)) throw ConfigError("trace: unsupported schema_version " + value);
      } else {
        trace.metadata[key] = value;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "k,n,error_l2,bound,wall_time_ms") throw ConfigError("trace: unexpected column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() == 4) cols.emplace_back();
    if (cols.size() != 5) throw ConfigError("trace: malformed row '" + line + "'");
    TraceEntry e;
    e.k = static_cast<int>(detail::parse_long("k", cols[0]));
    e.n = detail::parse_count("n", cols[1]);
    e.error_l2 = detail::parse_double("error_l2", cols[2]);
    if (!cols[3].empty()) e.bound = detail::parse_double("bound", cols[3]);
    e.wall_time_ms = cols[4].empty() ? 0.0 : detail::parse_double("wall_time_ms", cols[4]);
    trace.add(e);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Solution fields

struct SolutionField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> u;  // u[time index][space index]
};

// Sequential fine solve over [0, T], sampled every `stride` fine steps
// (stride 0 picks roughly 96 time samples).
inline SolutionField solution_field(const ExperimentConfig& c, long stride = 0) {
  const AnyModel model = build_model(c);
  const StateVector u0 = build_initial_state(c, model);
  SolutionField field;

  if (c.model == ModelKind::spectral) {
    const auto& m = std::get<SpectralModel>(model);
    const long samples = stride > 0 ? stride : 96;
    const std::size_t nx = 128;
    for (std::size_t j = 0; j <= nx; ++j) field.x.push_back(c.domain_length * static_cast<double>(j) / nx);
    auto eval = [&](const StateVector& s) {
      std::vector<double> u(field.x.size(), 0.0);
      for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t i = 0; i < s.values.size(); ++i) {
          const double arg = m.mode_number(i) * std::numbers::pi * field.x[j] / c.domain_length;
          u[j] += s.values[i] * (c.basis == Basis::sine ? std::sin(arg) : std::cos(arg));
        }
      return u;
    };
    const auto spec = PropagatorSpec::fine_modes(c.fine_modes);
    StateVector s = u0;
    field.t.push_back(0.0);
    field.u.push_back(eval(s));
    for (long i = 0; i < samples; ++i) {
      const double t0 = c.t_end * static_cast<double>(i) / static_cast<double>(samples);
      const double t1 = c.t_end * static_cast<double>(i + 1) / static_cast<double>(samples);
      s = m.propagate(spec, s, t0, t1);
      field.t.push_back(t1);
      field.u.push_back(eval(s));
    }
    return field;
  }

  const long total = steps_per_slice_for(c.t_end, c.fine_dt);
  if (stride <= 0) stride = std::max(1L, total / 96);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (!std::is_same_v<M, SpectralModel>) {
          field.x = m.grid_points();
          const std::size_t nx = field.x.size();
          auto take_u = [nx](const StateVector& s) {
            return std::vector<double>(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(nx));
          };
          StateVector s = u0;
          field.t.push_back(0.0);
          field.u.push_back(take_u(s));
          for (long i = 0; i < total; ++i) {
            const double t = c.t_end * static_cast<double>(i) / static_cast<double>(total);
            const double dt = c.t_end / static_cast<double>(total);
            s = m.step(s, t, dt);
            if ((i + 1) % stride == 0 || i + 1 == total) {
              field.t.push_back(c.t_end * static_cast<double>(i + 1) / static_cast<double>(total));
              field.u.push_back(take_u(s));
            }
          }
        }
      },
      model);
  return field;
}

inline void write_solution_field(std::ostream& out, const SolutionField& f) {
  out << "x,t,u\n";
  for (std::size_t i = 0; i < f.t.size(); ++i)
    for (std::size_t j = 0; j < f.x.size(); ++j)
      out << detail::format_double(f.x[j]) << ',' << detail::format_double(f.t[i]) << ','
          << detail::format_double(f.u[i][j]) << '\n';
}

}  // namespace pit
