#pragma once

// Shared domain types for the parallel-in-time solvers: time partitions,
// state snapshots, propagator descriptions and iteration traces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pit {

// Error kinds. std::invalid_argument is used for malformed arguments.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystemError : NumericalError {
  using NumericalError::NumericalError;
};
struct UndefinedFactorError : NumericalError {
  using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// TimePartition

class TimePartition {
 public:
  TimePartition(double t_start, double t_end, std::vector<double> boundaries)
      : t_start_(t_start), t_end_(t_end), boundaries_(std::move(boundaries)) {
    if (boundaries_.size() < 2)
      throw std::invalid_argument("time partition needs at least one slice");
    if (boundaries_.front() != t_start_ || boundaries_.back() != t_end_)
      throw std::invalid_argument("partition boundaries must span [t_start, t_end]");
    for (std::size_t n = 1; n < boundaries_.size(); ++n)
      if (!(boundaries_[n] > boundaries_[n - 1]))
        throw std::invalid_argument("partition boundaries must be strictly increasing");
  }

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t n_slices() const { return boundaries_.size() - 1; }
  double operator[](std::size_t n) const { return boundaries_[n]; }
  std::span<const double> boundaries() const { return boundaries_; }

  // Width of the slices; meaningful for uniform partitions.
  double slice_width() const { return (t_end_ - t_start_) / static_cast<double>(n_slices()); }

  bool is_uniform(double rel_tol = 1e-12) const {
    const double w = slice_width();
    for (std::size_t n = 0; n < n_slices(); ++n)
      if (std::abs(boundaries_[n + 1] - boundaries_[n] - w) > rel_tol * std::max(1.0, std::abs(w)))
        return false;
    return true;
  }

 private:
  double t_start_;
  double t_end_;
  std::vector<double> boundaries_;
};

// T_n = n * t_end / n_slices, computed per index so there is no drift.
inline TimePartition make_uniform_partition(double t_end, long n_slices) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (n_slices < 1) throw std::invalid_argument("n_slices must be at least 1");
  std::vector<double> b(static_cast<std::size_t>(n_slices) + 1);
  for (long n = 0; n <= n_slices; ++n)
    b[static_cast<std::size_t>(n)] = static_cast<double>(n) * t_end / static_cast<double>(n_slices);
  b.back() = t_end;
  return TimePartition(0.0, t_end, std::move(b));
}

// ---------------------------------------------------------------------------
// StateVector

enum class BoundaryKind { dirichlet_zero, neumann_zero, periodic, inflow_zero };
enum class Basis { sine, cosine };

inline const char* to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::dirichlet_zero: return "dirichlet";
    case BoundaryKind::neumann_zero: return "neumann";
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::inflow_zero: return "inflow";
  }
  return "?";
}

inline const char* to_string(Basis b) { return b == Basis::sine ? "sine" : "cosine"; }

// Point values of one or more fields on a uniform grid. Only unknowns are
// stored: interior points for Dirichlet, all points for Neumann. With several
// components the fields are stored one after another.
struct GridLayout {
  std::size_t n_points = 0;
  double dx = 0.0;
  BoundaryKind bc = BoundaryKind::dirichlet_zero;
  std::size_t components = 1;

  std::size_t size() const { return n_points * components; }
  friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

// Coefficients of the first n_modes basis functions on (0, domain_length).
// Sine index i holds mode m = i + 1, cosine index i holds mode m = i.
struct ModeLayout {
  std::size_t n_modes = 0;
  Basis basis = Basis::sine;
  double domain_length = 0.0;

  std::size_t size() const { return n_modes; }
  int mode_number(std::size_t index) const {
    return static_cast<int>(basis == Basis::sine ? index + 1 : index);
  }
  friend bool operator==(const ModeLayout&, const ModeLayout&) = default;
};

using Layout = std::variant<GridLayout, ModeLayout>;

struct StateVector {
  Layout layout;
  std::vector<double> values;

  StateVector() = default;
  StateVector(Layout l, std::vector<double> v) : layout(std::move(l)), values(std::move(v)) {
    if (values.size() != layout_size(layout))
      throw std::invalid_argument("state values do not match layout size");
  }

  static StateVector zeros(const Layout& l) { return StateVector(l, std::vector<double>(layout_size(l), 0.0)); }

  static std::size_t layout_size(const Layout& l) {
    return std::visit([](const auto& x) { return x.size(); }, l);
  }

  std::size_t size() const { return values.size(); }
  bool same_layout(const StateVector& o) const { return layout == o.layout; }
};

inline StateVector operator-(const StateVector& a, const StateVector& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("state layouts differ");
  StateVector r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

inline StateVector operator+(const StateVector& a, const StateVector& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("state layouts differ");
  StateVector r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}

inline StateVector operator*(double alpha, const StateVector& a) {
  StateVector r = a;
  for (auto& v : r.values) v *= alpha;
  return r;
}

// Grid: sqrt(dx * sum v^2). Modes: Parseval norm of the expansion on
// (0, L): weight L/2 per sine or nonzero cosine mode, L for the zero mode.
inline double discrete_l2_norm(const StateVector& s) {
  if (const auto* g = std::get_if<GridLayout>(&s.layout)) {
    double sum = 0.0;
    for (double v : s.values) sum += v * v;
    return std::sqrt(g->dx * sum);
  }
  const auto& m = std::get<ModeLayout>(s.layout);
  const double L = m.domain_length;
  double sum = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double w = (m.mode_number(i) == 0) ? L : 0.5 * L;
    sum += w * s.values[i] * s.values[i];
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// PropagatorSpec

enum class PropagatorRole { fine, coarse, none };

inline const char* to_string(PropagatorRole r) {
  switch (r) {
    case PropagatorRole::fine: return "fine";
    case PropagatorRole::coarse: return "coarse";
    case PropagatorRole::none: return "none";
  }
  return "?";
}

// A fine or coarse solver. Time-discrete models read steps_per_slice,
// spectral models read mode_count. A coarse spectral spec with zero modes
// is the same as an absent coarse propagator.
struct PropagatorSpec {
  PropagatorRole role = PropagatorRole::fine;
  long steps_per_slice = 1;
  std::size_t mode_count = 0;

  static PropagatorSpec fine_steps(long steps) { return {PropagatorRole::fine, steps, 0}; }
  static PropagatorSpec coarse_steps(long steps) { return {PropagatorRole::coarse, steps, 0}; }
  static PropagatorSpec fine_modes(std::size_t modes) { return {PropagatorRole::fine, 1, modes}; }
  static PropagatorSpec coarse_modes(std::size_t modes) { return {PropagatorRole::coarse, 1, modes}; }
  static PropagatorSpec absent() { return {PropagatorRole::none, 1, 0}; }

  bool present() const { return role != PropagatorRole::none; }
};

// ---------------------------------------------------------------------------
// IterationTrace

struct TraceEntry {
  int k = 0;
  std::size_t n = 0;
  double error_l2 = 0.0;
  std::optional<double> bound;
  double wall_time_ms = 0.0;
};

struct IterationTrace {
  std::vector<TraceEntry> entries;
  // Ordered so that serialized metadata is deterministic.
  std::map<std::string, std::string> metadata;

  void add(TraceEntry e) {
    if (!(e.error_l2 >= 0.0)) throw NumericalError("trace error must be a nonnegative number");
    for (const auto& x : entries)
      if (x.k == e.k && x.n == e.n) throw std::invalid_argument("duplicate (k, n) trace entry");
    entries.push_back(e);
  }

  int last_iteration() const {
    int k = -1;
    for (const auto& e : entries) k = std::max(k, e.k);
    return k;
  }

  std::vector<TraceEntry> at_iteration(int k) const {
    std::vector<TraceEntry> out;
    for (const auto& e : entries)
      if (e.k == k) out.push_back(e);
    return out;
  }
};

inline double sup_error(const IterationTrace& trace, int k) {
  bool found = false;
  double best = 0.0;
  for (const auto& e : trace.entries) {
    if (e.k != k) continue;
    found = true;
    best = std::max(best, e.error_l2);
  }
  if (!found) throw NotFoundError("no trace entries for iteration " + std::to_string(k));
  return best;
}

}  // namespace pit
