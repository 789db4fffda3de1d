#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "pit/core.hpp"

namespace pit {

// Tridiagonal matrix with sub-, main and super-diagonal of sizes n-1, n, n-1.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  std::size_t size() const { return diag.size(); }

  void validate() const {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("empty tridiagonal system");
    if (sub.size() != n - 1 || super.size() != n - 1)
      throw std::invalid_argument("tridiagonal band sizes must be (n-1, n, n-1)");
  }

  std::vector<double> apply(std::span<const double> x) const {
    validate();
    const std::size_t n = diag.size();
    if (x.size() != n) throw std::invalid_argument("vector size does not match system");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += sub[i - 1] * x[i - 1];
      if (i + 1 < n) s += super[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }
};

// Thomas algorithm (Gaussian elimination without pivoting).
inline std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
  sys.validate();
  const std::size_t n = sys.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size does not match system");

  std::vector<double> c(n, 0.0);
  std::vector<double> x(n);
  double pivot = sys.diag[0];
  if (pivot == 0.0) throw SingularSystemError("zero pivot in row 0");
  if (n > 1) c[0] = sys.super[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw SingularSystemError("zero pivot in row " + std::to_string(i));
    if (i + 1 < n) c[i] = sys.super[i] / pivot;
    x[i] = (rhs[i] - sys.sub[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace pit
