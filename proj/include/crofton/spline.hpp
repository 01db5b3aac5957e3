#pragma once

#include <span>
#include <vector>

namespace crofton {

/// C2 periodic cubic spline through (knot, value) pairs on non-uniform knots.
/// The value at knots[0] + period is the value at knots[0].
class PeriodicCubicSpline {
 public:
  struct Jet {
    double value, d1, d2, d3;
  };

  PeriodicCubicSpline(std::vector<double> knots, std::vector<double> values, double period);

  Jet eval(double t) const;
  double period() const noexcept { return period_; }
  std::span<const double> knots() const noexcept { return knots_; }

 private:
  std::vector<double> knots_;   // n knots, then knots_[0] + period appended
  std::vector<double> values_;  // n values, then values_[0] appended
  std::vector<double> second_;  // second derivatives at knots, cyclic
  double period_;
};

/// Solves the cyclic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
/// for a diagonally dominant matrix (Sherman-Morrison on the Thomas algorithm).
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs);

}  // namespace crofton
