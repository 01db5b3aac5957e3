#pragma once

#include <functional>
#include <span>
#include <vector>

namespace crofton {

/// Fixed-order Gauss-Legendre rule on [a, b].
double integrate_gauss(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss-Kronrod on [a, b], further split at every breakpoint
/// strictly inside the interval.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints = {}, double rel_tol = 1e-13);

/// Pairwise summation in fixed order; the result depends only on the input
/// sequence, never on how it was produced.
double pairwise_sum(std::span<const double> values) noexcept;

struct QuadratureNode {
  double u;       // parameter value
  double weight;  // quadrature weight in du
};

/// Cumulative arc length of a periodic parametrization, tabulated on
/// Gauss-Legendre panels aligned with the breakpoints of the underlying curve.
/// Inversion refines the panel's linear guess by safeguarded Newton steps.
class ArcLengthTable {
 public:
  using Speed = std::function<double(double)>;

  ArcLengthTable(Speed speed, double period, std::span<const double> breakpoints, int n_panels);

  /// The table of a parametrization that already has unit speed.
  static ArcLengthTable unit_speed(double period, std::span<const double> breakpoints, int n_panels);

  double period() const noexcept { return period_; }
  double length() const noexcept { return cumulative_.back(); }

  /// s(u) extended periodically: s(u + P) = s(u) + L.
  double arclength_at(double u) const;
  /// Inverse of arclength_at, for any real s.
  double param_at(double s) const;
  double speed(double u) const { return speed_(u); }

  std::span<const double> panel_edges() const noexcept { return edges_; }
  std::vector<QuadratureNode> nodes() const;

 private:
  ArcLengthTable() = default;
  double panel_partial(std::size_t panel, double u) const;

  Speed speed_;
  double period_ = 0.0;
  bool unit_ = false;
  std::vector<double> edges_;
  std::vector<double> cumulative_;
};

/// Panel edges on [0, period) refined so every breakpoint is an edge.
std::vector<double> panel_edges(double period, std::span<const double> breakpoints, int n_panels);

}  // namespace crofton
