#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crofton/lorentz.hpp"
#include "crofton/quadrature.hpp"

namespace crofton {

/// Position and the first three parameter derivatives of a curve.
struct CurveJet {
  LorentzVector pos;
  LorentzVector d1;
  LorentzVector d2;
  LorentzVector d3;
};

/// A periodic map t -> R^3_1 with derivatives up to order three.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  virtual double period() const = 0;
  virtual CurveJet jet(double t) const = 0;
  /// Parameters in [0, period) where the third derivative may jump.
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::string describe() const = 0;
};

/// Default sample count for arc-length tables and certification scans.
inline constexpr int kDefaultSamples = 4096;

/// An immutable closed C2 curve in R^3_1. Copies share the underlying source.
///
/// The arc-length table is built on construction when the curve is spacelike
/// at every quadrature node; otherwise length() and the arc-length accessors
/// throw NotSpacelike while pointwise evaluation keeps working.
class ClosedCurve {
 public:
  explicit ClosedCurve(std::shared_ptr<const CurveSource> source, int n_panels = kDefaultSamples);

  double period() const noexcept { return source_->period(); }
  CurveJet jet(double t) const { return source_->jet(t); }
  LorentzVector position(double t) const { return source_->jet(t).pos; }
  std::vector<double> breakpoints() const { return source_->breakpoints(); }
  std::string describe() const { return source_->describe(); }
  const std::shared_ptr<const CurveSource>& source() const noexcept { return source_; }

  bool is_spacelike() const noexcept { return table_ != nullptr; }
  bool is_arclength() const noexcept { return arclength_; }
  double length() const;
  const ArcLengthTable& arclength_table() const;

  ClosedCurve transformed(const LorentzTransform& m) const;
  ClosedCurve reversed() const;

 private:
  ClosedCurve(std::shared_ptr<const CurveSource> source, std::shared_ptr<const ArcLengthTable> table,
              bool arclength);
  friend ClosedCurve reparametrize_arclength(const ClosedCurve& curve, int n_samples);

  std::shared_ptr<const CurveSource> source_;
  std::shared_ptr<const ArcLengthTable> table_;
  std::optional<double> non_spacelike_at_;
  bool arclength_ = false;
};

/// The same curve with arc length as parameter. Derivatives follow from the
/// chain rule through the inverse of the arc-length table.
/// Throws NotSpacelike (with the offending t) if <gamma', gamma'> <= 0 anywhere on the
/// sample grid.
ClosedCurve reparametrize_arclength(const ClosedCurve& curve, int n_samples = kDefaultSamples);

/// One Fourier series per coordinate:
///   x(t) = c[0] + sum_k c[2k-1] cos(2 pi k t / P) + c[2k] sin(2 pi k t / P).
struct FourierSeries {
  std::vector<double> coeffs;
};

ClosedCurve make_fourier_curve(double period, FourierSeries x1, FourierSeries x2, FourierSeries x3);

/// Periodic cubic spline through rows (t, x1, x2, x3); needs at least 8 rows.
ClosedCurve make_spline_curve(std::span<const std::array<double, 4>> points, double period);

struct FrenetData {
  LorentzVector T, N, B;
  double k;    // curvature
  double tau;  // torsion, dN/ds = -k T + tau B
};

/// Frenet frame at parameter t of the curve's own parametrization.
/// B is the future-directed (x3 > 0) timelike unit normal.
/// Throws NotSpacelike, InflectionPoint, or NotStrongSpacelike.
FrenetData frenet_apparatus(const ClosedCurve& curve, double t);

struct StrongSpacelikeReport {
  bool verdict = false;
  double min_speed_margin = 0.0;       // min <T,T> / |T|^2_euclid
  double min_osculating_margin = 0.0;  // min <A,A> / |A|^2_euclid, A the curvature vector
  double min_curvature = 0.0;          // min k * L (scale free)
  double worst_t = 0.0;
  int n_samples = 0;
  double tol = 0.0;
};

inline constexpr double kStrongSpacelikeTol = 1e-10;

StrongSpacelikeReport certify_strong_spacelike(const ClosedCurve& curve, int n_samples = kDefaultSamples,
                                               double tol = kStrongSpacelikeTol);

/// Signed number of turns of the longitude of the unit tangent over one
/// period. Throws NonIntegerWinding when the sampled turn count is not integral.
int signed_winding(const ClosedCurve& curve, int n_samples = kDefaultSamples);

/// Index of the tangent indicatrix: |signed_winding|. Orientation is a
/// traversal choice; the indicatrix of a negatively wound curve is built from
/// the reversed curve.
int winding_index(const ClosedCurve& curve, int n_samples = kDefaultSamples);

/// Integral of k ds, computed as the integral of sqrt(Gram(gamma', gamma''))/|gamma'|^2 dt
/// by adaptive Gauss-Kronrod split at the breakpoints.
double total_curvature(const ClosedCurve& curve);

}  // namespace crofton
