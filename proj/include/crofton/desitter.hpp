#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "crofton/curve.hpp"
#include "crofton/hyperbolic.hpp"
#include "crofton/lorentz.hpp"
#include "crofton/quadrature.hpp"

namespace crofton {

struct LatLong {
  double phi;    // latitude
  double theta;  // longitude in [0, 2 pi)
};

/// Inverse of p = (cosh phi cos theta, cosh phi sin theta, sinh phi).
/// Throws NotOnDeSitter if |<p,p> - 1| > 1e-8.
LatLong to_latlong(const LorentzVector& p);
LorentzVector from_latlong(double phi, double theta) noexcept;

/// A point of a curve on the de Sitter sphere and its parameter derivative.
struct SphericalJet {
  LorentzVector point;
  LorentzVector velocity;
};

class SphericalSource {
 public:
  virtual ~SphericalSource() = default;
  virtual double period() const = 0;
  virtual SphericalJet jet(double u) const = 0;
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::string describe() const = 0;
};

/// Convenience base for curves given as latitude/longitude functions of a
/// parameter u.
class LatLongSource : public SphericalSource {
 public:
  struct Coords {
    double theta, phi, dtheta, dphi;
  };
  virtual Coords coords(double u) const = 0;
  SphericalJet jet(double u) const final;
};

/// State of a spherical curve at arc length s. Derivatives are d/ds; theta is
/// the continuous lift, so theta(s + L) = theta(s) + 2 pi I.
struct SphericalSample {
  double s;
  double u;
  double theta;
  double phi;
  double dtheta;
  double dphi;
  LorentzVector e1;
  LorentzVector de1;  // d e1 / ds
};

/// A closed spacelike curve on the de Sitter sphere with positive longitude
/// speed, tabulated by its own arc length.
class SphericalCurve {
 public:
  /// Throws NotSpacelike, NotPositivelyOriented, NonIntegerWinding.
  explicit SphericalCurve(std::shared_ptr<const SphericalSource> source, int n_panels = kDefaultSamples);

  double length() const noexcept { return table_->length(); }
  int index() const noexcept { return index_; }
  double param_period() const noexcept { return source_->period(); }
  std::string describe() const { return source_->describe(); }

  SphericalSample at(double s) const;
  SphericalSample at_param(double u) const;
  /// at_param with the arc length supplied by the caller (not recomputed).
  SphericalSample at_param(double u, double s) const { return sample(u, s); }
  /// e1 at parameter u without the arc-length bookkeeping.
  LorentzVector point_at_param(double u) const { return source_->jet(u).point; }
  double arclength_at_param(double u) const { return table_->arclength_at(u); }
  double param_at(double s) const { return table_->param_at(s); }

  /// Breakpoints of the source, in arc length.
  std::vector<double> breakpoints() const;
  const ArcLengthTable& arclength_table() const noexcept { return *table_; }

  /// Image under a Lorentz transform (orthochronous, orientation preserving).
  SphericalCurve transformed(const LorentzTransform& m) const;

 private:
  double lifted_theta(double u_wrapped, double principal) const;
  SphericalSample sample(double u, double s) const;

  std::shared_ptr<const SphericalSource> source_;
  std::shared_ptr<const ArcLengthTable> table_;
  std::shared_ptr<const std::vector<double>> lift_;  // lifted theta on a uniform u grid, closing node included
  int index_ = 0;
};

/// Tangent indicatrix of a closed strong spacelike curve, reparametrized by
/// its own arc length. A negatively wound curve is traversed in reverse.
SphericalCurve tangent_indicatrix(const ClosedCurve& curve, int n_panels = kDefaultSamples);

/// max |cosh^2 phi theta'^2 - phi'^2 - 1| over n uniformly spaced arc lengths.
double arclength_identity_residual(const SphericalCurve& g, int n_samples = 4096);

struct AdaptedFrame {
  LorentzVector e1, e2, e3;
  double tau;  // cosh tau = cosh phi theta', sinh tau = phi'
};

AdaptedFrame adapted_frame(const SphericalCurve& g, double s);
AdaptedFrame adapted_frame(const SphericalSample& sample) noexcept;

/// The pole sinh(psi) e2(s) + cosh(psi) e3(s) of the closed geodesic through e1(s).
LorentzVector pole_patch(const SphericalCurve& g, double s, double psi);

/// Closed spacelike geodesic Y-perp, c(u) = cos u E1 + sin u E2, with
/// det(c, c', Y) > 0.
struct GeodesicCircle {
  LorentzVector E1, E2, pole;
  LorentzVector at(double u) const noexcept;
};

GeodesicCircle geodesic_from_pole(const HyperbolicPoint& y);

struct IntersectionResult {
  int count = 0;
  std::vector<double> locations;  // arc length; filled when requested
  bool degenerate = false;
  double min_transversality = 0.0;  // min |d/ds <e1, Y>| / |Y| over the roots
  int scan_density = 0;             // grid size at which the count stabilized
};

inline constexpr int kDefaultScan = 4096;
inline constexpr double kIntersectionTol = 1e-9;

/// Counts the zeros of g(s) = <e1(s), Y> over one period. Scans a uniform
/// arc-length grid with cubic Hermite cells, doubling the density until two
/// successive counts agree. Tangencies (an extremum of g within tol |Y| of
/// zero, or g identically zero) set `degenerate`.
///
/// Construct once per curve; count() is const and safe to call concurrently.
class IntersectionCounter {
 public:
  explicit IntersectionCounter(const SphericalCurve& g, int n_scan = kDefaultScan, double tol = kIntersectionTol);

  IntersectionResult count(const LorentzVector& y, bool locate = false) const;

  const SphericalCurve& curve() const noexcept { return curve_; }

 private:
  struct Grid {
    int n = 0;
    double h = 0.0;  // cell width in arc length
    std::vector<double> u;
    std::vector<LorentzVector> e1, de1;
  };
  struct CellScan {
    int count = 0;
    bool degenerate = false;
    double min_slope = 0.0;
    std::vector<std::pair<int, int>> cells;  // (cell, roots in cell)
  };

  Grid build_grid(int n) const;
  struct Samples {
    std::vector<double> g, dg;  // <e1, Y> and d/ds <e1, Y> at the grid nodes
  };
  Samples evaluate(const Grid& grid, const LorentzVector& y) const;
  CellScan scan(const Grid& grid, const Samples& v, int stride, double ynorm, bool keep_cells) const;
  std::vector<double> locate_roots(const Grid& grid, int stride, const CellScan& cells, const LorentzVector& y) const;

  SphericalCurve curve_;
  double tol_;
  Grid fine_;  // 2 * n_scan cells; the n_scan grid is every other node
  int n_scan_;
};

IntersectionResult intersection_count(const SphericalCurve& g, const LorentzVector& y, int n_scan = kDefaultScan,
                                      double tol = kIntersectionTol);

inline constexpr double kLemmaSentinel = 1e6;
inline constexpr double kLemmaSafety = 0.9;

/// a* > 1 such that every timelike pole (cos b, sin b, a) with 1 < |a| < a*
/// meets the curve exactly 2I times:
///   a* = 1 + safety * (min_s cosh phi / sqrt(sinh^2 phi + tanh^2 tau) - 1),
/// capped at 1e6.
double lemma_threshold(const SphericalCurve& g, double safety = kLemmaSafety, int n_samples = 8192);

}  // namespace crofton
