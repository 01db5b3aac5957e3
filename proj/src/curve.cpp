#include "crofton/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "crofton/errors.hpp"
#include "crofton/spline.hpp"

namespace crofton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class FourierSource final : public CurveSource {
 public:
  FourierSource(double period, std::array<FourierSeries, 3> series)
      : period_(period), series_(std::move(series)) {}

  double period() const override { return period_; }

  CurveJet jet(double t) const override {
    CurveJet j{};
    const double w = kTwoPi / period_;
    for (int axis = 0; axis < 3; ++axis) {
      const std::vector<double>& c = series_[axis].coeffs;
      std::array<double, 4> acc{c.empty() ? 0.0 : c[0], 0.0, 0.0, 0.0};
      for (std::size_t m = 1; 2 * m - 1 < c.size(); ++m) {
        const double a = c[2 * m - 1];
        const double b = (2 * m < c.size()) ? c[2 * m] : 0.0;
        const double f = w * static_cast<double>(m);
        const double cs = std::cos(f * t), sn = std::sin(f * t);
        acc[0] += a * cs + b * sn;
        acc[1] += f * (-a * sn + b * cs);
        acc[2] += f * f * (-a * cs - b * sn);
        acc[3] += f * f * f * (a * sn - b * cs);
      }
      set_axis(j.pos, axis, acc[0]);
      set_axis(j.d1, axis, acc[1]);
      set_axis(j.d2, axis, acc[2]);
      set_axis(j.d3, axis, acc[3]);
    }
    return j;
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "fourier(period=" << period_ << ", terms=" << series_[0].coeffs.size() << '/'
       << series_[1].coeffs.size() << '/' << series_[2].coeffs.size() << ')';
    return os.str();
  }

 private:
  static void set_axis(LorentzVector& v, int axis, double value) {
    (axis == 0 ? v.x1 : axis == 1 ? v.x2 : v.x3) = value;
  }

  double period_;
  std::array<FourierSeries, 3> series_;
};

class SplineSource final : public CurveSource {
 public:
  SplineSource(std::array<PeriodicCubicSpline, 3> coords, std::vector<double> knots, double period)
      : coords_(std::move(coords)), knots_(std::move(knots)), period_(period) {}

  double period() const override { return period_; }

  CurveJet jet(double t) const override {
    const auto a = coords_[0].eval(t), b = coords_[1].eval(t), c = coords_[2].eval(t);
    return {{a.value, b.value, c.value}, {a.d1, b.d1, c.d1}, {a.d2, b.d2, c.d2}, {a.d3, b.d3, c.d3}};
  }

  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double k : knots_) out.push_back(k - std::floor(k / period_) * period_);
    return out;
  }

  std::string describe() const override {
    return "spline(" + std::to_string(knots_.size()) + " points)";
  }

 private:
  std::array<PeriodicCubicSpline, 3> coords_;
  std::vector<double> knots_;
  double period_;
};

class TransformedSource final : public CurveSource {
 public:
  TransformedSource(LorentzTransform m, std::shared_ptr<const CurveSource> base)
      : m_(m), base_(std::move(base)) {}
  double period() const override { return base_->period(); }
  CurveJet jet(double t) const override {
    const CurveJet j = base_->jet(t);
    return {m_ * j.pos, m_ * j.d1, m_ * j.d2, m_ * j.d3};
  }
  std::vector<double> breakpoints() const override { return base_->breakpoints(); }
  std::string describe() const override { return "transformed(" + base_->describe() + ")"; }

 private:
  LorentzTransform m_;
  std::shared_ptr<const CurveSource> base_;
};

class ReversedSource final : public CurveSource {
 public:
  explicit ReversedSource(std::shared_ptr<const CurveSource> base) : base_(std::move(base)) {}
  double period() const override { return base_->period(); }
  CurveJet jet(double t) const override {
    const CurveJet j = base_->jet(base_->period() - t);
    return {j.pos, -j.d1, j.d2, -j.d3};
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double b : base_->breakpoints()) out.push_back(base_->period() - b);
    return out;
  }
  std::string describe() const override { return "reversed(" + base_->describe() + ")"; }

 private:
  std::shared_ptr<const CurveSource> base_;
};

class ArcLengthSource final : public CurveSource {
 public:
  ArcLengthSource(std::shared_ptr<const CurveSource> base, std::shared_ptr<const ArcLengthTable> table)
      : base_(std::move(base)), table_(std::move(table)) {}

  double period() const override { return table_->length(); }

  CurveJet jet(double s) const override {
    const double t = table_->param_at(s);
    const CurveJet j = base_->jet(t);
    const double v2 = minkowski_inner(j.d1, j.d1);
    const double v = std::sqrt(v2);
    const double g12 = minkowski_inner(j.d1, j.d2);
    const double dv = g12 / v;
    const double ddv = (minkowski_inner(j.d2, j.d2) + minkowski_inner(j.d1, j.d3)) / v - g12 * g12 / (v2 * v);
    const double ts = 1.0 / v;
    const double tss = -dv / (v2 * v);
    const double tsss = -(ddv / (v2 * v2) - 3.0 * dv * dv / (v2 * v2 * v));
    return {j.pos, ts * j.d1, (ts * ts) * j.d2 + tss * j.d1,
            (ts * ts * ts) * j.d3 + (3.0 * ts * tss) * j.d2 + tsss * j.d1};
  }

  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double b : base_->breakpoints()) out.push_back(table_->arclength_at(b));
    return out;
  }

  std::string describe() const override { return "arclength(" + base_->describe() + ")"; }

 private:
  std::shared_ptr<const CurveSource> base_;
  std::shared_ptr<const ArcLengthTable> table_;
};

struct SpeedFailure {
  double t;
};

double speed_or_throw(const CurveSource& src, double t) {
  const CurveJet j = src.jet(t);
  const double v2 = minkowski_inner(j.d1, j.d1);
  if (!(v2 > 0.0)) throw SpeedFailure{t};
  return std::sqrt(v2);
}

// Curvature vector d^2 gamma / ds^2 from a jet in any spacelike parametrization.
LorentzVector curvature_vector(const CurveJet& j, double v2) {
  return (j.d2 - (minkowski_inner(j.d1, j.d2) / v2) * j.d1) / v2;
}

}  // namespace

ClosedCurve::ClosedCurve(std::shared_ptr<const CurveSource> source, int n_panels) : source_(std::move(source)) {
  if (!source_) throw GeometryError(ErrorKind::BadParameter, "null curve source");
  if (!(source_->period() > 0.0)) throw GeometryError(ErrorKind::BadParameter, "curve period must be positive");
  const CurveSource* raw = source_.get();
  try {
    table_ = std::make_shared<const ArcLengthTable>([raw](double t) { return speed_or_throw(*raw, t); },
                                                    source_->period(), source_->breakpoints(), n_panels);
  } catch (const SpeedFailure& f) {
    non_spacelike_at_ = f.t;
  }
}

ClosedCurve::ClosedCurve(std::shared_ptr<const CurveSource> source, std::shared_ptr<const ArcLengthTable> table,
                         bool arclength)
    : source_(std::move(source)), table_(std::move(table)), arclength_(arclength) {}

double ClosedCurve::length() const { return arclength_table().length(); }

const ArcLengthTable& ClosedCurve::arclength_table() const {
  if (!table_)
    throw GeometryError(ErrorKind::NotSpacelike, "curve is not spacelike; no arc length", non_spacelike_at_);
  return *table_;
}

ClosedCurve ClosedCurve::transformed(const LorentzTransform& m) const {
  return ClosedCurve(std::make_shared<TransformedSource>(m, source_));
}

ClosedCurve ClosedCurve::reversed() const { return ClosedCurve(std::make_shared<ReversedSource>(source_)); }

ClosedCurve reparametrize_arclength(const ClosedCurve& curve, int n_samples) {
  if (curve.is_arclength()) return curve;
  const double period = curve.period();
  for (int i = 0; i < n_samples; ++i) {
    const double t = period * i / n_samples;
    const CurveJet j = curve.jet(t);
    if (!(minkowski_inner(j.d1, j.d1) > 0.0))
      throw GeometryError(ErrorKind::NotSpacelike, "<gamma', gamma'> <= 0", t);
  }
  auto table = std::make_shared<const ArcLengthTable>(curve.arclength_table());
  auto source = std::make_shared<ArcLengthSource>(curve.source(), table);
  auto unit = std::make_shared<const ArcLengthTable>(
      ArcLengthTable::unit_speed(table->length(), source->breakpoints(), n_samples));
  return ClosedCurve(std::move(source), std::move(unit), true);
}

ClosedCurve make_fourier_curve(double period, FourierSeries x1, FourierSeries x2, FourierSeries x3) {
  if (!(period > 0.0)) throw GeometryError(ErrorKind::BadParameter, "Fourier period must be positive");
  for (const FourierSeries* s : {&x1, &x2, &x3}) {
    if (s->coeffs.empty()) throw GeometryError(ErrorKind::BadParameter, "Fourier coefficient list is empty");
    for (double c : s->coeffs)
      if (!std::isfinite(c)) throw GeometryError(ErrorKind::BadParameter, "non-finite Fourier coefficient");
  }
  return ClosedCurve(std::make_shared<FourierSource>(
      period, std::array<FourierSeries, 3>{std::move(x1), std::move(x2), std::move(x3)}));
}

ClosedCurve make_spline_curve(std::span<const std::array<double, 4>> points, double period) {
  if (points.size() < 8) throw GeometryError(ErrorKind::BadParameter, "spline curve needs at least 8 points");
  std::vector<double> knots;
  std::array<std::vector<double>, 3> values;
  for (const auto& p : points) {
    for (double x : p)
      if (!std::isfinite(x)) throw GeometryError(ErrorKind::BadParameter, "non-finite spline point");
    knots.push_back(p[0]);
    for (int a = 0; a < 3; ++a) values[a].push_back(p[a + 1]);
  }
  std::array<PeriodicCubicSpline, 3> coords{PeriodicCubicSpline(knots, values[0], period),
                                            PeriodicCubicSpline(knots, values[1], period),
                                            PeriodicCubicSpline(knots, values[2], period)};
  return ClosedCurve(std::make_shared<SplineSource>(std::move(coords), knots, period));
}

FrenetData frenet_apparatus(const ClosedCurve& curve, double t) {
  const CurveJet j = curve.jet(t);
  const double v2 = minkowski_inner(j.d1, j.d1);
  if (!(v2 > 0.0)) throw GeometryError(ErrorKind::NotSpacelike, "tangent is not spacelike", t);
  const double v = std::sqrt(v2);
  const double length = curve.is_spacelike() ? curve.length() : curve.period() * v;

  const LorentzVector a = curvature_vector(j, v2);
  const double scale2 = length * length;
  if (euclidean_norm_sq(a) * scale2 <= kStrongSpacelikeTol)
    throw GeometryError(ErrorKind::InflectionPoint, "curvature vector vanishes", t);
  const double aa = minkowski_inner(a, a);
  if (aa * scale2 <= kStrongSpacelikeTol)
    throw GeometryError(ErrorKind::NotStrongSpacelike, "osculating plane is not spacelike", t);

  FrenetData f{};
  f.T = j.d1 / v;
  f.k = std::sqrt(aa);
  f.N = a / f.k;
  LorentzVector b = lorentz_cross(f.T, f.N);
  b = b / std::sqrt(-minkowski_inner(b, b));
  f.B = (b.x3 < 0.0) ? -b : b;
  f.tau = -minkowski_inner(j.d3, f.B) / (v2 * v * f.k);
  return f;
}

StrongSpacelikeReport certify_strong_spacelike(const ClosedCurve& curve, int n_samples, double tol) {
  StrongSpacelikeReport r{};
  r.n_samples = n_samples;
  r.tol = tol;
  r.min_speed_margin = r.min_osculating_margin = r.min_curvature = std::numeric_limits<double>::infinity();
  const double length = curve.is_spacelike() ? curve.length() : 0.0;
  double worst = std::numeric_limits<double>::infinity();

  for (int i = 0; i < n_samples; ++i) {
    const double t = curve.period() * i / n_samples;
    const CurveJet j = curve.jet(t);
    const double v2 = minkowski_inner(j.d1, j.d1);
    const double speed = v2 / euclidean_norm_sq(j.d1);
    double osc = 0.0, kl = 0.0;
    if (v2 > 0.0) {
      const LorentzVector a = curvature_vector(j, v2);
      const double e = euclidean_norm_sq(a);
      const double aa = minkowski_inner(a, a);
      osc = (e > 0.0) ? aa / e : 0.0;
      kl = std::sqrt(std::max(aa, 0.0)) * length;
    }
    r.min_speed_margin = std::min(r.min_speed_margin, speed);
    r.min_osculating_margin = std::min(r.min_osculating_margin, osc);
    r.min_curvature = std::min(r.min_curvature, kl);
    const double here = std::min({speed, osc, kl});
    if (here < worst) {
      worst = here;
      r.worst_t = t;
    }
  }
  r.verdict = r.min_speed_margin > tol && r.min_osculating_margin > tol && r.min_curvature > tol;
  return r;
}

int signed_winding(const ClosedCurve& curve, int n_samples) {
  for (int n = std::max(n_samples, 16); n <= (1 << 22); n *= 2) {
    double total = 0.0;
    bool coarse = false;
    const CurveJet j0 = curve.jet(0.0);
    double prev = std::atan2(j0.d1.x2, j0.d1.x1);
    for (int i = 1; i <= n; ++i) {
      const CurveJet j = curve.jet(curve.period() * i / n);
      const double th = std::atan2(j.d1.x2, j.d1.x1);
      const double step = std::remainder(th - prev, kTwoPi);
      if (std::abs(step) > 0.5 * std::numbers::pi) coarse = true;
      total += step;
      prev = th;
    }
    if (coarse) continue;
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6)
      throw GeometryError(ErrorKind::NonIntegerWinding, "tangent longitude turns " + std::to_string(turns));
    return static_cast<int>(rounded);
  }
  throw GeometryError(ErrorKind::NonIntegerWinding, "tangent longitude could not be resolved");
}

int winding_index(const ClosedCurve& curve, int n_samples) { return std::abs(signed_winding(curve, n_samples)); }

double total_curvature(const ClosedCurve& curve) {
  const auto integrand = [&curve](double t) {
    const CurveJet j = curve.jet(t);
    const double g11 = minkowski_inner(j.d1, j.d1);
    const double g12 = minkowski_inner(j.d1, j.d2);
    const double g22 = minkowski_inner(j.d2, j.d2);
    if (!(g11 > 0.0)) throw GeometryError(ErrorKind::NotSpacelike, "tangent is not spacelike", t);
    const double gram = g11 * g22 - g12 * g12;
    if (!(gram > 0.0)) throw GeometryError(ErrorKind::NotStrongSpacelike, "osculating plane is not spacelike", t);
    return std::sqrt(gram) / g11;
  };
  const std::vector<double> bps = curve.breakpoints();
  return integrate_adaptive(integrand, 0.0, curve.period(), bps);
}

}  // namespace crofton
