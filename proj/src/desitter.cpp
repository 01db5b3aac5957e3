#include "crofton/desitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crofton/errors.hpp"

namespace crofton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class IndicatrixSource final : public SphericalSource {
 public:
  explicit IndicatrixSource(ClosedCurve curve) : curve_(std::move(curve)) {}

  double period() const override { return curve_.period(); }

  SphericalJet jet(double t) const override {
    const CurveJet j = curve_.jet(t);
    const double v2 = minkowski_inner(j.d1, j.d1);
    if (!(v2 > 0.0)) throw GeometryError(ErrorKind::NotSpacelike, "tangent is not spacelike", t);
    const double v = std::sqrt(v2);
    return {j.d1 / v, (j.d2 - (minkowski_inner(j.d1, j.d2) / v2) * j.d1) / v};
  }

  std::vector<double> breakpoints() const override { return curve_.breakpoints(); }
  std::string describe() const override { return "indicatrix(" + curve_.describe() + ")"; }

 private:
  ClosedCurve curve_;
};

class TransformedSphericalSource final : public SphericalSource {
 public:
  TransformedSphericalSource(LorentzTransform m, std::shared_ptr<const SphericalSource> base)
      : m_(m), base_(std::move(base)) {}
  double period() const override { return base_->period(); }
  SphericalJet jet(double u) const override {
    const SphericalJet j = base_->jet(u);
    return {m_ * j.point, m_ * j.velocity};
  }
  std::vector<double> breakpoints() const override { return base_->breakpoints(); }
  std::string describe() const override { return "transformed(" + base_->describe() + ")"; }

 private:
  LorentzTransform m_;
  std::shared_ptr<const SphericalSource> base_;
};

double spherical_speed(const SphericalSource& src, double u) {
  const SphericalJet j = src.jet(u);
  const double q = minkowski_inner(j.velocity, j.velocity);
  if (!(q > 0.0)) throw GeometryError(ErrorKind::NotSpacelike, "spherical curve is not spacelike", u);
  return std::sqrt(q);
}

double longitude_rate(const LorentzVector& p, const LorentzVector& v) noexcept {
  return (p.x1 * v.x2 - p.x2 * v.x1) / (p.x1 * p.x1 + p.x2 * p.x2);
}

}  // namespace

LatLong to_latlong(const LorentzVector& p) {
  if (std::abs(minkowski_inner(p, p) - 1.0) > 1e-8)
    throw GeometryError(ErrorKind::NotOnDeSitter, "point is not on the de Sitter sphere");
  double theta = std::atan2(p.x2, p.x1);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return {std::asinh(p.x3), theta};
}

LorentzVector from_latlong(double phi, double theta) noexcept {
  const double ch = std::cosh(phi);
  return {ch * std::cos(theta), ch * std::sin(theta), std::sinh(phi)};
}

SphericalJet LatLongSource::jet(double u) const {
  const Coords c = coords(u);
  const double ch = std::cosh(c.phi), sh = std::sinh(c.phi);
  const double ct = std::cos(c.theta), st = std::sin(c.theta);
  return {{ch * ct, ch * st, sh},
          {sh * c.dphi * ct - ch * st * c.dtheta, sh * c.dphi * st + ch * ct * c.dtheta, ch * c.dphi}};
}

SphericalCurve::SphericalCurve(std::shared_ptr<const SphericalSource> source, int n_panels)
    : source_(std::move(source)) {
  if (!source_) throw GeometryError(ErrorKind::BadParameter, "null spherical source");
  const SphericalSource* raw = source_.get();
  table_ = std::make_shared<const ArcLengthTable>([raw](double u) { return spherical_speed(*raw, u); },
                                                  source_->period(), source_->breakpoints(), n_panels);

  const double period = source_->period();
  for (int m = std::max(4 * n_panels, 4096); m <= (1 << 22); m *= 2) {
    std::vector<double> lift(static_cast<std::size_t>(m) + 1);
    bool coarse = false;
    double prev = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double u = period * i / m;
      const SphericalJet j = source_->jet(u);
      if (!(longitude_rate(j.point, j.velocity) > 0.0))
        throw GeometryError(ErrorKind::NotPositivelyOriented, "longitude must increase along the curve", u);
      const double th = std::atan2(j.point.x2, j.point.x1);
      if (i == 0) {
        lift[0] = th;
      } else {
        const double step = std::remainder(th - prev, kTwoPi);
        if (std::abs(step) > 0.5 * std::numbers::pi) coarse = true;
        lift[i] = lift[i - 1] + step;
      }
      prev = th;
    }
    if (coarse) continue;
    const double turns = (lift.back() - lift.front()) / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6 || rounded < 1.0)
      throw GeometryError(ErrorKind::NonIntegerWinding, "longitude turns " + std::to_string(turns));
    index_ = static_cast<int>(rounded);
    lift_ = std::make_shared<const std::vector<double>>(std::move(lift));
    return;
  }
  throw GeometryError(ErrorKind::NonIntegerWinding, "longitude could not be resolved");
}

double SphericalCurve::lifted_theta(double u_wrapped, double principal) const {
  const std::vector<double>& lift = *lift_;
  const std::size_t m = lift.size() - 1;
  const double pos = u_wrapped / source_->period() * static_cast<double>(m);
  const std::size_t i = std::min(m, static_cast<std::size_t>(std::lround(std::max(0.0, pos))));
  return principal + kTwoPi * std::round((lift[i] - principal) / kTwoPi);
}

SphericalSample SphericalCurve::sample(double u, double s) const {
  const double period = source_->period();
  double turns = std::floor(u / period);
  double r = u - turns * period;
  if (r >= period) {
    r -= period;
    turns += 1.0;
  }
  const SphericalJet j = source_->jet(r);
  const LorentzVector& p = j.point;
  const LorentzVector& v = j.velocity;
  const double speed = std::sqrt(minkowski_inner(v, v));

  SphericalSample out{};
  out.s = s;
  out.u = u;
  out.theta = lifted_theta(r, std::atan2(p.x2, p.x1)) + turns * kTwoPi * index_;
  out.phi = std::asinh(p.x3);
  out.dtheta = longitude_rate(p, v) / speed;
  out.dphi = v.x3 / std::cosh(out.phi) / speed;
  out.e1 = p;
  out.de1 = v / speed;
  return out;
}

SphericalSample SphericalCurve::at(double s) const { return sample(table_->param_at(s), s); }

SphericalSample SphericalCurve::at_param(double u) const { return sample(u, table_->arclength_at(u)); }

std::vector<double> SphericalCurve::breakpoints() const {
  std::vector<double> out;
  for (double b : source_->breakpoints()) out.push_back(table_->arclength_at(b));
  std::sort(out.begin(), out.end());
  return out;
}

SphericalCurve SphericalCurve::transformed(const LorentzTransform& m) const {
  return SphericalCurve(std::make_shared<TransformedSphericalSource>(m, source_),
                        static_cast<int>(table_->panel_edges().size()) - 1);
}

SphericalCurve tangent_indicatrix(const ClosedCurve& curve, int n_panels) {
  const int w = signed_winding(curve);
  ClosedCurve oriented = (w < 0) ? curve.reversed() : curve;
  return SphericalCurve(std::make_shared<IndicatrixSource>(std::move(oriented)), n_panels);
}

double arclength_identity_residual(const SphericalCurve& g, int n_samples) {
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const SphericalSample p = g.at(g.length() * i / n_samples);
    const double ch = std::cosh(p.phi);
    worst = std::max(worst, std::abs(ch * ch * p.dtheta * p.dtheta - p.dphi * p.dphi - 1.0));
  }
  return worst;
}

AdaptedFrame adapted_frame(const SphericalSample& p) noexcept {
  const double ch = std::cosh(p.phi), sh = std::sinh(p.phi);
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  return {{ch * ct, ch * st, sh}, {-st, ct, 0.0}, {sh * ct, sh * st, ch}, std::asinh(p.dphi)};
}

AdaptedFrame adapted_frame(const SphericalCurve& g, double s) { return adapted_frame(g.at(s)); }

LorentzVector pole_patch(const SphericalCurve& g, double s, double psi) {
  const AdaptedFrame f = adapted_frame(g, s);
  return std::sinh(psi) * f.e2 + std::cosh(psi) * f.e3;
}

LorentzVector GeodesicCircle::at(double u) const noexcept { return std::cos(u) * E1 + std::sin(u) * E2; }

GeodesicCircle geodesic_from_pole(const HyperbolicPoint& y) {
  const LorentzVector& p = y.vector();
  const double r = std::hypot(p.x1, p.x2);
  const LorentzVector e1 = (r > 1e-14 * euclidean_norm(p)) ? LorentzVector{p.x2 / r, -p.x1 / r, 0.0}
                                                           : LorentzVector{1.0, 0.0, 0.0};
  LorentzVector e2 = lorentz_cross(p, e1);
  e2 = e2 / std::sqrt(minkowski_inner(e2, e2));
  if (determinant(e1, e2, p) < 0.0) e2 = -e2;
  return {e1, e2, p};
}

// ---------------------------------------------------------------------------
// Intersection counting

namespace {

struct Cubic {
  double a, b, c, d;  // a x^3 + b x^2 + c x + d on [0, 1]
  double operator()(double x) const noexcept { return ((a * x + b) * x + c) * x + d; }
  double slope(double x) const noexcept { return (3.0 * a * x + 2.0 * b) * x + c; }
};

Cubic hermite(double g0, double g1, double m0, double m1) noexcept {
  return {2.0 * g0 + m0 - 2.0 * g1 + m1, -3.0 * g0 - 2.0 * m0 + 3.0 * g1 - m1, m0, g0};
}

// Critical points of the cubic strictly inside (0, 1), ascending.
int critical_points(const Cubic& p, double out[2]) noexcept {
  const double qa = 3.0 * p.a, qb = 2.0 * p.b, qc = p.c;
  int n = 0;
  const double scale = std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (scale == 0.0) return 0;
  if (std::abs(qa) <= 1e-14 * scale) {
    if (qb != 0.0) {
      const double x = -qc / qb;
      if (x > 0.0 && x < 1.0) out[n++] = x;
    }
    return n;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  double r1 = q / qa;
  double r2 = (q != 0.0) ? qc / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  if (r1 > 0.0 && r1 < 1.0) out[n++] = r1;
  if (r2 > 0.0 && r2 < 1.0 && r2 != r1) out[n++] = r2;
  return n;
}

inline bool positive(double v) noexcept { return v >= 0.0; }

}  // namespace

IntersectionCounter::IntersectionCounter(const SphericalCurve& g, int n_scan, double tol)
    : curve_(g), tol_(tol), n_scan_(std::max(n_scan, 16)) {
  fine_ = build_grid(2 * n_scan_);
}

IntersectionCounter::Grid IntersectionCounter::build_grid(int n) const {
  Grid grid;
  grid.n = n;
  grid.h = curve_.length() / n;
  grid.u.resize(static_cast<std::size_t>(n) + 1);
  grid.e1.resize(grid.u.size());
  grid.de1.resize(grid.u.size());
  for (int i = 0; i <= n; ++i) {
    const SphericalSample p = curve_.at(grid.h * i);
    grid.u[i] = p.u;
    grid.e1[i] = p.e1;
    grid.de1[i] = p.de1;
  }
  return grid;
}

IntersectionCounter::Samples IntersectionCounter::evaluate(const Grid& grid, const LorentzVector& y) const {
  Samples v;
  v.g.resize(grid.e1.size());
  v.dg.resize(grid.e1.size());
  for (std::size_t i = 0; i < grid.e1.size(); ++i) {
    v.g[i] = minkowski_inner(grid.e1[i], y);
    v.dg[i] = minkowski_inner(grid.de1[i], y);
  }
  return v;
}

IntersectionCounter::CellScan IntersectionCounter::scan(const Grid& grid, const Samples& v, int stride, double ynorm,
                                                        bool keep_cells) const {
  CellScan out;
  out.min_slope = std::numeric_limits<double>::infinity();
  const double tol_abs = tol_ * ynorm;
  const double width = grid.h * stride;
  const int cells = grid.n / stride;

  double max_abs = 0.0;
  for (int i = 0; i <= grid.n; i += stride) max_abs = std::max(max_abs, std::abs(v.g[i]));
  if (max_abs < tol_abs) {
    out.degenerate = true;
    out.min_slope = 0.0;
    return out;
  }

  double g0 = v.g[0];
  double d0 = v.dg[0];
  for (int c = 0; c < cells; ++c) {
    const int j = (c + 1) * stride;
    const double g1 = v.g[j];
    const double d1 = v.dg[j];
    if (std::abs(g0) < tol_abs && std::abs(d0) < tol_abs) out.degenerate = true;

    const double m0 = width * d0, m1 = width * d1;
    const bool same = positive(g0) == positive(g1);
    if (!(same && std::min(std::abs(g0), std::abs(g1)) > (4.0 / 27.0) * (std::abs(m0) + std::abs(m1)) + tol_abs)) {
      const Cubic p = hermite(g0, g1, m0, m1);
      double crit[2];
      const int nc = critical_points(p, crit);
      double xs[4] = {0.0, 0.0, 0.0, 1.0};
      int nx = 1;
      for (int k = 0; k < nc; ++k) {
        xs[nx++] = crit[k];
        if (std::abs(p(crit[k])) < tol_abs) out.degenerate = true;
      }
      xs[nx++] = 1.0;
      int roots = 0;
      double prev = g0;
      for (int k = 1; k < nx; ++k) {
        const double cur = (k == nx - 1) ? g1 : p(xs[k]);
        if (positive(prev) != positive(cur)) {
          ++roots;
          const double xr = xs[k - 1] + (xs[k] - xs[k - 1]) * prev / (prev - cur);
          out.min_slope = std::min(out.min_slope, std::abs(p.slope(xr)) / width / ynorm);
        }
        prev = cur;
      }
      if (roots > 0) {
        out.count += roots;
        if (keep_cells) out.cells.emplace_back(c, roots);
      }
    }
    g0 = g1;
    d0 = d1;
  }
  if (out.count == 0) out.min_slope = 0.0;
  return out;
}

std::vector<double> IntersectionCounter::locate_roots(const Grid& grid, int stride, const CellScan& cells,
                                                      const LorentzVector& y) const {
  std::vector<double> out;
  const double uspan = curve_.param_period();
  const auto g = [&](double u) { return minkowski_inner(curve_.point_at_param(u), y); };
  const auto bisect = [&](double lo, double hi, double glo) {
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, uspan); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (positive(gm) == positive(glo)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  const double width = grid.h * stride;
  for (const auto& [c, roots] : cells.cells) {
    const int i0 = c * stride, i1 = (c + 1) * stride;
    const double ua = grid.u[i0], ub = grid.u[i1];
    std::vector<double> cuts{ua};
    if (roots > 1) {
      const Cubic p = hermite(minkowski_inner(grid.e1[i0], y), minkowski_inner(grid.e1[i1], y),
                              width * minkowski_inner(grid.de1[i0], y), width * minkowski_inner(grid.de1[i1], y));
      double crit[2];
      const int nc = critical_points(p, crit);
      for (int k = 0; k < nc; ++k) cuts.push_back(ua + (ub - ua) * crit[k]);
    }
    cuts.push_back(ub);
    // Cell ends take the grid values so the signs agree with the scan.
    std::vector<double> values(cuts.size());
    values.front() = minkowski_inner(grid.e1[i0], y);
    values.back() = minkowski_inner(grid.e1[i1], y);
    for (std::size_t k = 1; k + 1 < cuts.size(); ++k) values[k] = g(cuts[k]);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (positive(values[k]) != positive(values[k + 1])) {
        out.push_back(curve_.arclength_at_param(bisect(cuts[k], cuts[k + 1], values[k])));
      }
    }
  }
  const double length = curve_.length();
  for (double& s : out) s -= std::floor(s / length) * length;
  std::sort(out.begin(), out.end());
  return out;
}

IntersectionResult IntersectionCounter::count(const LorentzVector& y, bool locate) const {
  if (euclidean_norm_sq(y) == 0.0) throw GeometryError(ErrorKind::ZeroVector, "pole is the zero vector");

  IntersectionResult result;
  const double ynorm = euclidean_norm(y);
  const Samples base = evaluate(fine_, y);
  const CellScan coarse = scan(fine_, base, 2, ynorm, false);
  CellScan fine = scan(fine_, base, 1, ynorm, locate);
  const Grid* grid = &fine_;
  Grid refined;
  int density = fine_.n;

  if (!coarse.degenerate && !fine.degenerate && coarse.count != fine.count) {
    bool stable = false;
    CellScan prev = fine;
    for (int n = 4 * n_scan_; n <= 64 * n_scan_; n *= 2) {
      refined = build_grid(n);
      CellScan next = scan(refined, evaluate(refined, y), 1, ynorm, locate);
      if (next.degenerate || next.count == prev.count) {
        fine = std::move(next);
        grid = &refined;
        density = n;
        stable = true;
        break;
      }
      prev = std::move(next);
    }
    if (!stable) fine.degenerate = true;
  }

  result.degenerate = coarse.degenerate || fine.degenerate;
  result.count = fine.count;
  result.min_transversality = fine.min_slope;
  result.scan_density = density;
  if (locate && !result.degenerate) {
    result.locations = locate_roots(*grid, 1, fine, y);
    double worst = std::numeric_limits<double>::infinity();
    for (double s : result.locations)
      worst = std::min(worst, std::abs(minkowski_inner(curve_.at(s).de1, y)) / euclidean_norm(y));
    result.min_transversality = result.locations.empty() ? 0.0 : worst;
  }
  return result;
}

IntersectionResult intersection_count(const SphericalCurve& g, const LorentzVector& y, int n_scan, double tol) {
  if (euclidean_norm_sq(y) == 0.0) throw GeometryError(ErrorKind::ZeroVector, "pole is the zero vector");
  return IntersectionCounter(g, n_scan, tol).count(y, true);
}

double lemma_threshold(const SphericalCurve& g, double safety, int n_samples) {
  double raw = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const SphericalSample p = g.at(g.length() * i / n_samples);
    const double sh = std::sinh(p.phi);
    const double th = std::tanh(std::asinh(p.dphi));
    const double denom = std::sqrt(sh * sh + th * th);
    if (denom > 0.0) raw = std::min(raw, std::cosh(p.phi) / denom);
  }
  if (!(raw < kLemmaSentinel)) return kLemmaSentinel;
  return std::min(kLemmaSentinel, 1.0 + safety * (raw - 1.0));
}

}  // namespace crofton
