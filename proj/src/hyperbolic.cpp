#include "crofton/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crofton/desitter.hpp"
#include "crofton/errors.hpp"
#include "crofton/random.hpp"

namespace crofton {

HyperbolicPoint::HyperbolicPoint(const LorentzVector& x) : x_(x) {
  if (!is_finite(x)) throw GeometryError(ErrorKind::NotInH2, "non-finite coordinates");
  const double defect = minkowski_inner(x, x) + 1.0;
  if (!(x.x3 > 0.0) || std::abs(defect) > 1e-10 * std::max(1.0, x.x3 * x.x3))
    throw GeometryError(ErrorKind::NotInH2, "point is not on the upper sheet of <x,x> = -1");
}

HyperbolicPoint HyperbolicPoint::from_polar(double r, double theta) {
  const double sh = std::sinh(r);
  return HyperbolicPoint({sh * std::cos(theta), sh * std::sin(theta), std::cosh(r)});
}

double HyperbolicPoint::radius() const noexcept { return std::acosh(std::max(1.0, x_.x3)); }

DiskRegion::DiskRegion(double radius) : R(radius) {
  if (radius < 0.0) throw GeometryError(ErrorKind::NegativeRadius, "disk radius is negative");
  if (!(radius > 0.0)) throw GeometryError(ErrorKind::BadParameter, "disk radius must be positive");
}

bool DiskRegion::contains(const HyperbolicPoint& y) const noexcept {
  return y.vector().x3 <= std::cosh(R) * (1.0 + 1e-14);
}

double DiskRegion::area() const { return h2_area(R); }

double h2_area(double R) {
  if (R < 0.0) throw GeometryError(ErrorKind::NegativeRadius, "radius is negative");
  // cosh R - 1 = 2 sinh^2(R/2) avoids cancellation for small R.
  const double sh = std::sinh(0.5 * R);
  return 4.0 * std::numbers::pi * sh * sh;
}

HyperbolicPoint sample_disk_point(double R, std::uint64_t seed, std::uint64_t index, std::uint32_t attempt) {
  const std::uint64_t counter = (index << 4) | (attempt & 0xFu);
  const double u = counter_uniform(seed, counter, kStreamDiskRadius);
  const double theta = 2.0 * std::numbers::pi * counter_uniform(seed, counter, kStreamDiskAngle);
  const double sh = std::sinh(0.5 * R);
  const double t = u * 2.0 * sh * sh;  // x3 - 1
  const double rho = std::sqrt(t * (t + 2.0));
  return HyperbolicPoint({rho * std::cos(theta), rho * std::sin(theta), 1.0 + t});
}

std::vector<HyperbolicPoint> sample_disk(double R, std::size_t n, std::uint64_t seed) {
  if (!(R > 0.0)) throw GeometryError(R < 0.0 ? ErrorKind::NegativeRadius : ErrorKind::BadParameter, "R must be > 0");
  std::vector<HyperbolicPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_disk_point(R, seed, i));
  return out;
}

double pole_patch_area_element(double tau, double psi) noexcept { return std::sinh(std::abs(tau - psi)); }

RadiusBounds radius_bounds(const SphericalCurve& g, int n_samples) {
  RadiusBounds b{0.0, 0.0};
  for (int i = 0; i < n_samples; ++i) {
    const SphericalSample p = g.at(g.length() * i / n_samples);
    const double ch = std::cosh(p.phi);
    b.max_cosh_phi = std::max(b.max_cosh_phi, ch);
    b.max_cosh2_phi_dtheta = std::max(b.max_cosh2_phi_dtheta, ch * ch * p.dtheta);
  }
  return b;
}

double choose_radius(const SphericalCurve& g, double safety) {
  if (!(safety >= 1.0)) throw GeometryError(ErrorKind::BadParameter, "safety factor must be >= 1");
  const RadiusBounds b = radius_bounds(g);
  const double m = std::max({b.max_cosh_phi, b.max_cosh2_phi_dtheta, 1.0});
  return std::acosh(std::max(safety, 1.0 + kRadiusFloor) * m);
}

void check_radius(const SphericalCurve& g, double R) {
  if (R < 0.0) throw GeometryError(ErrorKind::NegativeRadius, "radius is negative");
  const RadiusBounds b = radius_bounds(g);
  const double c = std::cosh(R);
  if (!(b.max_cosh_phi < c))
    throw GeometryError(ErrorKind::RadiusTooSmall,
                        "cosh R = " + std::to_string(c) + " <= max cosh phi = " + std::to_string(b.max_cosh_phi));
  if (!(b.max_cosh2_phi_dtheta < c))
    throw GeometryError(ErrorKind::RadiusTooSmall, "cosh R = " + std::to_string(c) +
                                                       " <= max cosh^2 phi theta' = " +
                                                       std::to_string(b.max_cosh2_phi_dtheta));
}

}  // namespace crofton
