#pragma once

#include <cstdint>
#include <vector>

#include "crofton/lorentz.hpp"

namespace crofton {

class SphericalCurve;

/// A point of the upper sheet x1^2 + x2^2 - x3^2 = -1, x3 >= 1; also the pole
/// of an oriented closed spacelike geodesic of the de Sitter sphere.
class HyperbolicPoint {
 public:
  /// Validates the hyperboloid constraint within 1e-10 (relative to x3^2).
  /// Throws NotInH2.
  explicit HyperbolicPoint(const LorentzVector& x);

  /// (sinh r cos theta, sinh r sin theta, cosh r)
  static HyperbolicPoint from_polar(double r, double theta);

  const LorentzVector& vector() const noexcept { return x_; }
  double radius() const noexcept;

 private:
  LorentzVector x_;
};

/// The closed geodesic disk of hyperbolic radius R about (0, 0, 1).
struct DiskRegion {
  double R;

  explicit DiskRegion(double radius);
  bool contains(const HyperbolicPoint& y) const noexcept;
  double area() const;
};

/// Area of the hyperbolic disk of radius R: 2 pi (cosh R - 1). Throws NegativeRadius.
double h2_area(double R);

/// Point `index` of the area-uniform sample of the disk of radius R.
/// `attempt` selects an independent redraw for the same slot.
HyperbolicPoint sample_disk_point(double R, std::uint64_t seed, std::uint64_t index, std::uint32_t attempt = 0);

/// n points, i.i.d. uniform in hyperbolic area on the disk of radius R.
std::vector<HyperbolicPoint> sample_disk(double R, std::size_t n, std::uint64_t seed);

/// sinh|tau - psi|: the area element of the pole patch in (s, psi) coordinates.
double pole_patch_area_element(double tau, double psi) noexcept;

/// Grid maxima entering the two radius conditions of the localized Crofton
/// formula: max cosh(phi) and max cosh(phi)^2 * theta'.
struct RadiusBounds {
  double max_cosh_phi;
  double max_cosh2_phi_dtheta;
};

RadiusBounds radius_bounds(const SphericalCurve& g, int n_samples = 8192);

inline constexpr double kRadiusFloor = 1e-6;

/// R with cosh R = max(safety, 1 + 1e-6) * max(max cosh phi, max cosh^2 phi theta', 1).
double choose_radius(const SphericalCurve& g, double safety = 2.0);

/// Throws RadiusTooSmall unless both radius conditions hold strictly.
void check_radius(const SphericalCurve& g, double R);

}  // namespace crofton
