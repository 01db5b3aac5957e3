#include "crofton/gallery.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "crofton/errors.hpp"
#include "crofton/random.hpp"

namespace crofton {

namespace {

constexpr double kPi = std::numbers::pi;

class ClamShellSource final : public CurveSource {
 public:
  explicit ClamShellSource(double eps) : eps_(eps) {}
  double period() const override { return 4.0 * kPi; }
  CurveJet jet(double t) const override {
    const auto h = clam_shell_height(eps_, t);
    const double c = std::cos(t), s = std::sin(t);
    return {{c, s, h[0]}, {-s, c, h[1]}, {-c, -s, h[2]}, {s, -c, h[3]}};
  }
  std::vector<double> breakpoints() const override {
    return {0.0, 0.5 * kPi, 1.5 * kPi, 2.5 * kPi, 3.5 * kPi};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "clam_shell(epsilon=" << eps_ << ')';
    return os.str();
  }

 private:
  double eps_;
};

class WobbleSource final : public LatLongSource {
 public:
  WobbleSource(double alpha, int k, int index) : alpha_(alpha), k_(k), index_(index) {}
  double period() const override { return 2.0 * kPi * index_; }
  Coords coords(double t) const override {
    return {t, alpha_ * std::sin(k_ * t), 1.0, alpha_ * k_ * std::cos(k_ * t)};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "wobble(alpha=" << alpha_ << ", k=" << k_ << ", I=" << index_ << ')';
    return os.str();
  }

 private:
  double alpha_;
  int k_;
  int index_;
};

class QuadSource final : public LatLongSource {
 public:
  explicit QuadSource(double eps) : eps_(eps), rho_(1.0 - 0.5 * eps) {}
  double period() const override { return 2.0 * kPi; }
  Coords coords(double t) const override {
    const double c2 = std::cos(2.0 * t);
    const double w = 0.5 * std::asin(rho_ * c2);
    const double dw = -rho_ * std::sin(2.0 * t) / std::sqrt(1.0 - rho_ * rho_ * c2 * c2);
    return {t, std::asinh(std::tan(w)), 1.0, dw / std::cos(w)};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "quad_perturb(epsilon=" << eps_ << ')';
    return os.str();
  }

 private:
  double eps_;
  double rho_;
};

void require_open_unit(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0))
    throw GeometryError(ErrorKind::BadParameter, std::string(what) + ": epsilon must lie in (0, 1)");
}

}  // namespace

ClosedCurve circle(double radius) { return ellipse(radius, radius); }

ClosedCurve ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw GeometryError(ErrorKind::BadParameter, "semi-axes must be positive");
  return make_fourier_curve(2.0 * kPi, {{0.0, a, 0.0}}, {{0.0, 0.0, b}}, {{0.0}});
}

std::array<double, 4> clam_shell_height(double e, double theta) {
  double t = std::fmod(theta, 4.0 * kPi);
  if (t < 0.0) t += 4.0 * kPi;
  const double c = std::cos(t), s = std::sin(t);
  if (t < 0.5 * kPi) return {e * t, e, 0.0, 0.0};
  if (t < 1.5 * kPi) return {0.5 * kPi * e - e * c, e * s, e * c, -e * s};
  if (t < 2.5 * kPi) return {-e * (t - 2.0 * kPi), -e, 0.0, 0.0};
  if (t < 3.5 * kPi) return {-0.5 * kPi * e + e * c, -e * s, -e * c, e * s};
  return {e * (t - 4.0 * kPi), e, 0.0, 0.0};
}

ClosedCurve clam_shell(double epsilon) {
  require_open_unit(epsilon, "clam_shell");
  return ClosedCurve(std::make_shared<ClamShellSource>(epsilon));
}

double clam_shell_bound(double epsilon) {
  require_open_unit(epsilon, "clam_shell_bound");
  return 2.0 * kPi / std::sqrt(1.0 - epsilon * epsilon);
}

ClosedCurve trefoil_spacelike(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= kTrefoilEpsMax))
    throw GeometryError(ErrorKind::NotStrongSpacelike,
                        "trefoil is certified only for 0 < epsilon <= " + std::to_string(kTrefoilEpsMax));
  const double h = 0.5 * kTrefoilDepth;
  // (2 + d cos 3t) cos 2t = 2 cos 2t + (d/2)(cos t + cos 5t), and likewise for sin.
  FourierSeries x1{{0.0, h, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0}};
  FourierSeries x2{{0.0, 0.0, -h, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, h}};
  FourierSeries x3{{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, epsilon}};
  return make_fourier_curve(2.0 * kPi, std::move(x1), std::move(x2), std::move(x3));
}

ClosedCurve random_fenchel_curve(std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t base = attempt * 16;
    const auto u = [&](std::uint64_t i) { return counter_uniform(seed, base + i, kStreamGallery); };
    const double b = 0.85 + 0.3 * u(0);
    // Two sine modes with sum amp_j k_j^2 <= 0.6 keep h'^2 + h''^2 well below b^2.
    std::vector<double> x3(9, 0.0);
    double budget = 0.6 * u(1);
    for (int mode = 0; mode < 2; ++mode) {
      const int k = 1 + static_cast<int>(4.0 * u(2 + 3 * mode));
      const double share = (mode == 0) ? u(3 + 3 * mode) : 1.0;
      const double amp = budget * share / (k * k);
      budget -= amp * k * k;
      const double phase = 2.0 * kPi * u(4 + 3 * mode);
      x3[2 * k - 1] += amp * std::sin(phase);
      x3[2 * k] += amp * std::cos(phase);
    }
    ClosedCurve c = make_fourier_curve(2.0 * kPi, {{0.0, 1.0, 0.0}}, {{0.0, 0.0, b}}, {std::move(x3)});
    if (!c.is_spacelike() || !certify_strong_spacelike(c).verdict) continue;
    try {
      if (winding_index(c) == 1) return c;
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError(ErrorKind::BadParameter, "no admissible curve for seed " + std::to_string(seed));
}

SphericalCurve wobble(double alpha, int k, int index) {
  if (k < 0 || index < 1) throw GeometryError(ErrorKind::BadParameter, "wobble needs k >= 0 and I >= 1");
  if (!std::isfinite(alpha)) throw GeometryError(ErrorKind::BadParameter, "wobble amplitude must be finite");
  const int n = 8192 * index;
  const double period = 2.0 * kPi * index;
  for (int i = 0; i < n; ++i) {
    const double t = period * i / n;
    const double ch = std::cosh(alpha * std::sin(k * t));
    const double dphi = alpha * k * std::cos(k * t);
    if (!(ch * ch - dphi * dphi > 0.0))
      throw GeometryError(ErrorKind::NotSpacelike, "wobble is not spacelike", t);
  }
  return SphericalCurve(std::make_shared<WobbleSource>(alpha, k, index));
}

SphericalCurve equator(int index) { return wobble(0.0, 0, index); }

SphericalCurve quad_perturb(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw GeometryError(ErrorKind::BadParameter, "quad_perturb: epsilon must lie in (0, 1]");
  return SphericalCurve(std::make_shared<QuadSource>(epsilon));
}

}  // namespace crofton
