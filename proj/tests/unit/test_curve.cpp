#include <doctest.h>

#include <cmath>
#include <vector>

#include "../support/oracles.hpp"
#include "crofton/curve.hpp"
#include "crofton/desitter.hpp"
#include "crofton/errors.hpp"
#include "crofton/gallery.hpp"

using namespace crofton;
using oracle::kPi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("no GeometryError thrown");
  return ErrorKind::SpecError;
}

// True when s is within `gap` of a breakpoint of an arc-length curve.
bool near_break(const ClosedCurve& c, double s, double gap) {
  for (double b : c.breakpoints())
    if (std::abs(std::remainder(s - b, c.period())) < gap) return true;
  return false;
}

}  // namespace

TEST_CASE("arc length of circles and the clam shell") {
  CHECK(std::abs(circle(1.0).length() - 2 * kPi) < 1e-10);
  CHECK(std::abs(circle(2.0).length() - 4 * kPi) < 1e-9);
  const ClosedCurve unit = reparametrize_arclength(circle(1.0), 1024);
  CHECK(std::abs(unit.period() - 2 * kPi) < 1e-10);

  const double L = clam_shell(0.5).length();
  CHECK(L < 4 * kPi / std::sqrt(0.75));
  CHECK(L > 4 * kPi * std::sqrt(0.75));
  CHECK(std::abs(L - oracle::clam_length(0.5)) < 1e-9);
}

TEST_CASE("arc-length reparametrization has unit speed") {
  for (const ClosedCurve& c : {clam_shell(0.5), ellipse(2.0, 1.0), trefoil_spacelike(0.05)}) {
    const ClosedCurve s = reparametrize_arclength(c);
    CHECK(s.is_arclength());
    CHECK(std::abs(s.period() - c.length()) < 1e-12 * c.length());
    for (int i = 0; i < 997; ++i) {
      const CurveJet j = s.jet(s.period() * i / 997);
      REQUIRE(std::abs(minkowski_inner(j.d1, j.d1) - 1.0) < 1e-8);
    }
    // Positions agree with the original parametrization.
    const double t = 0.37 * c.period();
    const LorentzVector p = c.position(t), q = s.position(c.arclength_table().arclength_at(t));
    CHECK(oracle::max_abs(p - q) < 1e-10);
  }
}

TEST_CASE("reparametrization rejects timelike tangents") {
  const ClosedCurve bad = make_fourier_curve(2 * kPi, {{0, 1, 0}}, {{0, 0, 1}}, {{0, 0, 1.2}});
  CHECK_FALSE(bad.is_spacelike());
  try {
    reparametrize_arclength(bad);
    FAIL("expected NotSpacelike");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::NotSpacelike);
    REQUIRE(e.where().has_value());
    // <gamma', gamma'> = 1 - 1.44 cos^2 t <= 0 at the reported t.
    CHECK(1.0 - 1.44 * std::pow(std::cos(*e.where()), 2) <= 0.0);
  }
  CHECK(kind_of([&] { bad.length(); }) == ErrorKind::NotSpacelike);
}

TEST_CASE("Frenet apparatus on circles") {
  for (double r : {1.0, 3.0}) {
    const ClosedCurve c = circle(r);
    for (double t : {0.0, 1.0, 4.0}) {
      const FrenetData f = frenet_apparatus(c, t);
      CHECK(f.k == doctest::Approx(1.0 / r).epsilon(1e-12));
      CHECK(std::abs(f.tau) < 1e-12);
      CHECK(oracle::max_abs(f.B - LorentzVector{0, 0, 1}) < 1e-12);
    }
  }
}

TEST_CASE("clam-shell curvature at theta = pi against finite differences") {
  const double eps = 0.5;
  const ClosedCurve c = clam_shell(eps);
  const FrenetData f = frenet_apparatus(c, kPi);
  // h' = 0, h'' = -eps at pi: k = sqrt(1 - h'^2 - h''^2) / (1 - h'^2).
  CHECK(f.k == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));

  const double h = 1e-4;
  const auto pos = [&](double t) { return c.position(t); };
  const LorentzVector d1 = oracle::central(pos, kPi, h);
  const LorentzVector d2 = (pos(kPi + h) - 2.0 * pos(kPi) + pos(kPi - h)) / (h * h);
  const double g11 = minkowski_inner(d1, d1), g12 = minkowski_inner(d1, d2), g22 = minkowski_inner(d2, d2);
  CHECK(std::abs(std::sqrt(g11 * g22 - g12 * g12) / std::pow(g11, 1.5) - f.k) < 1e-6);
}

TEST_CASE("Frenet equations match central differences") {
  const double h = 1e-4;
  for (const ClosedCurve& base : {clam_shell(0.5), trefoil_spacelike(0.05), ellipse(2.0, 1.0)}) {
    const ClosedCurve c = reparametrize_arclength(base);
    double worst = 0.0, ortho = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double s = c.period() * (i + 0.31) / 200;
      if (near_break(c, s, 3 * h)) continue;
      const FrenetData f = frenet_apparatus(c, s), fp = frenet_apparatus(c, s + h), fm = frenet_apparatus(c, s - h);
      const LorentzVector dT = (fp.T - fm.T) / (2 * h), dN = (fp.N - fm.N) / (2 * h), dB = (fp.B - fm.B) / (2 * h);
      worst = std::max({worst, oracle::max_abs(dT - f.k * f.N), oracle::max_abs(dN - (-f.k * f.T + f.tau * f.B)),
                        oracle::max_abs(dB - f.tau * f.N)});
      ortho = std::max({ortho, std::abs(minkowski_inner(f.T, f.T) - 1), std::abs(minkowski_inner(f.N, f.N) - 1),
                        std::abs(minkowski_inner(f.B, f.B) + 1), std::abs(minkowski_inner(f.T, f.N)),
                        std::abs(minkowski_inner(f.T, f.B)), std::abs(minkowski_inner(f.N, f.B))});
      REQUIRE(f.B.x3 > 0.0);
    }
    CHECK(worst < 1e-5);
    CHECK(ortho < 1e-8);
  }
}

TEST_CASE("strong spacelike certification") {
  CHECK(certify_strong_spacelike(circle(1.0)).verdict);
  for (int i = 1; i <= 9; ++i) CHECK(certify_strong_spacelike(clam_shell(0.1 * i)).verdict);
  const StrongSpacelikeReport r =
      certify_strong_spacelike(make_fourier_curve(2 * kPi, {{0, 1, 0}}, {{0, 0, 1}}, {{0, 0, 1.2}}));
  CHECK_FALSE(r.verdict);
  CHECK(r.min_speed_margin < 0.0);
  CHECK(std::abs(std::cos(r.worst_t)) > 0.9);
  // A planar figure eight has inflection points.
  CHECK_FALSE(certify_strong_spacelike(make_fourier_curve(2 * kPi, {{0, 0, 1}}, {{0, 0, 0, 0, 1}}, {{0}})).verdict);
}

TEST_CASE("winding index") {
  CHECK(winding_index(circle(1.0)) == 1);
  CHECK(winding_index(ellipse(3.0, 0.5)) == 1);
  CHECK(winding_index(clam_shell(0.5)) == 2);
  CHECK(winding_index(trefoil_spacelike(0.05)) == 2);
  CHECK(signed_winding(circle(1.0).reversed()) == -1);
  CHECK(winding_index(circle(1.0).reversed()) == 1);
}

TEST_CASE("total curvature") {
  CHECK(std::abs(total_curvature(circle(1.0)) - 2 * kPi) < 1e-9);
  CHECK(std::abs(total_curvature(circle(3.0)) - 2 * kPi) < 1e-9);
  CHECK(std::abs(total_curvature(ellipse(2.0, 1.0)) - 2 * kPi) < 1e-8);
  const double tc = total_curvature(clam_shell(0.6));
  CHECK(tc >= 2 * kPi / 0.8);
  CHECK(std::abs(tc - oracle::clam_total_curvature(0.6)) < 1e-8);
  CHECK(std::abs(tc - oracle::clam_total_curvature_closed(0.6)) < 1e-9);
}

TEST_CASE("total curvature equals the indicatrix length") {
  for (const ClosedCurve& c : {clam_shell(0.5), trefoil_spacelike(0.05), ellipse(2.0, 1.0), random_fenchel_curve(3)}) {
    const double tc = total_curvature(c);
    CHECK(std::abs(tangent_indicatrix(c).length() - tc) < 1e-6 * tc);
  }
}

TEST_CASE("invariance under orthochronous Lorentz transforms") {
  const ClosedCurve base = clam_shell(0.4);
  const double tc = total_curvature(base);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ClosedCurve m = base.transformed(random_orthochronous_transform(seed));
    CHECK(std::abs(total_curvature(m) - tc) < 1e-8 * tc);
    CHECK(winding_index(m) == 2);
    CHECK(certify_strong_spacelike(m).verdict);
  }
  const ClosedCurve bad = make_fourier_curve(2 * kPi, {{0, 1, 0}}, {{0, 0, 1}}, {{0, 0, 1.2}});
  CHECK_FALSE(certify_strong_spacelike(bad.transformed(random_orthochronous_transform(1))).verdict);
}

TEST_CASE("index-1 curves project to locally convex plane curves") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ClosedCurve c = random_fenchel_curve(seed);
    REQUIRE(winding_index(c) == 1);
    const int sign = signed_winding(c);
    for (int i = 0; i < 2000; ++i) {
      const CurveJet j = c.jet(c.period() * i / 2000);
      // d/dt of the tangent angle of the projection has the sign of the winding.
      REQUIRE(sign * (j.d1.x1 * j.d2.x2 - j.d1.x2 * j.d2.x1) > 0.0);
    }
  }
}

TEST_CASE("spline and Fourier inputs") {
  std::vector<std::array<double, 4>> pts;
  for (int i = 0; i < 64; ++i) {
    const double t = 2 * kPi * i / 64;
    pts.push_back({t, std::cos(t), std::sin(t), 0.0});
  }
  const ClosedCurve s = make_spline_curve(pts, 2 * kPi);
  CHECK(std::abs(s.length() - 2 * kPi) < 1e-5);
  CHECK(winding_index(s) == 1);
  CHECK(std::abs(total_curvature(s) - 2 * kPi) < 1e-6);
  CHECK(oracle::max_abs(s.position(2 * kPi * 5 / 64) - LorentzVector{std::cos(2 * kPi * 5 / 64), std::sin(2 * kPi * 5 / 64), 0}) < 1e-14);
  CHECK(oracle::max_abs(s.position(0.3) - s.position(0.3 + 2 * kPi)) < 1e-10);

  pts.resize(7);
  CHECK(kind_of([&] { make_spline_curve(pts, 2 * kPi); }) == ErrorKind::BadParameter);
  CHECK(kind_of([] { make_fourier_curve(2 * kPi, {{}}, {{0.0}}, {{0.0}}); }) == ErrorKind::BadParameter);
  CHECK(kind_of([] { make_fourier_curve(0.0, {{1.0}}, {{0.0}}, {{0.0}}); }) == ErrorKind::BadParameter);
}

TEST_CASE("frenet_apparatus reports inflections and timelike osculating planes") {
  const ClosedCurve eight = make_fourier_curve(2 * kPi, {{0, 0, 1}}, {{0, 0, 0, 0, 1}}, {{0}});
  // (sin t, sin 2t) has an inflection at t = 0.
  CHECK(kind_of([&] { frenet_apparatus(eight, 0.0); }) == ErrorKind::InflectionPoint);
  // A circle in the timelike x1x3-plane has curvature vector timelike: (cos t, 0, 0.5 sin t) has
  // tangent (-sin t, 0, 0.5 cos t), spacelike near t = pi/2.
  const ClosedCurve tilted = make_fourier_curve(2 * kPi, {{0, 1, 0}}, {{0}}, {{0, 0, 0.5}});
  CHECK(kind_of([&] { frenet_apparatus(tilted, kPi / 2); }) == ErrorKind::NotStrongSpacelike);
}
