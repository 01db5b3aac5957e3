#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crofton/curve.hpp"
#include "crofton/desitter.hpp"
#include "crofton/hyperbolic.hpp"

namespace crofton {

struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::string method;  // "quadrature", "monte_carlo" or "closed_form"
  std::int64_t n_samples = 0;
  std::optional<std::uint64_t> seed;
  double std_error = 0.0;
  std::int64_t degenerate = 0;
  double wall_time = 0.0;  // seconds; excluded from reproducibility comparisons
  bool passed = false;
  std::map<std::string, double> values;     // check-specific diagnostics
  std::map<std::string, std::string> notes;  // check-specific flags and messages

  /// Sets lhs, rhs and both residuals.
  void set_sides(double lhs_value, double rhs_value);
};

/// Tolerances of the verification ladder.
inline constexpr double kQuadratureRelTol = 1e-6;
inline constexpr double kInnerIntegralTol = 1e-8;
inline constexpr double kMcSigmas = 3.0;
inline constexpr double kMcRelTol = 1e-2;
inline constexpr double kGlobalAbsFloor = 1e-2;
inline constexpr double kInequalityTol = 1e-9;
inline constexpr int kMaxRedraws = 10;

/// 2 cosh R * 2 I pi - 2 L. Throws RadiusTooSmall if R violates either bound.
double localized_rhs(const SphericalCurve& g, double R);

struct QuadratureLhs {
  double value = 0.0;           // iterated integral with the psi-integral done numerically
  double closed_form = 0.0;     // same outer rule with the inner integral 2 cosh R theta' - 2
  double max_inner_error = 0.0; // max over nodes of |numeric inner - closed-form inner|
  int n_nodes = 0;
};

/// Integral over the pole patch of sinh|tau - psi| dpsi ds, outer rule on
/// n_s Gauss-Legendre panels in the curve parameter. Throws RadiusTooSmall.
QuadratureLhs localized_lhs_quadrature(const SphericalCurve& g, double R, int n_s = 2048);

/// Intersection counts at area-uniform poles of the disk of radius R.
/// Slot i uses sample_disk_point(R, seed, i, attempt) with the first
/// non-degenerate attempt; the per-slot results do not depend on `threads`.
struct PoleCounts {
  double R = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> counts;
  std::vector<int> attempts;  // redraw index used by each slot
  std::int64_t redraws = 0;
  std::map<int, std::int64_t> histogram;
};

/// Throws DegenerateDomain when a slot stays degenerate after kMaxRedraws redraws.
PoleCounts sample_pole_counts(const IntersectionCounter& counter, double R, std::int64_t n, std::uint64_t seed,
                              int threads = 1);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
  std::int64_t redraws = 0;
};

/// area(R) * mean(count - shift) with its standard error.
McEstimate mc_integral(const PoleCounts& counts, double shift = 0.0);

/// Monte Carlo estimate of the integral of n(Y-perp) over the disk of radius R.
McEstimate localized_lhs_mc(const SphericalCurve& g, double R, std::int64_t n, std::uint64_t seed, int threads = 1);

/// Localized identity by quadrature: passes when the relative residual is
/// below 1e-6 and the inner integral matches its closed form within 1e-8.
VerificationReport verify_localized_quadrature(const SphericalCurve& g, double R, int n_s = 2048);

/// Localized identity by Monte Carlo from precomputed counts: passes when
/// |MC - RHS| < 3 stderr and < 1% of RHS.
VerificationReport verify_localized_mc(const SphericalCurve& g, const PoleCounts& counts);

/// Global identity L - 2 I pi = -1/2 integral (n - 2I) dY with the integral
/// estimated on the disk of choose_radius(g, safety) and, for R-independence,
/// again on choose_radius(g, 2 * safety) with an independent seed.
VerificationReport global_residual(const SphericalCurve& g, std::int64_t n, std::uint64_t seed, double safety = 2.0,
                                   int threads = 1);

/// Same as global_residual, from counts already drawn on the two disks.
VerificationReport global_residual(const SphericalCurve& g, const PoleCounts& inner, const PoleCounts& outer);

/// Every spacelike or lightlike pole and every timelike pole (cos b, sin b, a)
/// with 1 < |a| < lemma_threshold meets g exactly 2I times.
VerificationReport verify_lemma_2i(const SphericalCurve& g, int n_each = 200, std::uint64_t seed = 0);

/// Total curvature against 2 pi. Throws NotStrongSpacelike (certifier) or WrongIndex.
/// notes["planar"] = "true" when the curve lies in a spacelike plane.
VerificationReport verify_fenchel(const ClosedCurve& curve, double tol = kInequalityTol);

/// Total curvature against 4 pi plus a search for poles with exactly two
/// intersections with the indicatrix. For a knotted curve the check passes iff
/// TC < 4 pi and no such pole is found; otherwise it only reports.
/// Throws NotStrongSpacelike or WrongIndex.
VerificationReport verify_fary_milnor(const ClosedCurve& curve, bool knotted, std::int64_t n_poles = 10000,
                                      std::uint64_t seed = 0, int threads = 1);

/// Throws NotStrongSpacelike with the report's margins unless the certifier passes.
void require_strong_spacelike(const ClosedCurve& curve);

}  // namespace crofton
