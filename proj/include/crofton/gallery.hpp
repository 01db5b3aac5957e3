#pragma once

#include <array>
#include <cstdint>

#include "crofton/curve.hpp"
#include "crofton/desitter.hpp"

namespace crofton {

/// (r cos t, r sin t, 0), t in [0, 2 pi).
ClosedCurve circle(double radius = 1.0);

/// (a cos t, b sin t, 0).
ClosedCurve ellipse(double a, double b);

/// Height of the clam-shell curve over theta in [0, 4 pi): linear with slope
/// +-eps on [0, pi/2], [3pi/2, 5pi/2], [7pi/2, 4pi], cosine arcs in between.
/// Returns h and its first three derivatives; h' and h'' are continuous.
std::array<double, 4> clam_shell_height(double epsilon, double theta);

/// (cos theta, sin theta, h(theta)), theta in [0, 4 pi). Index 2. Throws
/// BadParameter unless 0 < eps < 1.
ClosedCurve clam_shell(double epsilon);

/// 2 pi / sqrt(1 - eps^2), the contribution of the linear pieces to the total
/// curvature of clam_shell(eps).
double clam_shell_bound(double epsilon);

/// Largest certified x3 amplitude of trefoil_spacelike; the certifier
/// boundary for kTrefoilDepth is near 0.4289.
inline constexpr double kTrefoilEpsMax = 0.4;
/// Depth of the planar diagram (2 + d cos 3t)(cos 2t, sin 2t); locally convex for d < 8/13.
inline constexpr double kTrefoilDepth = 0.5;

/// Trefoil diagram in the x1x2-plane lifted by x3 = eps sin 3t. Index 2.
/// Throws NotStrongSpacelike unless 0 < eps <= kTrefoilEpsMax.
ClosedCurve trefoil_spacelike(double epsilon);

/// Closed curve (cos t, b sin t, h(t)) with h a short random sine sum,
/// retried until it certifies strong spacelike with index 1. Deterministic in seed.
ClosedCurve random_fenchel_curve(std::uint64_t seed);

/// theta = t, phi = alpha sin(k t), t in [0, 2 I pi), reparametrized by arc
/// length. Throws NotSpacelike (with t) when cosh^2 phi - phi_t^2 <= 0 somewhere,
/// BadParameter for k < 0 or I < 1.
SphericalCurve wobble(double alpha, int k, int index = 1);

/// The equator traversed I times.
SphericalCurve equator(int index = 1);

/// theta = t, phi = gd^{-1}(w(t)) with w(t) = asin(rho cos 2t) / 2 and
/// rho = 1 - eps/2. Symmetric under theta -> -theta and theta -> pi - theta.
/// As eps -> 0 the curve approaches four lightlike arcs and its length tends to 0.
/// Throws BadParameter unless 0 < eps <= 1.
SphericalCurve quad_perturb(double epsilon);

}  // namespace crofton
