#pragma once

#include <array>
#include <cstdint>
#include <ostream>

namespace crofton {

/// A vector of the Lorentz space with inner product x1*y1 + x2*y2 - x3*y3.
/// x3 is the time axis.
struct LorentzVector {
  double x1{0.0};
  double x2{0.0};
  double x3{0.0};

  constexpr LorentzVector& operator+=(const LorentzVector& o) noexcept {
    x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  constexpr LorentzVector& operator-=(const LorentzVector& o) noexcept {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  constexpr LorentzVector& operator*=(double c) noexcept {
    x1 *= c; x2 *= c; x3 *= c;
    return *this;
  }

  friend constexpr bool operator==(const LorentzVector&, const LorentzVector&) = default;
};

constexpr LorentzVector operator+(LorentzVector a, const LorentzVector& b) noexcept { return a += b; }
constexpr LorentzVector operator-(LorentzVector a, const LorentzVector& b) noexcept { return a -= b; }
constexpr LorentzVector operator*(double c, LorentzVector a) noexcept { return a *= c; }
constexpr LorentzVector operator*(LorentzVector a, double c) noexcept { return a *= c; }
constexpr LorentzVector operator/(LorentzVector a, double c) noexcept { return a *= (1.0 / c); }
constexpr LorentzVector operator-(const LorentzVector& a) noexcept { return {-a.x1, -a.x2, -a.x3}; }

std::ostream& operator<<(std::ostream& os, const LorentzVector& v);

constexpr double minkowski_inner(const LorentzVector& a, const LorentzVector& b) noexcept {
  return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

constexpr double euclidean_norm_sq(const LorentzVector& a) noexcept {
  return a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
}

double euclidean_norm(const LorentzVector& a) noexcept;

bool is_finite(const LorentzVector& a) noexcept;

/// Lorentz cross product: <cross(a, b), c> = det(a, b, c) for every c.
constexpr LorentzVector lorentz_cross(const LorentzVector& a, const LorentzVector& b) noexcept {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, -(a.x1 * b.x2 - a.x2 * b.x1)};
}

constexpr double determinant(const LorentzVector& a, const LorentzVector& b,
                             const LorentzVector& c) noexcept {
  return a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1) +
         a.x3 * (b.x1 * c.x2 - b.x2 * c.x1);
}

enum class CausalClass { Spacelike, Lightlike, Timelike };

const char* to_string(CausalClass c) noexcept;

/// Relative band for classification: |<X,X>| <= tol * |X|^2 counts as lightlike.
inline constexpr double kCausalTolerance = 1e-9;

/// Throws GeometryError(ZeroVector) for the zero vector.
CausalClass causal_type(const LorentzVector& x, double tol = kCausalTolerance);

/// Causal class of the plane orthogonal to `normal`.
CausalClass plane_causal_type(const LorentzVector& normal, double tol = kCausalTolerance);

/// A 3x3 matrix preserving the Lorentz metric, restricted to the orthochronous
/// component (entry (3,3) positive).
class LorentzTransform {
 public:
  LorentzTransform() = default;

  static LorentzTransform identity() noexcept;
  /// Rotation by `angle` about the x3 axis.
  static LorentzTransform rotation_x3(double angle) noexcept;
  /// Boost in the x2-x3 plane, leaving the x1 axis fixed.
  static LorentzTransform boost_x1(double rapidity) noexcept;
  static LorentzTransform from_matrix(const std::array<double, 9>& row_major) noexcept;

  double operator()(int row, int col) const noexcept { return m_[3 * row + col]; }
  LorentzVector apply(const LorentzVector& v) const noexcept;
  LorentzVector operator*(const LorentzVector& v) const noexcept { return apply(v); }
  LorentzTransform operator*(const LorentzTransform& o) const noexcept;

  /// max |(M^T eta M - eta)_ij|
  double metric_defect() const noexcept;
  bool is_orthochronous() const noexcept { return m_[8] > 0.0; }

 private:
  std::array<double, 9> m_{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

/// rotation_x3(angle) * boost_x1(rapidity)
LorentzTransform make_transform(double angle, double rapidity) noexcept;

/// Rotation angle uniform in [0, 2pi), rapidity uniform in [-2, 2], drawn
/// from the counter-based generator so the result depends on `seed` only.
LorentzTransform random_orthochronous_transform(std::uint64_t seed) noexcept;

}  // namespace crofton
