#include "crofton/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crofton/errors.hpp"
#include "crofton/random.hpp"

namespace crofton {

std::ostream& operator<<(std::ostream& os, const LorentzVector& v) {
  return os << '(' << v.x1 << ", " << v.x2 << ", " << v.x3 << ')';
}

double euclidean_norm(const LorentzVector& a) noexcept { return std::sqrt(euclidean_norm_sq(a)); }

bool is_finite(const LorentzVector& a) noexcept {
  return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3);
}

const char* to_string(CausalClass c) noexcept {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::Lightlike: return "Lightlike";
    case CausalClass::Timelike: return "Timelike";
  }
  return "Unknown";
}

CausalClass causal_type(const LorentzVector& x, double tol) {
  const double scale = euclidean_norm_sq(x);
  if (scale == 0.0) throw GeometryError(ErrorKind::ZeroVector, "causal type of the zero vector");
  const double q = minkowski_inner(x, x);
  if (q > tol * scale) return CausalClass::Spacelike;
  if (q < -tol * scale) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

CausalClass plane_causal_type(const LorentzVector& normal, double tol) {
  switch (causal_type(normal, tol)) {
    case CausalClass::Timelike: return CausalClass::Spacelike;
    case CausalClass::Spacelike: return CausalClass::Timelike;
    case CausalClass::Lightlike: return CausalClass::Lightlike;
  }
  return CausalClass::Lightlike;
}

LorentzTransform LorentzTransform::identity() noexcept { return LorentzTransform{}; }

LorentzTransform LorentzTransform::rotation_x3(double angle) noexcept {
  const double c = std::cos(angle), s = std::sin(angle);
  return from_matrix({c, -s, 0, s, c, 0, 0, 0, 1});
}

LorentzTransform LorentzTransform::boost_x1(double rapidity) noexcept {
  const double c = std::cosh(rapidity), s = std::sinh(rapidity);
  return from_matrix({1, 0, 0, 0, c, s, 0, s, c});
}

LorentzTransform LorentzTransform::from_matrix(const std::array<double, 9>& row_major) noexcept {
  LorentzTransform t;
  t.m_ = row_major;
  return t;
}

LorentzVector LorentzTransform::apply(const LorentzVector& v) const noexcept {
  return {m_[0] * v.x1 + m_[1] * v.x2 + m_[2] * v.x3,
          m_[3] * v.x1 + m_[4] * v.x2 + m_[5] * v.x3,
          m_[6] * v.x1 + m_[7] * v.x2 + m_[8] * v.x3};
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& o) const noexcept {
  std::array<double, 9> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[3 * i + j] += m_[3 * i + k] * o.m_[3 * k + j];
  return from_matrix(r);
}

double LorentzTransform::metric_defect() const noexcept {
  constexpr std::array<double, 3> eta{1.0, 1.0, -1.0};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += m_[3 * k + i] * eta[k] * m_[3 * k + j];
      const double target = (i == j) ? eta[i] : 0.0;
      worst = std::max(worst, std::abs(acc - target));
    }
  }
  return worst;
}

LorentzTransform make_transform(double angle, double rapidity) noexcept {
  return LorentzTransform::rotation_x3(angle) * LorentzTransform::boost_x1(rapidity);
}

LorentzTransform random_orthochronous_transform(std::uint64_t seed) noexcept {
  const double angle = 2.0 * std::numbers::pi * counter_uniform(seed, 0, kStreamTransform);
  const double rapidity = -2.0 + 4.0 * counter_uniform(seed, 1, kStreamTransform);
  return make_transform(angle, rapidity);
}

}  // namespace crofton
