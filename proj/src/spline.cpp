#include "crofton/spline.hpp"

#include <algorithm>
#include <cmath>

#include "crofton/errors.hpp"

namespace crofton {

namespace {

std::vector<double> thomas(std::vector<double> a, std::vector<double> b, std::vector<double> c,
                           std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

}  // namespace

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n < 3) throw GeometryError(ErrorKind::BadParameter, "cyclic system needs at least 3 unknowns");
  const double alpha = upper[n - 1];  // corner (n-1, 0)
  const double beta = lower[0];       // corner (0, n-1)
  const double gamma = -diag[0];

  std::vector<double> a(lower.begin(), lower.end()), b(diag.begin(), diag.end()), c(upper.begin(), upper.end());
  a[0] = 0.0;
  c[n - 1] = 0.0;
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;

  const std::vector<double> x = thomas(a, b, c, std::vector<double>(rhs.begin(), rhs.end()));
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const std::vector<double> z = thomas(a, b, c, u);

  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
  return out;
}

PeriodicCubicSpline::PeriodicCubicSpline(std::vector<double> knots, std::vector<double> values, double period)
    : knots_(std::move(knots)), values_(std::move(values)), period_(period) {
  const std::size_t n = knots_.size();
  if (n < 3 || values_.size() != n)
    throw GeometryError(ErrorKind::BadParameter, "periodic spline needs matching knots and values, at least 3");
  if (!(period > 0.0) || knots_.back() - knots_.front() >= period)
    throw GeometryError(ErrorKind::BadParameter, "spline knots must span less than one period");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(knots_[i + 1] > knots_[i]))
      throw GeometryError(ErrorKind::BadParameter, "spline knots must be strictly increasing");

  knots_.push_back(knots_.front() + period);
  values_.push_back(values_.front());

  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = knots_[i + 1] - knots_[i];

  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    lower[i] = h[prev];
    diag[i] = 2.0 * (h[prev] + h[i]);
    upper[i] = h[i];
    const double y_prev = values_[prev];
    rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / h[i] - (values_[i] - y_prev) / h[prev]);
  }
  second_ = solve_cyclic_tridiagonal(lower, diag, upper, rhs);
  second_.push_back(second_.front());
}

PeriodicCubicSpline::Jet PeriodicCubicSpline::eval(double t) const {
  const double t0 = knots_.front();
  double r = t - t0 - std::floor((t - t0) / period_) * period_;
  if (r >= period_) r = 0.0;
  const double x = t0 + r;

  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - knots_.begin()) - 1));
  i = std::min(i, knots_.size() - 2);

  const double h = knots_[i + 1] - knots_[i];
  const double a = knots_[i + 1] - x, b = x - knots_[i];
  const double m0 = second_[i], m1 = second_[i + 1];
  const double c0 = values_[i] / h - m0 * h / 6.0;
  const double c1 = values_[i + 1] / h - m1 * h / 6.0;

  Jet j{};
  j.value = m0 * a * a * a / (6.0 * h) + m1 * b * b * b / (6.0 * h) + c0 * a + c1 * b;
  j.d1 = -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) - c0 + c1;
  j.d2 = (m0 * a + m1 * b) / h;
  j.d3 = (m1 - m0) / h;
  return j;
}

}  // namespace crofton
