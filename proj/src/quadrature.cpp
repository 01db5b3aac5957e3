#include "crofton/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace crofton {

namespace {

constexpr int kOrder = 10;

struct GaussRule {
  std::array<double, kOrder> x{};  // on [-1, 1]
  std::array<double, kOrder> w{};
};

const GaussRule& rule() {
  static const GaussRule r = [] {
    using G = boost::math::quadrature::gauss<double, kOrder>;
    const auto& abscissa = G::abscissa();
    const auto& weights = G::weights();
    GaussRule out;
    int k = 0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      if (abscissa[i] == 0.0) {
        out.x[k] = 0.0;
        out.w[k++] = weights[i];
      } else {
        out.x[k] = abscissa[i];
        out.w[k++] = weights[i];
        out.x[k] = -abscissa[i];
        out.w[k++] = weights[i];
      }
    }
    return out;
  }();
  return r;
}

double wrap_into(double u, double period, double& turns) {
  turns = std::floor(u / period);
  double r = u - turns * period;
  if (r >= period) {  // rounding at the top edge
    r -= period;
    turns += 1.0;
  }
  if (r < 0.0) r = 0.0;
  return r;
}

}  // namespace

double integrate_gauss(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& g = rule();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < kOrder; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
  return acc * half;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints, double rel_tol) {
  std::vector<double> cuts{a};
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    parts.push_back(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, cuts[i], cuts[i + 1], 20, rel_tol));
  }
  return pairwise_sum(parts);
}

double pairwise_sum(std::span<const double> values) noexcept {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<double> panel_edges(double period, std::span<const double> breakpoints, int n_panels) {
  std::vector<double> cuts{0.0};
  for (double bp : breakpoints) {
    const double r = bp - std::floor(bp / period) * period;
    if (r > 1e-14 * period && r < period * (1.0 - 1e-14)) cuts.push_back(r);
  }
  cuts.push_back(period);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges;
  const int n = std::max(n_panels, static_cast<int>(cuts.size()));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    const int pieces = std::max(1, static_cast<int>(std::lround(n * width / period)));
    for (int j = 0; j < pieces; ++j) edges.push_back(cuts[i] + width * j / pieces);
  }
  edges.push_back(period);
  return edges;
}

ArcLengthTable::ArcLengthTable(Speed speed, double period, std::span<const double> breakpoints,
                               int n_panels)
    : speed_(std::move(speed)), period_(period), edges_(crofton::panel_edges(period, breakpoints, n_panels)) {
  cumulative_.assign(edges_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
    cumulative_[i + 1] = cumulative_[i] + panel_partial(i, edges_[i + 1]);
}

ArcLengthTable ArcLengthTable::unit_speed(double period, std::span<const double> breakpoints,
                                          int n_panels) {
  ArcLengthTable t;
  t.speed_ = [](double) { return 1.0; };
  t.period_ = period;
  t.unit_ = true;
  t.edges_ = crofton::panel_edges(period, breakpoints, n_panels);
  t.cumulative_ = t.edges_;
  return t;
}

double ArcLengthTable::panel_partial(std::size_t panel, double u) const {
  const double a = edges_[panel];
  if (u <= a) return 0.0;
  return integrate_gauss(speed_, a, u);
}

double ArcLengthTable::arclength_at(double u) const {
  double turns = 0.0;
  const double r = wrap_into(u, period_, turns);
  if (unit_) return r + turns * period_;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
  const std::size_t panel = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - edges_.begin()) - 1));
  const std::size_t p = std::min(panel, edges_.size() - 2);
  return cumulative_[p] + panel_partial(p, r) + turns * length();
}

double ArcLengthTable::param_at(double s) const {
  const double total = length();
  double turns = 0.0;
  const double r = wrap_into(s, total, turns);
  if (unit_) return r + turns * period_;

  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  std::size_t p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - cumulative_.begin()) - 1));
  p = std::min(p, edges_.size() - 2);

  double lo = edges_[p], hi = edges_[p + 1];
  const double s_lo = cumulative_[p], s_hi = cumulative_[p + 1];
  double u = lo + (hi - lo) * ((s_hi > s_lo) ? (r - s_lo) / (s_hi - s_lo) : 0.0);
  const double target = r - s_lo;
  const double f_tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(total, 1e-300);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = panel_partial(p, u) - target;
    if (std::abs(f) <= f_tol) break;
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / speed_(u);
    if (!(next >= lo && next <= hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step <= 1e-15 * std::max(1.0, period_) || hi - lo <= 1e-15 * period_) break;
  }
  return u + turns * period_;
}

std::vector<QuadratureNode> ArcLengthTable::nodes() const {
  const GaussRule& g = rule();
  std::vector<QuadratureNode> out;
  out.reserve((edges_.size() - 1) * kOrder);
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    const double half = 0.5 * (edges_[i + 1] - edges_[i]);
    const double mid = 0.5 * (edges_[i + 1] + edges_[i]);
    for (int k = 0; k < kOrder; ++k) out.push_back({mid + half * g.x[k], half * g.w[k]});
  }
  return out;
}

}  // namespace crofton
