#include "crofton/crofton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "crofton/errors.hpp"
#include "crofton/quadrature.hpp"
#include "crofton/random.hpp"

namespace crofton {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs body(i) for i in [0, n) on up to `threads` workers, contiguous blocks.
template <class Body>
void parallel_for(std::int64_t n, int threads, Body&& body) {
  const std::int64_t workers = std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(1, n));
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t i = n * w / workers; i < n * (w + 1) / workers; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double mean_of(const std::vector<double>& v) { return v.empty() ? 0.0 : pairwise_sum(v) / v.size(); }

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  return std::sqrt(pairwise_sum(sq) / (v.size() - 1));
}

// |a - b| within k sigma, where sigma = 0 admits only rounding-level differences.
bool within_sigmas(double a, double b, double sigma, double k) {
  const double diff = std::abs(a - b);
  if (sigma > 0.0) return diff < k * sigma;
  return diff <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

LorentzVector pole_direction(double beta, double a) { return {std::cos(beta), std::sin(beta), a}; }

}  // namespace

void VerificationReport::set_sides(double lhs_value, double rhs_value) {
  lhs = lhs_value;
  rhs = rhs_value;
  abs_residual = std::abs(lhs - rhs);
  rel_residual = (rhs != 0.0) ? abs_residual / std::abs(rhs) : abs_residual;
}

double localized_rhs(const SphericalCurve& g, double R) {
  check_radius(g, R);
  return 2.0 * std::cosh(R) * 2.0 * kPi * g.index() - 2.0 * g.length();
}

QuadratureLhs localized_lhs_quadrature(const SphericalCurve& g, double R, int n_s) {
  check_radius(g, R);
  const double coshR = std::cosh(R);
  std::vector<double> bps;
  for (double s : g.breakpoints()) bps.push_back(g.param_at(s));
  const std::vector<double> edges = panel_edges(g.param_period(), bps, n_s);
  const ArcLengthTable& table = g.arclength_table();

  QuadratureLhs out;
  std::vector<double> numeric, closed;
  const auto inner = [&](double u, bool exact) {
    const SphericalSample p = g.at_param(u, std::numeric_limits<double>::quiet_NaN());
    const double speed = table.speed(u);
    if (exact) return (2.0 * coshR * p.dtheta - 2.0) * speed;
    const double tau = std::asinh(p.dphi);
    const double psi2 = std::acosh(coshR / std::cosh(p.phi));
    if (!(tau > -psi2 && tau < psi2))
      throw GeometryError(ErrorKind::RadiusTooSmall, "tau outside the pole patch", g.arclength_at_param(u));
    const double bp[] = {tau};
    const double val = integrate_adaptive([tau](double psi) { return pole_patch_area_element(tau, psi); }, -psi2,
                                          psi2, bp);
    out.max_inner_error = std::max(out.max_inner_error, std::abs(val - (2.0 * coshR * p.dtheta - 2.0)));
    ++out.n_nodes;
    return val * speed;
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    numeric.push_back(integrate_gauss([&](double u) { return inner(u, false); }, edges[i], edges[i + 1]));
    closed.push_back(integrate_gauss([&](double u) { return inner(u, true); }, edges[i], edges[i + 1]));
  }
  out.value = pairwise_sum(numeric);
  out.closed_form = pairwise_sum(closed);
  return out;
}

PoleCounts sample_pole_counts(const IntersectionCounter& counter, double R, std::int64_t n, std::uint64_t seed,
                              int threads) {
  if (n < 1) throw GeometryError(ErrorKind::BadParameter, "sample count must be >= 1");
  PoleCounts out;
  out.R = R;
  out.seed = seed;
  out.counts.assign(static_cast<std::size_t>(n), 0);
  out.attempts.assign(static_cast<std::size_t>(n), 0);
  parallel_for(n, threads, [&](std::int64_t i) {
    for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
      const HyperbolicPoint y = sample_disk_point(R, seed, static_cast<std::uint64_t>(i), attempt);
      const IntersectionResult r = counter.count(y.vector());
      if (!r.degenerate) {
        out.counts[static_cast<std::size_t>(i)] = r.count;
        out.attempts[static_cast<std::size_t>(i)] = attempt;
        return;
      }
    }
    throw GeometryError(ErrorKind::DegenerateDomain,
                        "pole slot " + std::to_string(i) + " degenerate after " + std::to_string(kMaxRedraws) +
                            " redraws");
  });
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    out.redraws += out.attempts[i];
    ++out.histogram[out.counts[i]];
  }
  return out;
}

McEstimate mc_integral(const PoleCounts& counts, double shift) {
  std::vector<double> v(counts.counts.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = counts.counts[i] - shift;
  const double area = h2_area(counts.R);
  const double mean = mean_of(v);
  McEstimate e;
  e.n = static_cast<std::int64_t>(v.size());
  e.estimate = area * mean;
  e.std_error = area * sample_sd(v, mean) / std::sqrt(static_cast<double>(v.size()));
  e.redraws = counts.redraws;
  return e;
}

McEstimate localized_lhs_mc(const SphericalCurve& g, double R, std::int64_t n, std::uint64_t seed, int threads) {
  check_radius(g, R);
  const IntersectionCounter counter(g);
  return mc_integral(sample_pole_counts(counter, R, n, seed, threads));
}

VerificationReport verify_localized_quadrature(const SphericalCurve& g, double R, int n_s) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.name = "crofton-local";
  r.method = "quadrature";
  const QuadratureLhs q = localized_lhs_quadrature(g, R, n_s);
  r.set_sides(q.value, localized_rhs(g, R));
  r.n_samples = q.n_nodes;
  r.values["R"] = R;
  r.values["cosh_R"] = std::cosh(R);
  r.values["lhs_closed_form_inner"] = q.closed_form;
  r.values["max_inner_error"] = q.max_inner_error;
  r.values["length"] = g.length();
  r.values["index"] = g.index();
  r.passed = r.rel_residual < kQuadratureRelTol && q.max_inner_error < kInnerIntegralTol;
  r.wall_time = seconds_since(t0);
  return r;
}

VerificationReport verify_localized_mc(const SphericalCurve& g, const PoleCounts& counts) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.name = "crofton-local";
  r.method = "monte_carlo";
  const McEstimate e = mc_integral(counts);
  r.set_sides(e.estimate, localized_rhs(g, counts.R));
  r.n_samples = e.n;
  r.seed = counts.seed;
  r.std_error = e.std_error;
  r.degenerate = e.redraws;
  r.values["R"] = counts.R;
  r.values["length"] = g.length();
  r.values["index"] = g.index();
  for (const auto& [c, k] : counts.histogram) r.values["count_" + std::to_string(c)] = static_cast<double>(k);
  r.passed = within_sigmas(r.lhs, r.rhs, r.std_error, kMcSigmas) && r.rel_residual < kMcRelTol;
  r.wall_time = seconds_since(t0);
  return r;
}

VerificationReport global_residual(const SphericalCurve& g, const PoleCounts& inner, const PoleCounts& outer) {
  const auto t0 = Clock::now();
  const double shift = 2.0 * g.index();
  const McEstimate a = mc_integral(inner, shift);
  const McEstimate b = mc_integral(outer, shift);

  VerificationReport r;
  r.name = "crofton-global";
  r.method = "monte_carlo";
  // L - 2 I pi against -1/2 integral (n - 2I) dY.
  r.set_sides(g.length() - 2.0 * kPi * g.index(), -0.5 * a.estimate);
  r.n_samples = a.n;
  r.seed = inner.seed;
  r.std_error = 0.5 * a.std_error;
  r.degenerate = a.redraws + b.redraws;

  const double finite_rhs = -2.0 * g.length() + 4.0 * kPi * g.index();
  const double r_diff = std::abs(a.estimate - b.estimate);
  const double r_sigma = std::hypot(a.std_error, b.std_error);
  r.values["R"] = inner.R;
  r.values["R_outer"] = outer.R;
  r.values["outer_seed"] = static_cast<double>(outer.seed);
  r.values["integral"] = a.estimate;
  r.values["integral_stderr"] = a.std_error;
  r.values["integral_outer"] = b.estimate;
  r.values["integral_outer_stderr"] = b.std_error;
  r.values["finite_R_rhs"] = finite_rhs;
  r.values["R_independence_diff"] = r_diff;
  r.values["R_independence_sigma"] = r_sigma;

  const bool residual_ok = r.abs_residual < std::max(kMcSigmas * r.std_error, kGlobalAbsFloor);
  const bool finite_ok = std::abs(a.estimate - finite_rhs) < std::max(kMcSigmas * a.std_error, 2.0 * kGlobalAbsFloor);
  const bool independent_ok = within_sigmas(a.estimate, b.estimate, r_sigma, kMcSigmas);
  r.notes["residual_within_tolerance"] = residual_ok ? "true" : "false";
  r.notes["finite_R_identity"] = finite_ok ? "true" : "false";
  r.notes["R_independent"] = independent_ok ? "true" : "false";
  r.passed = residual_ok && finite_ok && independent_ok;
  r.wall_time = seconds_since(t0);
  return r;
}

VerificationReport global_residual(const SphericalCurve& g, std::int64_t n, std::uint64_t seed, double safety,
                                   int threads) {
  const auto t0 = Clock::now();
  const IntersectionCounter counter(g);
  const PoleCounts inner = sample_pole_counts(counter, choose_radius(g, safety), n, seed, threads);
  const PoleCounts outer = sample_pole_counts(counter, choose_radius(g, 2.0 * safety), n, seed + 1, threads);
  VerificationReport r = global_residual(g, inner, outer);
  r.wall_time = seconds_since(t0);
  return r;
}

VerificationReport verify_lemma_2i(const SphericalCurve& g, int n_each, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const IntersectionCounter counter(g);
  const double a_star = lemma_threshold(g);
  const int target = 2 * g.index();
  int bad_causal = 0, bad_timelike = 0, degenerate = 0;
  double min_margin = std::numeric_limits<double>::infinity();

  const auto check = [&](const LorentzVector& y, int& bad) {
    const IntersectionResult res = counter.count(y);
    if (res.degenerate) ++degenerate;
    if (res.degenerate || res.count != target) ++bad;
    min_margin = std::min(min_margin, res.min_transversality);
  };
  for (int i = 0; i < n_each; ++i) {
    const std::uint64_t c = 4 * static_cast<std::uint64_t>(i);
    const double beta = 2.0 * kPi * counter_uniform(seed, c, kStreamPole);
    // Every tenth pole is exactly lightlike; the rest are spacelike.
    const double a = (i % 10 == 0) ? ((i % 20 == 0) ? 1.0 : -1.0)
                                   : -1.0 + 2.0 * counter_uniform(seed, c + 1, kStreamPole);
    check(pole_direction(beta, a), bad_causal);
  }
  for (int i = 0; i < n_each; ++i) {
    const std::uint64_t c = 4 * static_cast<std::uint64_t>(n_each + i);
    const double beta = 2.0 * kPi * counter_uniform(seed, c, kStreamPole);
    const double u = counter_uniform(seed, c + 1, kStreamPole);
    const double mag = 1.0 + (a_star - 1.0) * (0.5 + 0.5 * u) * (1.0 - 1e-9);
    const double a = (counter_uniform(seed, c + 2, kStreamPole) < 0.5) ? -mag : mag;
    check(pole_direction(beta, a), bad_timelike);
  }

  VerificationReport r;
  r.name = "lemma-2i";
  r.method = "closed_form";
  r.set_sides(static_cast<double>(bad_causal + bad_timelike), 0.0);
  r.n_samples = 2 * n_each;
  r.seed = seed;
  r.degenerate = degenerate;
  r.values["threshold"] = a_star;
  r.values["expected_count"] = target;
  r.values["exceptions_spacelike_lightlike"] = bad_causal;
  r.values["exceptions_timelike"] = bad_timelike;
  r.values["min_transversality"] = min_margin;
  r.passed = bad_causal == 0 && bad_timelike == 0;
  r.wall_time = seconds_since(t0);
  return r;
}

void require_strong_spacelike(const ClosedCurve& curve) {
  if (!curve.is_spacelike()) curve.length();  // throws NotSpacelike with the offending t
  const StrongSpacelikeReport cert = certify_strong_spacelike(curve);
  if (!cert.verdict)
    throw GeometryError(ErrorKind::NotStrongSpacelike,
                        "certifier margins: speed " + std::to_string(cert.min_speed_margin) + ", osculating " +
                            std::to_string(cert.min_osculating_margin) + ", curvature " +
                            std::to_string(cert.min_curvature),
                        cert.worst_t);
}

VerificationReport verify_fenchel(const ClosedCurve& curve, double tol) {
  const auto t0 = Clock::now();
  require_strong_spacelike(curve);
  const int index = winding_index(curve);
  if (index != 1) throw GeometryError(ErrorKind::WrongIndex, "Fenchel check needs index 1, got " + std::to_string(index));

  const double tc = total_curvature(curve);
  const SphericalCurve ind = tangent_indicatrix(curve);
  double max_phi = 0.0;
  for (int i = 0; i < 4096; ++i) max_phi = std::max(max_phi, std::abs(ind.at(ind.length() * i / 4096).phi));
  double max_torsion = 0.0;
  for (int i = 0; i < 1024; ++i)
    max_torsion = std::max(max_torsion, std::abs(frenet_apparatus(curve, curve.period() * i / 1024).tau));
  const double torsion_scale = max_torsion * curve.length();

  VerificationReport r;
  r.name = "fenchel";
  r.method = "quadrature";
  r.set_sides(tc, 2.0 * kPi);
  r.n_samples = 4096;
  r.values["total_curvature"] = tc;
  r.values["indicatrix_length"] = ind.length();
  r.values["max_abs_phi"] = max_phi;
  r.values["max_torsion_times_length"] = torsion_scale;
  r.values["tolerance"] = tol;
  const bool horizontal = max_phi < 1e-7;
  const bool planar = horizontal || torsion_scale < 1e-7;
  r.notes["convex_plane_curve"] = horizontal ? "true" : "false";
  r.notes["planar"] = planar ? "true" : "false";
  r.notes["strict"] = (tc < 2.0 * kPi) ? "true" : "false";
  r.passed = tc <= 2.0 * kPi + tol;
  r.wall_time = seconds_since(t0);
  return r;
}

VerificationReport verify_fary_milnor(const ClosedCurve& curve, bool knotted, std::int64_t n_poles,
                                      std::uint64_t seed, int threads) {
  const auto t0 = Clock::now();
  require_strong_spacelike(curve);
  const int index = winding_index(curve);
  if (index != 2)
    throw GeometryError(ErrorKind::WrongIndex, "Fary-Milnor check needs index 2, got " + std::to_string(index));

  const double tc = total_curvature(curve);
  const SphericalCurve ind = tangent_indicatrix(curve);
  const IntersectionCounter counter(ind);
  const double R = choose_radius(ind, 2.0);
  const PoleCounts pc = sample_pole_counts(counter, R, n_poles, seed, threads);

  std::int64_t twos = 0;
  std::int64_t first_two = -1;
  for (std::size_t i = 0; i < pc.counts.size(); ++i) {
    if (pc.counts[i] == 2) {
      if (first_two < 0) first_two = static_cast<std::int64_t>(i);
      ++twos;
    }
  }

  VerificationReport r;
  r.name = "fary-milnor";
  r.method = "quadrature";
  r.set_sides(tc, 4.0 * kPi);
  r.n_samples = n_poles;
  r.seed = seed;
  r.degenerate = pc.redraws;
  r.values["total_curvature"] = tc;
  r.values["R"] = R;
  r.values["count_two_poles"] = static_cast<double>(twos);
  for (const auto& [c, k] : pc.histogram) r.values["count_" + std::to_string(c)] = static_cast<double>(k);
  if (first_two >= 0) {
    r.values["witness_slot"] = static_cast<double>(first_two);
    const HyperbolicPoint y = sample_disk_point(R, seed, static_cast<std::uint64_t>(first_two),
                                                pc.attempts[static_cast<std::size_t>(first_two)]);
    r.values["witness_x1"] = y.vector().x1;
    r.values["witness_x2"] = y.vector().x2;
    r.values["witness_x3"] = y.vector().x3;
  }
  r.notes["knotted"] = knotted ? "true" : "false";
  r.notes["below_4pi"] = (tc < 4.0 * kPi) ? "true" : "false";
  r.passed = knotted ? (tc < 4.0 * kPi && twos == 0) : true;
  r.wall_time = seconds_since(t0);
  return r;
}

}  // namespace crofton
