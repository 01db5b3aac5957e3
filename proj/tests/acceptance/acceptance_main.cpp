#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "crofton/crofton.hpp"
#include "crofton/errors.hpp"
#include "crofton/gallery.hpp"
#include "crofton/random.hpp"
#include "oracles.hpp"
#include "run.hpp"

using namespace crofton;
using oracle::kPi;

namespace {

// Pinned tolerances. Changing any of these changes what the suite certifies.
constexpr double kQuadRel = 1e-6;
constexpr double kQuadBudget = 10.0;  // seconds, all quadrature runs together
constexpr std::int64_t kMcN = 100000;
constexpr std::int64_t kMcPrefix = 10000;
constexpr double kSigmas = 3.0;
constexpr double kMcRel = 1e-2;
constexpr double kStderrFactor = 1.5;
constexpr double kMcBudget = 60.0;  // seconds per curve
constexpr double kGlobalFloor = 1e-2;
constexpr int kLemmaPoles = 200;
constexpr double kLemmaBudget = 30.0;
constexpr double kFenchelTol = 1e-9;
constexpr int kFenchelCurves = 50;
constexpr std::int64_t kFaryPoles = 10000;
constexpr double kClamTol = 1e-6;
constexpr double kClamLimit = 40.0;
constexpr double kGramTol = 1e-8;
constexpr double kFdTol = 1e-5;
constexpr double kFdStep = 1e-4;
constexpr double kArclengthTol = 1e-7;
constexpr std::int64_t kAreaN = 1000000;
constexpr std::uint64_t kSeed = 20241;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// |a - b| < k sigma; with sigma = 0 the values must agree to rounding.
bool within_sigmas(double a, double b, double sigma, double k) {
  if (sigma > 0.0) return std::abs(a - b) < k * sigma;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double max_abs(const LorentzVector& v) { return oracle::max_abs(v); }

// A spherical test curve with an independently computed length.
struct Case {
  std::string name;
  SphericalCurve curve;
  double oracle_length;
};

std::vector<Case> crofton_cases() {
  return {{"equator", equator(), 2 * kPi},
          {"wobble(0.2,3,1)", wobble(0.2, 3, 1), oracle::wobble_length(0.2, 3, 1)},
          {"wobble(0.3,2,2)", wobble(0.3, 2, 2), oracle::wobble_length(0.3, 2, 2)},
          {"indicatrix(clam_shell(0.5))", tangent_indicatrix(clam_shell(0.5)), oracle::clam_total_curvature(0.5)}};
}

std::vector<Case> gallery_cases() {
  std::vector<Case> v = crofton_cases();
  const SphericalCurve q = quad_perturb(0.5);
  v.push_back({"quad_perturb(0.5)", q, q.length()});
  const SphericalCurve t = tangent_indicatrix(trefoil_spacelike(0.05));
  v.push_back({"indicatrix(trefoil(0.05))", t, t.length()});
  return v;
}

// 4 pi I cosh R - 2 L from the oracle length.
double rhs_oracle(const Case& c, double R) { return 4 * kPi * c.curve.index() * std::cosh(R) - 2 * c.oracle_length; }

PoleCounts prefix(const PoleCounts& p, std::int64_t n) {
  PoleCounts q = p;
  q.counts.resize(n);
  q.attempts.resize(n);
  return q;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds) {
  std::printf("criterion %d %s  %-34s %7.2fs%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), seconds,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  report(id, title, o, since(t0));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Monte Carlo counts shared by criteria 2 and 3.
struct McRun {
  PoleCounts inner;
  double seconds = 0.0;
};

}  // namespace

int main() {
  const int n_threads = threads();
  std::printf("acceptance suite, %d thread(s), seed %llu\n", n_threads, static_cast<unsigned long long>(kSeed));
  const std::vector<Case> cases = crofton_cases();

  run(1, "localized identity by quadrature", [&](Outcome& o) {
    const auto t0 = Clock::now();
    for (const Case& c : cases) {
      for (double safety : {1.5, 2.0, 4.0}) {
        const double R = choose_radius(c.curve, safety);
        const double lhs = localized_lhs_quadrature(c.curve, R).value;
        const double rhs = rhs_oracle(c, R);
        const double rel = std::abs(lhs - rhs) / std::abs(rhs);
        std::printf("  %-30s R=%.6f lhs=%.12g rhs=%.12g rel=%.2e\n", c.name.c_str(), R, lhs, rhs, rel);
        o.require(rel < kQuadRel, c.name + fmt(" rel %.2e", rel));
      }
    }
    const double t = since(t0);
    o.require(t < kQuadBudget, fmt("runtime %.1fs", t));
  });

  std::vector<McRun> mc(cases.size());
  run(2, "localized identity by Monte Carlo", [&](Outcome& o) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Case& c = cases[i];
      const auto t0 = Clock::now();
      const IntersectionCounter counter(c.curve);
      const double R = choose_radius(c.curve, 2.0);
      mc[i].inner = sample_pole_counts(counter, R, kMcN, kSeed, n_threads);
      mc[i].seconds = since(t0);
      const McEstimate full = mc_integral(mc[i].inner);
      const McEstimate part = mc_integral(prefix(mc[i].inner, kMcPrefix));
      const double rhs = rhs_oracle(c, R);
      const double diff = std::abs(full.estimate - rhs);
      const double ratio = full.std_error > 0.0 ? part.std_error / full.std_error : 0.0;
      std::printf("  %-30s mc=%.8g +- %.3g rhs=%.8g rel=%.2e stderr ratio=%.3f (%.1fs)\n", c.name.c_str(),
                  full.estimate, full.std_error, rhs, diff / rhs, ratio, mc[i].seconds);
      o.require(within_sigmas(full.estimate, rhs, full.std_error, kSigmas), c.name + fmt(" off by %.3g", diff));
      o.require(diff < kMcRel * std::abs(rhs), c.name + fmt(" rel %.2e", diff / rhs));
      if (full.std_error > 0.0 || part.std_error > 0.0) {
        const double expect = std::sqrt(double(kMcN) / kMcPrefix);
        o.require(ratio > expect / kStderrFactor && ratio < expect * kStderrFactor,
                  c.name + fmt(" stderr ratio %.3f", ratio));
      }
      o.require(mc[i].seconds < kMcBudget, c.name + fmt(" runtime %.1fs", mc[i].seconds));
    }
  });

  run(3, "global identity and R-independence", [&](Outcome& o) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Case& c = cases[i];
      if (mc[i].inner.counts.empty()) {
        o.require(false, c.name + " has no counts");
        continue;
      }
      const double shift = 2.0 * c.curve.index();
      const double R4 = choose_radius(c.curve, 4.0);
      const PoleCounts outer = sample_pole_counts(IntersectionCounter(c.curve), R4, kMcN, kSeed + 1, n_threads);
      const McEstimate a = mc_integral(mc[i].inner, shift), b = mc_integral(outer, shift);
      const double residual = c.oracle_length - 2 * kPi * c.curve.index() + 0.5 * a.estimate;
      const double sigma = 0.5 * a.std_error;
      const double r_sigma = std::hypot(a.std_error, b.std_error);
      std::printf("  %-30s residual=%.3e sigma=%.3e  int(R2)=%.6g int(R4)=%.6g diff=%.3g sigma=%.3g\n", c.name.c_str(),
                  residual, sigma, a.estimate, b.estimate, std::abs(a.estimate - b.estimate), r_sigma);
      o.require(std::abs(residual) < std::max(kSigmas * sigma, kGlobalFloor), c.name + fmt(" residual %.3e", residual));
      o.require(within_sigmas(a.estimate, b.estimate, r_sigma, kSigmas), c.name + " radius dependence");
    }
  });

  run(4, "2I intersections below threshold", [&](Outcome& o) {
    const auto t0 = Clock::now();
    for (const Case& c : gallery_cases()) {
      const IntersectionCounter counter(c.curve);
      const double a_star = lemma_threshold(c.curve);
      const int want = 2 * c.curve.index();
      int exceptions = 0;
      for (int i = 0; i < kLemmaPoles; ++i) {
        const double b = 2 * kPi * counter_uniform(kSeed, 4 * i, 40);
        // Every tenth pole is lightlike, the rest spacelike.
        const double a = (i % 10 == 0) ? (i % 20 == 0 ? 1.0 : -1.0) : 2 * counter_uniform(kSeed, 4 * i + 1, 40) - 1;
        const IntersectionResult r = counter.count({std::cos(b), std::sin(b), a});
        exceptions += r.degenerate || r.count != want;
      }
      for (int i = 0; i < kLemmaPoles; ++i) {
        const double b = 2 * kPi * counter_uniform(kSeed, 4 * i + 2, 41);
        const double u = counter_uniform(kSeed, 4 * i + 3, 41);
        const double mag = 1 + (a_star - 1) * (1e-6 + (1 - 2e-6) * u);
        const double a = (i % 2 ? -1.0 : 1.0) * std::min(mag, 1e5);
        const IntersectionResult r = counter.count({std::cos(b), std::sin(b), a});
        exceptions += r.degenerate || r.count != want;
      }
      std::printf("  %-30s I=%d a*=%.6g exceptions=%d\n", c.name.c_str(), c.curve.index(), a_star, exceptions);
      o.require(exceptions == 0, c.name + " has exceptions");
    }
    const double t = since(t0);
    o.require(t < kLemmaBudget, fmt("runtime %.1fs", t));
  });

  run(5, "total curvature of index-1 curves", [&](Outcome& o) {
    const double tc_circle = total_curvature(circle(1.0));
    std::printf("  circle TC - 2pi = %.3e\n", tc_circle - 2 * kPi);
    o.require(std::abs(tc_circle - 2 * kPi) < kFenchelTol, "circle");
    int planar = 0;
    double worst = -1e300;
    for (int seed = 0; seed < kFenchelCurves; ++seed) {
      const ClosedCurve c = random_fenchel_curve(seed);
      o.require(certify_strong_spacelike(c).verdict && winding_index(c) == 1, "seed " + std::to_string(seed));
      const VerificationReport r = verify_fenchel(c, kFenchelTol);
      const bool is_planar = r.notes.at("planar") == "true";
      planar += is_planar;
      worst = std::max(worst, r.lhs - 2 * kPi);
      o.require(r.lhs <= 2 * kPi + kFenchelTol, "seed " + std::to_string(seed) + " exceeds 2pi");
      if (!is_planar) o.require(r.lhs < 2 * kPi, "seed " + std::to_string(seed) + " not strict");
    }
    std::printf("  %d curves, max TC - 2pi = %.3e, planar flagged = %d\n", kFenchelCurves, worst, planar);
  });

  run(6, "knotted curve below 4pi", [&](Outcome& o) {
    const ClosedCurve t = trefoil_spacelike(0.05);
    const bool certified = certify_strong_spacelike(t).verdict;
    const int index = winding_index(t);
    const double tc = total_curvature(t);
    const SphericalCurve g = tangent_indicatrix(t);
    const double R = choose_radius(g, 2.0);
    const PoleCounts p = sample_pole_counts(IntersectionCounter(g), R, kFaryPoles, kSeed, n_threads);
    std::int64_t twos = 0;
    for (int n : p.counts) twos += n == 2;
    std::printf("  certified=%d index=%d TC=%.9f (4pi - TC = %.3e) count-2 poles=%lld of %lld\n", certified, index, tc,
                4 * kPi - tc, static_cast<long long>(twos), static_cast<long long>(kFaryPoles));
    o.require(certified, "not certified");
    o.require(index == 2, "index");
    o.require(tc < 4 * kPi, "TC");
    o.require(twos == 0, "count-2 poles found");
  });

  run(7, "clam-shell total curvature", [&](Outcome& o) {
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double eps = 0.1 * i;
      const double tc = total_curvature(clam_shell(eps));
      const double bound = 2 * kPi / std::sqrt(1 - eps * eps);
      std::printf("  eps=%.1f TC=%.9f bound=%.9f oracle=%.9f\n", eps, tc, bound, oracle::clam_total_curvature(eps));
      o.require(tc >= bound - kClamTol, fmt("eps %.1f below bound", eps));
      o.require(tc > prev, fmt("eps %.1f not increasing", eps));
      prev = tc;
    }
    const double tc99 = total_curvature(clam_shell(0.99));
    std::printf("  eps=0.99 TC=%.6f bound=%.6f\n", tc99, 2 * kPi / std::sqrt(1 - 0.99 * 0.99));
    o.require(tc99 > kClamLimit, "TC(0.99)");
  });

  run(8, "structural numerics", [&](Outcome& o) {
    const double h = kFdStep;
    double gram = 0.0, structure = 0.0, identity = 0.0, frenet = 0.0;
    for (const Case& c : gallery_cases()) {
      const SphericalCurve& g = c.curve;
      const int n = 400;
      for (int i = 0; i < n; ++i) {
        const double s = g.length() * (i + 0.37) / n;
        const SphericalSample p = g.at(s);
        const AdaptedFrame f = adapted_frame(p);
        const LorentzVector e[3] = {f.e1, f.e2, f.e3};
        const double eta[3] = {1, 1, -1};
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            gram = std::max(gram, std::abs(minkowski_inner(e[a], e[b]) - (a == b ? eta[a] : 0.0)));
        bool near = false;
        for (double bp : g.breakpoints()) near |= std::abs(std::remainder(s - bp, g.length())) < 4 * h;
        if (near) continue;
        const AdaptedFrame fp = adapted_frame(g, s + h), fm = adapted_frame(g, s - h);
        const double ch = std::cosh(p.phi), sh = std::sinh(p.phi);
        structure = std::max({structure, max_abs((fp.e1 - fm.e1) / (2 * h) - (ch * p.dtheta * f.e2 + p.dphi * f.e3)),
                              max_abs((fp.e2 - fm.e2) / (2 * h) - (-ch * p.dtheta * f.e1 + sh * p.dtheta * f.e3)),
                              max_abs((fp.e3 - fm.e3) / (2 * h) - (p.dphi * f.e1 + sh * p.dtheta * f.e2))});
        identity = std::max(identity, std::abs(ch * ch * p.dtheta * p.dtheta - p.dphi * p.dphi - 1));
      }
    }
    std::vector<ClosedCurve> closed = {clam_shell(0.5), trefoil_spacelike(0.05), random_fenchel_curve(3)};
    for (const ClosedCurve& base : closed) {
      const ClosedCurve c = reparametrize_arclength(base);
      for (int i = 0; i < 400; ++i) {
        const double s = c.period() * (i + 0.29) / 400;
        bool near = false;
        for (double bp : c.breakpoints()) near |= std::abs(std::remainder(s - bp, c.period())) < 4 * h;
        if (near) continue;
        const FrenetData f = frenet_apparatus(c, s), fp = frenet_apparatus(c, s + h), fm = frenet_apparatus(c, s - h);
        frenet = std::max({frenet, max_abs((fp.T - fm.T) / (2 * h) - f.k * f.N),
                           max_abs((fp.N - fm.N) / (2 * h) - (-f.k * f.T + f.tau * f.B)),
                           max_abs((fp.B - fm.B) / (2 * h) - f.tau * f.N)});
      }
    }
    // Sub-disk ratio: fraction of uniform points of the radius-2 disk inside radius 1.
    const double R = 2.0, r = 1.0;
    const double p = (std::cosh(r) - 1) / (std::cosh(R) - 1);
    std::int64_t inside = 0;
    for (std::int64_t i = 0; i < kAreaN; ++i) inside += sample_disk_point(R, kSeed, i).vector().x3 <= std::cosh(r);
    const double frac = double(inside) / kAreaN;
    const double se = std::sqrt(p * (1 - p) / kAreaN);
    const double ratio = h2_area(r) / h2_area(R);
    std::printf("  gram=%.2e structure=%.2e frenet=%.2e arclength identity=%.2e\n", gram, structure, frenet, identity);
    std::printf("  sub-disk fraction=%.6f expected=%.6f area ratio=%.6f z=%.2f\n", frac, p, ratio, (frac - p) / se);
    o.require(gram < kGramTol, "gram");
    o.require(structure < kFdTol, "structure equations");
    o.require(frenet < kFdTol, "Frenet equations");
    o.require(identity < kArclengthTol, "arc-length identity");
    o.require(std::abs(ratio - p) < 1e-12, "h2_area ratio");
    o.require(std::abs(frac - ratio) < kSigmas * se, "sub-disk fraction");
  });

  run(9, "reproducible reports", [&](Outcome& o) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "crofton_acceptance";
    const std::string args = "verify --curve 'builtin:wobble?alpha=0.3,k=2,I=2' --samples 20000 --seed 7 --threads " +
                             std::to_string(n_threads);
    const support::RunResult a = support::run(CROFTON_BIN, args, dir, "a");
    const support::RunResult b = support::run(CROFTON_BIN, args, dir, "b");
    o.require(a.exit_code == 0 && b.exit_code == 0, "exit codes " + std::to_string(a.exit_code) + "," +
                                                        std::to_string(b.exit_code));
    nlohmann::json ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    ja.erase("timing");
    jb.erase("timing");
    const std::string da = ja.dump(), db = jb.dump();
    std::printf("  report bytes without timing: %zu, identical=%d\n", da.size(), da == db);
    o.require(da == db, "reports differ");
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
