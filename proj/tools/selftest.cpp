#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "commands.hpp"
#include "crofton/crofton.hpp"
#include "crofton/curve_spec.hpp"
#include "crofton/errors.hpp"
#include "crofton/gallery.hpp"

namespace crofton::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct NamedCurve {
  std::string name;
  SphericalCurve curve;
};

std::vector<NamedCurve> spherical_gallery() {
  return {{"equator", equator()},
          {"wobble(0.2,3,1)", wobble(0.2, 3, 1)},
          {"wobble(0.3,2,2)", wobble(0.3, 2, 2)},
          {"quad_perturb(0.5)", quad_perturb(0.5)},
          {"indicatrix(clam_shell(0.5))", tangent_indicatrix(clam_shell(0.5))},
          {"indicatrix(trefoil(0.05))", tangent_indicatrix(trefoil_spacelike(0.05))}};
}

double max_abs(const LorentzVector& v) { return std::max({std::abs(v.x1), std::abs(v.x2), std::abs(v.x3)}); }

bool near_breakpoint(const SphericalCurve& g, double s, double h) {
  for (double b : g.breakpoints()) {
    const double d = std::remainder(s - b, g.length());
    if (std::abs(d) < 4.0 * h) return true;
  }
  return false;
}

// Frame Gram defect, structure-equation defect and arc-length identity defect.
std::array<double, 3> frame_defects(const SphericalCurve& g, int n) {
  const double h = 1e-4;
  double gram = 0.0, structure = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = g.length() * (i + 0.37) / n;
    const AdaptedFrame f = adapted_frame(g, s);
    const double diag[3] = {1.0, 1.0, -1.0};
    const LorentzVector e[3] = {f.e1, f.e2, f.e3};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        gram = std::max(gram, std::abs(minkowski_inner(e[a], e[b]) - (a == b ? diag[a] : 0.0)));
    if (near_breakpoint(g, s, h)) continue;
    const SphericalSample p = g.at(s);
    const AdaptedFrame fp = adapted_frame(g, s + h), fm = adapted_frame(g, s - h);
    const double ch = std::cosh(p.phi), sh = std::sinh(p.phi);
    const LorentzVector d1 = (fp.e1 - fm.e1) / (2 * h), d2 = (fp.e2 - fm.e2) / (2 * h), d3 = (fp.e3 - fm.e3) / (2 * h);
    structure = std::max({structure, max_abs(d1 - (ch * p.dtheta * f.e2 + p.dphi * f.e3)),
                          max_abs(d2 - (-ch * p.dtheta * f.e1 + sh * p.dtheta * f.e3)),
                          max_abs(d3 - (p.dphi * f.e1 + sh * p.dtheta * f.e2))});
  }
  return {gram, structure, arclength_identity_residual(g, n)};
}

}  // namespace

int run_selftest(bool quick, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  auto last = t0;
  const auto row = [&](const std::string& name, bool ok, const std::string& detail) {
    const auto now = std::chrono::steady_clock::now();
    const double dt = std::chrono::duration<double>(now - last).count();
    last = now;
    std::printf("%-4s  %-50s %6.2fs  %s\n", ok ? "PASS" : "FAIL", name.c_str(), dt, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  };
  const auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      row(name, false, std::string("exception: ") + e.what());
    }
  };
  const std::int64_t n_mc = quick ? 1000 : 10000;
  const int n_lemma = quick ? 40 : 200;
  char buf[256];

  const std::vector<NamedCurve> curves = spherical_gallery();
  for (const NamedCurve& c : curves) {
    guarded("frame/" + c.name, [&] {
      const auto d = frame_defects(c.curve, quick ? 64 : 512);
      std::snprintf(buf, sizeof buf, "gram %.2e structure %.2e arclength %.2e", d[0], d[1], d[2]);
      row("frame+structure+arclength/" + c.name, d[0] < 1e-8 && d[1] < 1e-5 && d[2] < 1e-7, buf);
    });
    guarded("lemma-2i/" + c.name, [&] {
      const VerificationReport r = verify_lemma_2i(c.curve, n_lemma, 11);
      std::snprintf(buf, sizeof buf, "exceptions %.0f of %lld, a* %.4g", r.lhs, static_cast<long long>(r.n_samples),
                    r.values.at("threshold"));
      row("lemma-2i/" + c.name, r.passed, buf);
    });
    guarded("crofton-local-quadrature/" + c.name, [&] {
      double worst = 0.0;
      bool ok = true;
      for (double safety : {1.5, 2.0, 4.0}) {
        const VerificationReport r = verify_localized_quadrature(c.curve, choose_radius(c.curve, safety));
        worst = std::max(worst, r.rel_residual);
        ok = ok && r.passed;
      }
      std::snprintf(buf, sizeof buf, "max rel residual %.2e", worst);
      row("crofton-local-quadrature/" + c.name, ok, buf);
    });
    guarded("crofton-mc/" + c.name, [&] {
      const IntersectionCounter counter(c.curve);
      const PoleCounts inner = sample_pole_counts(counter, choose_radius(c.curve, 2.0), n_mc, 5, threads);
      const PoleCounts outer = sample_pole_counts(counter, choose_radius(c.curve, 4.0), n_mc, 6, threads);
      const VerificationReport local = verify_localized_mc(c.curve, inner);
      const VerificationReport global = global_residual(c.curve, inner, outer);
      std::snprintf(buf, sizeof buf, "local |d|/se %.2f, global residual %.3g (se %.2g)",
                    local.std_error > 0 ? local.abs_residual / local.std_error : 0.0, global.abs_residual,
                    global.std_error);
      row("crofton-mc/" + c.name, local.passed && global.passed, buf);
    });
  }

  guarded("fenchel/circle", [&] {
    const VerificationReport r = verify_fenchel(circle(1.0));
    std::snprintf(buf, sizeof buf, "TC - 2pi = %.2e", r.lhs - 2 * kPi);
    row("fenchel/circle", r.passed && std::abs(r.lhs - 2 * kPi) < 1e-9 && r.notes.at("planar") == "true", buf);
  });
  guarded("fenchel/random", [&] {
    int bad = 0;
    const int n = quick ? 5 : 20;
    double worst = -1e9;
    for (int i = 0; i < n; ++i) {
      const VerificationReport r = verify_fenchel(random_fenchel_curve(static_cast<std::uint64_t>(i)));
      const bool planar = r.notes.at("planar") == "true";
      if (!r.passed || (!planar && !(r.lhs < 2 * kPi))) ++bad;
      worst = std::max(worst, r.lhs - 2 * kPi);
    }
    std::snprintf(buf, sizeof buf, "%d curves, max TC - 2pi = %.2e", n, worst);
    row("fenchel/random index-1 curves", bad == 0, buf);
  });
  guarded("fary-milnor/trefoil", [&] {
    const VerificationReport r = verify_fary_milnor(trefoil_spacelike(0.05), true, quick ? 1000 : 10000, 3, threads);
    std::snprintf(buf, sizeof buf, "TC = %.6f < 4pi, count-2 poles %.0f", r.lhs, r.values.at("count_two_poles"));
    row("fary-milnor/trefoil_spacelike(0.05)", r.passed, buf);
  });
  guarded("clam-shell", [&] {
    bool ok = true;
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double eps = 0.1 * i;
      const double tc = total_curvature(clam_shell(eps));
      ok = ok && tc >= clam_shell_bound(eps) - 1e-6 && tc > prev;
      prev = tc;
    }
    const double tc99 = total_curvature(clam_shell(0.99));
    std::snprintf(buf, sizeof buf, "TC(0.99) = %.4f", tc99);
    row("clam-shell bound and monotonicity", ok && tc99 > 40.0, buf);
  });
  guarded("spec-error", [&] {
    bool ok = false;
    try {
      load_curve("builtin:no_such_family");
    } catch (const GeometryError& e) {
      ok = e.kind() == ErrorKind::SpecError;
    }
    row("corrupted spec raises SpecError", ok, "");
  });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d failure(s) in %.1f s\n", failures ? "FAILED" : "OK", failures, secs);
  return failures ? kCheckFailed : kPass;
}

}  // namespace crofton::cli
