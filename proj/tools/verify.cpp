#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "crofton/crofton.hpp"
#include "crofton/curve_spec.hpp"
#include "crofton/errors.hpp"
#include "crofton/report.hpp"

namespace crofton::cli {

namespace {

using nlohmann::json;

json error_json(const GeometryError& e) {
  json j{{"kind", to_string(e.kind())}, {"message", e.what()}};
  j["where"] = e.where() ? json(*e.where()) : json(nullptr);
  return sanitize(j);
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SpecError:
    case ErrorKind::BadParameter:
      return kInputError;
    default:
      return kPrecondition;
  }
}

bool write_report(const json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write report to " << path << '\n';
    return false;
  }
  out << text;
  return true;
}

}  // namespace

int run_verify(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  json report{{"tool", "crofton"},
              {"version", kToolVersion},
              {"invocation", opt.invocation},
              {"seed", opt.seed},
              {"threads", opt.threads},
              {"checks", json::array()}};
  json timing{{"checks", json::array()}};
  int code = kPass;

  const auto finish = [&](int c) -> int {
    report["exit_code"] = c;
    report["passed"] = (c == kPass);
    timing["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["timing"] = timing;
    if (!write_report(report, opt.out)) return kInputError;
    return c;
  };

  std::optional<LoadedCurve> loaded;
  try {
    loaded = load_curve(opt.curve);
  } catch (const GeometryError& e) {
    report["error"] = error_json(e);
    std::cerr << e.what() << '\n';
    return finish(exit_for(e.kind()));
  }
  report["curve"] = {{"spec", loaded->spec}};

  std::optional<ClosedCurve> closed;
  std::optional<SphericalCurve> sphere;
  try {
    if (const auto* c = std::get_if<ClosedCurve>(&loaded->curve)) {
      closed = *c;
      report["curve"]["kind"] = "closed";
      report["curve"]["describe"] = c->describe();
      report["certificate"] = to_json(certify_strong_spacelike(*c));
      require_strong_spacelike(*c);
      sphere = tangent_indicatrix(*c);
      report["curve"]["length"] = c->length();
    } else {
      sphere = std::get<SphericalCurve>(loaded->curve);
      report["curve"]["kind"] = "spherical";
      report["curve"]["describe"] = sphere->describe();
    }
    report["curve"]["spherical_length"] = sphere->length();
    report["curve"]["index"] = sphere->index();
  } catch (const GeometryError& e) {
    report["error"] = error_json(e);
    std::cerr << e.what() << '\n';
    return finish(exit_for(e.kind()));
  }

  std::vector<std::string> checks;
  if (opt.check == "all") {
    checks = {"crofton-local", "crofton-global", "lemma-2i"};
    if (closed) checks.push_back(sphere->index() == 1 ? "fenchel" : "fary-milnor");
  } else {
    checks = {opt.check};
  }

  const auto add = [&](const VerificationReport& r) {
    report["checks"].push_back(to_json(r));
    timing["checks"].push_back({{"name", r.name}, {"method", r.method}, {"seconds", r.wall_time}});
    if (!r.passed) code = kCheckFailed;
  };

  try {
    const double R = (opt.radius == "auto") ? choose_radius(*sphere, opt.safety) : [&] {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(opt.radius, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != opt.radius.size())
        throw GeometryError(ErrorKind::SpecError, "--radius must be 'auto' or a number");
      return v;
    }();
    std::optional<IntersectionCounter> counter;
    std::optional<PoleCounts> local_counts;
    const auto get_counter = [&]() -> const IntersectionCounter& {
      if (!counter) counter.emplace(*sphere);
      return *counter;
    };

    for (const std::string& name : checks) {
      if (name == "crofton-local") {
        check_radius(*sphere, R);
        if (opt.method != "mc") add(verify_localized_quadrature(*sphere, R));
        if (opt.method != "quadrature") {
          local_counts = sample_pole_counts(get_counter(), R, opt.samples, opt.seed, opt.threads);
          add(verify_localized_mc(*sphere, *local_counts));
        }
      } else if (name == "crofton-global") {
        const double r_in = choose_radius(*sphere, opt.safety);
        const double r_out = choose_radius(*sphere, 2.0 * opt.safety);
        const PoleCounts inner = (local_counts && local_counts->R == r_in)
                                     ? *local_counts
                                     : sample_pole_counts(get_counter(), r_in, opt.samples, opt.seed, opt.threads);
        const PoleCounts outer = sample_pole_counts(get_counter(), r_out, opt.samples, opt.seed + 1, opt.threads);
        add(global_residual(*sphere, inner, outer));
      } else if (name == "lemma-2i") {
        add(verify_lemma_2i(*sphere, 200, opt.seed));
      } else if (name == "fenchel" || name == "fary-milnor") {
        if (!closed)
          throw GeometryError(ErrorKind::WrongIndex, name + " needs a curve in Lorentz space, not a spherical curve");
        add(name == "fenchel" ? verify_fenchel(*closed, opt.tol)
                              : verify_fary_milnor(*closed, opt.knotted, 10000, opt.seed, opt.threads));
      }
    }
  } catch (const GeometryError& e) {
    report["error"] = error_json(e);
    std::cerr << e.what() << '\n';
    return finish(exit_for(e.kind()));
  }
  return finish(code);
}

}  // namespace crofton::cli
