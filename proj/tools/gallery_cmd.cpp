#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "commands.hpp"
#include "crofton/curve_spec.hpp"
#include "crofton/errors.hpp"
#include "crofton/gallery.hpp"

namespace crofton::cli {

namespace {

void write_spherical(std::ostream& os, const SphericalCurve& g, int n) {
  os << "s,theta,phi,x1,x2,x3\n";
  for (int i = 0; i < n; ++i) {
    const SphericalSample p = g.at(g.length() * i / n);
    os << p.s << ',' << p.theta << ',' << p.phi << ',' << p.e1.x1 << ',' << p.e1.x2 << ',' << p.e1.x3 << '\n';
  }
}

void write_closed(std::ostream& os, const ClosedCurve& c, int n) {
  os << "t,s,x1,x2,x3\n";
  const ArcLengthTable& table = c.arclength_table();
  for (int i = 0; i < n; ++i) {
    const double t = c.period() * i / n;
    const LorentzVector p = c.position(t);
    os << t << ',' << table.arclength_at(t) << ',' << p.x1 << ',' << p.x2 << ',' << p.x3 << '\n';
  }
}

}  // namespace

int run_gallery(const GalleryOptions& opt) {
  try {
    if (opt.emit == "sweep-csv" || opt.emit == "hprime-csv") {
      if (opt.family != "clam_shell")
        throw GeometryError(ErrorKind::SpecError, opt.emit + " is only defined for the clam_shell family");
    }
    const std::string arg = "builtin:" + opt.family + (opt.params.empty() ? "" : "?" + opt.params);
    std::filesystem::create_directories(opt.out);
    const std::filesystem::path path = std::filesystem::path(opt.out) / (opt.family + "_" + opt.emit + ".csv");
    std::ofstream os(path);
    if (!os) throw GeometryError(ErrorKind::SpecError, "cannot write " + path.string());
    os << std::setprecision(17);

    if (opt.emit == "sweep-csv") {
      if (!opt.params.empty()) throw GeometryError(ErrorKind::SpecError, "sweep-csv takes no --params");
      os << "epsilon,total_curvature,bound\n";
      for (double eps : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99})
        os << eps << ',' << total_curvature(clam_shell(eps)) << ',' << clam_shell_bound(eps) << '\n';
    } else {
      const LoadedCurve loaded = load_curve(arg);
      if (opt.emit == "hprime-csv") {
        const double eps = loaded.spec["params"].value("epsilon", 0.5);
        os << "theta,h,hprime,hsecond\n";
        for (int i = 0; i <= opt.samples; ++i) {
          const double th = 4.0 * std::numbers::pi * i / opt.samples;
          const auto h = clam_shell_height(eps, th);
          os << th << ',' << h[0] << ',' << h[1] << ',' << h[2] << '\n';
        }
      } else if (const auto* c = std::get_if<ClosedCurve>(&loaded.curve)) {
        if (opt.emit == "curve-csv") {
          write_closed(os, *c, opt.samples);
        } else {
          write_spherical(os, tangent_indicatrix(*c), opt.samples);
        }
      } else {
        write_spherical(os, std::get<SphericalCurve>(loaded.curve), opt.samples);
      }
    }
    std::cout << path.string() << '\n';
    return kPass;
  } catch (const GeometryError& e) {
    std::cerr << e.what() << '\n';
    return (e.kind() == ErrorKind::SpecError || e.kind() == ErrorKind::BadParameter) ? kInputError : kPrecondition;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace crofton::cli
