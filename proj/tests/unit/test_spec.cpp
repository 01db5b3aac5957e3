#include <doctest.h>

#include <cmath>
#include <fstream>

#include "../support/oracles.hpp"
#include "crofton/curve_spec.hpp"
#include "crofton/errors.hpp"
#include "crofton/gallery.hpp"
#include "crofton/report.hpp"

using namespace crofton;
using oracle::kPi;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("no GeometryError thrown");
  return ErrorKind::SpecError;
}

}  // namespace

TEST_CASE("builtin curve strings") {
  const LoadedCurve c = load_curve("builtin:circle?radius=2");
  REQUIRE(std::holds_alternative<ClosedCurve>(c.curve));
  CHECK(std::get<ClosedCurve>(c.curve).length() == doctest::Approx(4 * kPi).epsilon(1e-12));

  const LoadedCurve w = load_curve("builtin:wobble?alpha=0.3,k=2,I=2");
  REQUIRE(std::holds_alternative<SphericalCurve>(w.curve));
  CHECK(std::get<SphericalCurve>(w.curve).index() == 2);

  CHECK(std::holds_alternative<ClosedCurve>(load_curve("builtin:clam_shell").curve));
  CHECK(kind_of([] { load_curve("builtin:nope"); }) == ErrorKind::SpecError);
  CHECK(kind_of([] { load_curve("builtin:circle?colour=2"); }) == ErrorKind::SpecError);
  CHECK(kind_of([] { load_curve("builtin:circle?radius=abc"); }) == ErrorKind::SpecError);
  CHECK(kind_of([] { load_curve("builtin:clam_shell?epsilon=1.5"); }) == ErrorKind::BadParameter);
  CHECK(kind_of([] { load_curve("/nonexistent/curve.json"); }) == ErrorKind::SpecError);
}

TEST_CASE("JSON curve documents") {
  const json fourier = {{"type", "fourier"},
                        {"period", 2 * kPi},
                        {"coeffs", {{"x1", {0.0, 3.0, 0.0}}, {"x2", {0.0, 0.0, 3.0}}, {"x3", {0.0}}}}};
  const LoadedCurve f = curve_from_json(fourier);
  CHECK(std::get<ClosedCurve>(f.curve).length() == doctest::Approx(6 * kPi).epsilon(1e-10));

  json pts = json::array();
  const int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double t = 2 * kPi * i / n;
    pts.push_back({t, std::cos(t), std::sin(t), 0.0});
  }
  const LoadedCurve s = curve_from_json({{"type", "spline"}, {"points", pts}});
  CHECK(std::get<ClosedCurve>(s.curve).length() == doctest::Approx(2 * kPi).epsilon(1e-5));

  const LoadedCurve b = curve_from_json({{"type", "builtin"}, {"name", "ellipse"}, {"params", {{"a", 3.0}}}});
  CHECK(std::holds_alternative<ClosedCurve>(b.curve));

  CHECK(kind_of([] { curve_from_json({{"type", "polygon"}}); }) == ErrorKind::SpecError);
  CHECK(kind_of([] { curve_from_json({{"type", "fourier"}, {"period", 1.0}}); }) == ErrorKind::SpecError);
  CHECK(kind_of([] { curve_from_json(json::array()); }) == ErrorKind::SpecError);

  const std::string path = "test_spec_tmp_curve.json";
  std::ofstream(path) << fourier.dump();
  CHECK(std::holds_alternative<ClosedCurve>(load_curve(path).curve));
  std::ofstream(path) << "{ not json";
  CHECK(kind_of([&] { load_curve(path); }) == ErrorKind::SpecError);
  std::remove(path.c_str());
}

TEST_CASE("report serialization") {
  VerificationReport r;
  r.name = "x";
  r.set_sides(1.0, 2.0);
  r.wall_time = 3.0;
  r.values["bad"] = std::numeric_limits<double>::infinity();
  const json j = to_json(r);
  CHECK(j.at("abs_residual") == 1.0);
  CHECK(j.at("rel_residual") == doctest::Approx(0.5));
  CHECK_FALSE(j.contains("wall_time"));
  CHECK(j.at("values").at("bad").is_null());
  CHECK(sanitize(json{{"a", {1.0, std::nan("")}}}).at("a").at(1).is_null());
}
