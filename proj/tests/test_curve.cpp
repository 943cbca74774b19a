#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ngon/catalog.hpp"
#include "ngon/curve_io.hpp"
#include "ngon/error.hpp"
#include "oracles.hpp"

using namespace ngon;

namespace {

bool throws_code(const std::function<void()>& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("raw lengths match independent quadrature") {
  SUBCASE("ellipse against the elliptic integral") {
    const ClosedCurve c = catalog_curve("ellipse");
    CHECK(c.raw_length() == doctest::Approx(oracle::ellipse_perimeter(2.0, 1.0)).epsilon(1e-12));
  }
  SUBCASE("trefoil against closed-form speed") {
    const ClosedCurve c = catalog_curve("trefoil");
    const double ref = oracle::simpson(
        [](double u) { return oracle::torus_knot_speed(u, 3, 2, 2.0, 1.0); }, 0.0, 1.0, 400000);
    CHECK(c.raw_length() == doctest::Approx(ref).epsilon(1e-11));
    // Frozen from the Simpson value above.
    CHECK(c.raw_length() == doctest::Approx(40.000345824838206).epsilon(1e-11));
  }
  SUBCASE("every catalog curve") {
    for (std::string_view name : catalog_names()) {
      CAPTURE(name);
      const auto raw = catalog_raw_curve(name);
      const double ref = oracle::raw_length(*raw, 400000);
      CHECK(normalize_to_unit_length(raw).raw_length() == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("normalized curves have unit speed and are periodic") {
  for (std::string_view name : catalog_names()) {
    CAPTURE(name);
    const ClosedCurve c = catalog_curve(name);
    CHECK((c.eval(0.0) - c.eval(1.0)).norm() < 1e-12);
    CHECK(c.total_length() == 1.0);
    for (int k = 0; k < 97; ++k) {
      const double t = (k + 0.31) / 97.0;
      CHECK(c.deriv(t).norm() == doctest::Approx(1.0).epsilon(1e-9));
      // Central difference of eval agrees with deriv away from corners.
      if (c.smooth()) {
        const double h = 1e-6;
        const Point fd = (c.eval(t + h) - c.eval(t - h)) / (2 * h);
        CHECK((fd - c.deriv(t)).norm() < 1e-6);
      }
    }
  }
}

TEST_CASE("arc-length parameter measures length") {
  const auto raw = catalog_raw_curve("lissajous");
  const ClosedCurve c = normalize_to_unit_length(raw);
  const double length = c.raw_length();
  for (double t : {0.05, 0.3, 0.77}) {
    CAPTURE(t);
    const double u = c.raw_parameter(t);
    const double piece = oracle::simpson(
        [&](double s) { return raw->velocity(s).norm(); }, 0.0, u, 200000);
    CHECK(piece / length == doctest::Approx(t).epsilon(1e-10));
  }
}

TEST_CASE("rebasing moves parameter 0") {
  const ClosedCurve c = catalog_curve("trefoil");
  const ClosedCurve r = c.rebased(0.37);
  CHECK((r.eval(0.0) - c.eval(0.37)).norm() < 1e-12);
  CHECK((r.eval(0.5) - c.eval(0.87)).norm() < 1e-12);
  CHECK((catalog_curve("trefoil", 0.37).eval(0.0) - c.eval(0.37)).norm() < 1e-12);
}

TEST_CASE("circle in R^4 is a planar circle") {
  const ClosedCurve c = catalog_curve("circle4d");
  CHECK(c.ambient_dim() == 4);
  const Point center = Point::Zero(4);
  for (int k = 0; k < 50; ++k) {
    const double t = k / 50.0;
    CHECK((c.eval(t) - center).norm() == doctest::Approx(1.0 / (2 * oracle::kPi)).epsilon(1e-12));
    // Chords depend only on the parameter difference.
    CHECK((c.eval(t) - c.eval(t + 0.2)).norm() ==
          doctest::Approx(oracle::circle_chord(0.2)).epsilon(1e-12));
  }
  // All four coordinates vary.
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c.eval(0.1)(i) - c.eval(0.6)(i)) > 1e-3);
}

TEST_CASE("corner triangle has constant speed and sharp corners") {
  const auto raw = make_corner_triangle();
  CHECK_FALSE(raw->smooth());
  CHECK(raw->constant_speed());
  const ClosedCurve c = normalize_to_unit_length(raw);
  CHECK(c.eval(0.0).norm() < 1e-15);
  const double legs = 2.0;
  const double base = 2.0 * std::sin(oracle::kPi / 8);
  CHECK(c.raw_length() == doctest::Approx(legs + base).epsilon(1e-14));
}

TEST_CASE("figure eight passes its double point twice") {
  const auto raw = make_planar_figure_eight();
  CHECK_FALSE(raw->simple());
  CHECK(raw->position(0.0).norm() < 1e-15);
  CHECK(raw->position(0.5).norm() < 1e-15);
}

TEST_CASE("invalid curves") {
  CHECK(throws_code([] { make_circle(1.0, 1); }, ErrorCode::kInvalidCurve));
  CHECK(throws_code([] { normalize_to_unit_length(make_circle(0.0)); }, ErrorCode::kInvalidCurve));
  CHECK(throws_code([] { make_periodic_spline({{0, 0}, {1, 0}, {1, 1}}); }, ErrorCode::kInvalidCurve));
  CHECK(throws_code([] { catalog_curve("nonesuch"); }, ErrorCode::kInvalidArgument));
}

TEST_CASE("periodic spline interpolates its points") {
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 12; ++k) {
    const double a = 2 * oracle::kPi * k / 12;
    pts.push_back({std::cos(a) * (1.0 + 0.2 * std::cos(3 * a)), std::sin(a), 0.1 * std::sin(2 * a)});
  }
  const auto raw = make_periodic_spline(pts);
  CHECK(raw->ambient_dim() == 3);
  const auto knots = raw->breakpoints();
  REQUIRE(knots.size() == pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point p = raw->position(knots[k]);
    for (int i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(pts[k][i]).epsilon(1e-12));
  }
  // C^1 across each knot.
  for (double u : knots) {
    CHECK((raw->velocity(u - 1e-9) - raw->velocity(u + 1e-9)).norm() < 1e-6);
  }
  auto closed = pts;
  closed.push_back(pts.front());
  CHECK(make_periodic_spline(closed)->breakpoints().size() == pts.size());
}

TEST_CASE("curve files") {
  using nlohmann::json;
  const json knot = json::parse(R"({"kind":"torus_knot","params":{"p":3,"q":2,"R":2.0,"r":1.0}})");
  const ClosedCurve a = load_curve(knot);
  const ClosedCurve b = catalog_curve("trefoil");
  for (double t : {0.0, 0.2, 0.9}) CHECK((a.eval(t) - b.eval(t)).norm() < 1e-12);

  const json based = json::parse(R"({"kind":"ellipse","base":0.25})");
  CHECK((load_curve(based).eval(0.0) - catalog_curve("ellipse").eval(0.25)).norm() < 1e-12);
  CHECK((load_curve(based, 0.5).eval(0.0) - catalog_curve("ellipse").eval(0.5)).norm() < 1e-12);

  CHECK(throws_code([] { load_curve(json::parse(R"({"params":{}})")); }, ErrorCode::kParse));
  CHECK(throws_code([] { load_curve(json::parse(R"({"kind":"blob"})")); }, ErrorCode::kParse));
  CHECK(throws_code(
      [] {
        load_curve(json::parse(
            R"({"kind":"spline_from_points","closed":false,"points":[[0,0],[1,0],[1,1],[0,1],[0,2],[1,2],[2,2],[2,0]]})"));
      },
      ErrorCode::kInvalidCurve));
  CHECK(throws_code([] { load_curve_file("/nonexistent/curve.json"); }, ErrorCode::kIo));
}
