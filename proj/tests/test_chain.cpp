#include <doctest.h>

#include "ngon/catalog.hpp"
#include "ngon/chain.hpp"
#include "ngon/polygon.hpp"
#include "ngon/chord.hpp"
#include "ngon/error.hpp"
#include "oracles.hpp"

using namespace ngon;

TEST_CASE("chord metric and its partials") {
  const ChordMetric circle(catalog_curve("circle"));
  CHECK(circle.distance(0.1, 0.35) == doctest::Approx(oracle::circle_chord(0.25)).epsilon(1e-13));
  CHECK(circle.distance(0.9, 0.1) == doctest::Approx(oracle::circle_chord(0.2)).epsilon(1e-13));

  for (std::string_view name : {"ellipse", "trefoil", "lissajous", "circle4d"}) {
    CAPTURE(name);
    const ChordMetric m(catalog_curve(name));
    for (auto [t1, t2] : {std::pair{0.1, 0.4}, {0.7, 0.05}, {0.33, 0.34}}) {
      const ChordPartials c = m.partials(t1, t2);
      const double h = 1e-6;
      const double d1 = (m.distance(t1 + h, t2) - m.distance(t1 - h, t2)) / (2 * h);
      const double d2 = (m.distance(t1, t2 + h) - m.distance(t1, t2 - h)) / (2 * h);
      CHECK(c.d_dt1 == doctest::Approx(d1).epsilon(1e-6));
      CHECK(c.d_dt2 == doctest::Approx(d2).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(circle.partials(0.2, 0.2), Error);
}

TEST_CASE("monotone ball") {
  SUBCASE("circle keeps the initial radius") {
    const MonotoneBall b = monotone_radius(catalog_curve("circle"));
    CHECK(b.radius == 0.1);
    // Arc endpoints lie on the sphere.
    const ChordMetric m(catalog_curve("circle"));
    CHECK(m.distance(0.0, b.t_right) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(m.distance(0.0, b.t_left) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(b.t_right == doctest::Approx(oracle::circle_step(0.1)).epsilon(1e-10));
  }
  SUBCASE("invariants on every smooth simple curve") {
    for (std::string_view name : {"ellipse", "trefoil", "lissajous", "circle4d"}) {
      CAPTURE(name);
      const ClosedCurve c = catalog_curve(name);
      const ChordMetric m(c);
      const MonotoneBall b = monotone_radius(c);
      CHECK(b.t_left < 0.0);
      CHECK(b.t_right > 0.0);
      CHECK(b.min_tangent_dot >= 1e-3);
      // Distance to the base grows monotonically along each half of J.
      double last = 0.0;
      for (int k = 1; k <= 200; ++k) {
        const double d = m.distance(0.0, b.t_right * k / 200);
        CHECK(d > last);
        last = d;
      }
      // Nothing outside J comes within the ball.
      for (int k = 1; k < 1000; ++k) {
        const double t = b.t_right + (1.0 + b.t_left - b.t_right) * k / 1000;
        CHECK(m.distance(0.0, t) > b.radius - 1e-12);
      }
    }
  }
  SUBCASE("failures name the broken hypothesis") {
    try {
      monotone_radius(catalog_curve("corner_triangle"));
      FAIL("corner accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoMonotoneBall);
    }
    try {
      monotone_radius(catalog_curve("figure_eight"));
      FAIL("double point accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBallNotSingleArc);
    }
    // Away from the apex the triangle is fine.
    CHECK(monotone_radius(catalog_curve("corner_triangle"), 0.2).radius > 0.0);
  }
}

TEST_CASE("chain steps are exact") {
  const ClosedCurve circle = catalog_curve("circle");
  for (double eps : {1e-4, 0.01, 0.1, 0.3}) {
    CAPTURE(eps);
    CHECK(next_chain_point(circle, 0.2, eps) ==
          doctest::Approx(0.2 + oracle::circle_step(eps)).epsilon(1e-13));
  }

  const ClosedCurve trefoil = catalog_curve("trefoil");
  const ChordMetric m(trefoil);
  const MonotoneBall b = monotone_radius(trefoil);
  const double eps = b.radius / 40.0;
  const EpsilonChain chain = build_chain(trefoil, 0.0, eps, 20);
  REQUIRE(chain.params.size() == 20);
  CHECK(chain.params.front() == 0.0);
  for (int i = 1; i < 20; ++i) {
    CHECK(chain.params[i] > chain.params[i - 1]);
    CHECK(std::abs(m.distance(chain.params[i - 1], chain.params[i]) - eps) < 1e-12);
    CHECK((chain.vertices[i] - trefoil.eval(chain.params[i])).norm() == 0.0);
  }
}

TEST_CASE("chain step takes the first crossing") {
  // On the figure eight starting just before the double point, the first
  // point at chord eps is on the same lobe even though the other lobe also
  // passes within eps.
  const ClosedCurve c = catalog_curve("figure_eight");
  const ChordMetric m(c);
  const double from = 0.49;
  const double eps = 0.005;
  const double next = next_chain_point(c, from, eps);
  CHECK(m.distance(from, next) == doctest::Approx(eps).epsilon(1e-10));
  for (int k = 1; k < 1000; ++k) {
    CHECK(m.distance(from, from + (next - from) * k / 1000) < eps);
  }
}

TEST_CASE("oversized steps report their index") {
  const ClosedCurve circle = catalog_curve("circle");
  const double diameter = 1.0 / oracle::kPi;
  CHECK_THROWS_AS(next_chain_point(circle, 0.0, 1.01 * diameter), StepTooLarge);
  try {
    build_chain(circle, 0.0, 1.5 * diameter, 4);
    FAIL("no throw");
  } catch (const StepTooLarge& e) {
    CHECK(e.step_index() == 1);
    CHECK(e.epsilon() == 1.5 * diameter);
  }
}

TEST_CASE("closure gap changes sign at the regular polygon") {
  const ClosedCurve circle = catalog_curve("circle");
  for (int n = 3; n <= 8; ++n) {
    const double edge = oracle::circle_edge(n);
    CHECK(closure_gap(circle, 0.99 * edge, n).gap < 0.0);
    CHECK(closure_gap(circle, 1.01 * edge, n).gap > 0.0);
    CHECK(std::abs(closure_gap(circle, edge, n).gap) < 1e-12);
    CHECK(closure_gap(circle, edge, n).chord_gap < 1e-12);
  }
}

TEST_CASE("chain bisection") {
  const ClosedCurve circle = catalog_curve("circle");
  for (int n = 3; n <= 12; ++n) {
    const PolygonSolution s = solve_by_chain_bisection(circle, n);
    CHECK(s.method == SolveMethod::kChain);
    CHECK(s.edge_length == doctest::Approx(oracle::circle_edge(n)).epsilon(1e-12));
    for (int i = 1; i < n; ++i) CHECK(std::abs(s.params[i] - double(i) / n) < 1e-10);
  }
  // The method needs n above a curve-dependent threshold. Below it the
  // regular polygon's vertices need not be consecutive first crossings (the
  // 2:1 ellipse at n = 3), and then no bracket closes.
  for (std::string_view name : {"ellipse", "trefoil", "lissajous"}) {
    CAPTURE(name);
    const ClosedCurve c = catalog_curve(name);
    const ChordMetric m(c);
    for (int n : {3, 4, 5, 8, 12}) {
      CAPTURE(n);
      try {
        const PolygonSolution s = solve_by_chain_bisection(c, n);
        CHECK(verify_polygon(c, s).passed());
        for (int i = 1; i <= n; ++i) {
          CHECK(std::abs(m.distance(s.params[i - 1], s.params[i]) - s.edge_length) < 1e-9);
        }
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kBracketNotFound);
      }
    }
  }
  CHECK_THROWS_AS(solve_by_chain_bisection(catalog_curve("ellipse"), 3), Error);
  for (int n : {4, 5, 8, 12}) CHECK_NOTHROW(solve_by_chain_bisection(catalog_curve("ellipse"), n));
  for (int n : {3, 4, 12}) CHECK_NOTHROW(solve_by_chain_bisection(catalog_curve("trefoil"), n));

  const ClosedCurve trefoil = catalog_curve("trefoil");
  const PolygonSolution big = solve_by_chain_bisection(trefoil, 100);
  const VerifyReport report = verify_polygon(trefoil, big);
  CHECK(report.passed());
  CHECK(report.max_edge_deviation < 1e-9);
  CHECK_THROWS_AS(solve_by_chain_bisection(circle, 2), Error);
  // No regular triangle has its vertex at the 45 degree apex.
  const ClosedCurve corner = catalog_curve("corner_triangle");
  bool verified = false;
  try {
    verified = verify_polygon(corner, solve_by_chain_bisection(corner, 3)).passed();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBracketNotFound);
  }
  CHECK_FALSE(verified);
}
