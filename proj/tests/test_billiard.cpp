#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "poncelet/billiard.hpp"
#include "poncelet/errors.hpp"

namespace {

using poncelet::CausticResult;
using poncelet::Direction;
using poncelet::Ellipse;
using poncelet::Orbit;
using poncelet::Vec2;
using poncelet::kPi;
using poncelet::kTwoPi;

TEST_CASE("direction reflection across a tangent", "[billiard]") {
  // Reflecting across the x-axis flips the y component.
  const Direction r =
      poncelet::reflect_direction(Direction(1.0, 1.0), Direction(1.0, 0.0));
  REQUIRE(r.dx() == Catch::Approx(std::sqrt(0.5)));
  REQUIRE(r.dy() == Catch::Approx(-std::sqrt(0.5)));

  // Reflecting twice restores the direction.
  const Direction tangent(0.3, -0.8);
  const Direction d(0.6, 0.7);
  const Direction twice = poncelet::reflect_direction(
      poncelet::reflect_direction(d, tangent), tangent);
  REQUIRE(twice.dx() == Catch::Approx(d.dx()));
  REQUIRE(twice.dy() == Catch::Approx(d.dy()));
}

TEST_CASE("caustic parameter of the triangular family", "[billiard]") {
  // Reference values from the independent shooting solver (Newton on the
  // reflection law, caustic read off the chord lines).
  struct Expected {
    double a, b, lambda;
  };
  const Expected table[] = {
      {2.0, 1.0, 0.9827122448568794},
      {5.0, 3.0, 8.669025350615582},
      {10.0, 1.0, 0.9999748754789508},
      {1.05, 1.0, 0.7851665173744814},
  };
  for (const Expected& row : table) {
    const CausticResult r = poncelet::find_caustic(Ellipse(row.a, row.b));
    CAPTURE(row.a, row.b);
    REQUIRE(std::abs(r.lambda_star - row.lambda) <= 1e-9);
    REQUIRE(r.bracket.first < r.lambda_star);
    REQUIRE(r.lambda_star < r.bracket.second);
    REQUIRE(r.residual_at_solution <= 1e-10);
    // The caustic is the confocal ellipse at lambda*.
    REQUIRE(r.caustic.a ==
            Catch::Approx(std::sqrt(row.a * row.a - r.lambda_star)));
    REQUIRE(r.caustic.b ==
            Catch::Approx(std::sqrt(row.b * row.b - r.lambda_star)));
  }

  // Circle: the inscribed triangles are equilateral, the caustic is the
  // half-radius incircle, so lambda = r^2 - (r/2)^2 = 3/4 exactly.
  const CausticResult circle = poncelet::find_caustic(Ellipse(1.0, 1.0));
  REQUIRE(std::abs(circle.lambda_star - 0.75) <= 1e-12);

  REQUIRE_THROWS_AS(poncelet::find_caustic(Ellipse(2.0, 1.0), 0.0),
                    std::invalid_argument);
}

TEST_CASE("very eccentric ellipses bracket near the boundary", "[billiard]") {
  // lambda*/b^2 for (10, 1) exceeds the last interior node of a uniform
  // 64-point grid; the solver must still bracket and converge.
  const CausticResult r = poncelet::find_caustic(Ellipse(10.0, 1.0));
  REQUIRE(r.lambda_star > 63.0 / 64.0);
  REQUIRE(r.bracket.second > 63.0 / 64.0);
  REQUIRE(r.bracket.second < 1.0);
}

TEST_CASE("triangular orbits close and obey the reflection law",
          "[billiard]") {
  const Ellipse e(2.0, 1.0);
  const CausticResult caustic = poncelet::find_caustic(e);
  for (const double t : {0.0, 0.31, 1.7, kPi, 4.0, 6.1}) {
    const Orbit o = poncelet::poncelet_triangle(e, caustic.caustic, t);
    CAPTURE(t);
    REQUIRE(o.t[0] == Catch::Approx(poncelet::wrap_angle(t)));
    REQUIRE(o.closure_residual <= 1e-9);
    REQUIRE(poncelet::reflection_residual(e, o) <= 1e-9);
    for (int i = 0; i < 3; ++i) {
      REQUIRE(e.implicit_value(o.v[i]) == Catch::Approx(0.0).margin(1e-12));
      REQUIRE(poncelet::chord_tangency_defect(caustic.caustic, o.v[i],
                                              o.v[(i + 1) % 3]) <= 1e-8);
    }
  }
}

TEST_CASE("orbit construction rejects non-confocal caustics", "[billiard]") {
  const Ellipse e(2.0, 1.0);
  // Wrong focal distance.
  REQUIRE_THROWS_AS(poncelet::poncelet_triangle(e, Ellipse(1.0, 0.5), 0.0),
                    std::invalid_argument);
  // Confocal but not interior (the ellipse itself).
  REQUIRE_THROWS_AS(poncelet::poncelet_triangle(e, e, 0.0),
                    std::invalid_argument);
}

TEST_CASE("symmetric orbits straddle the major axis", "[billiard]") {
  const Ellipse e(2.0, 1.0);
  const auto [right, left] = poncelet::symmetric_orbits(e);

  // Through (a, 0): the mirror pair closes the vertical side tangent to the
  // caustic at its left vertex, so both mirror vertices sit at x = -A.
  REQUIRE(right.t[0] == 0.0);
  REQUIRE(right.v[0].x == Catch::Approx(2.0));
  REQUIRE(right.v[0].y == Catch::Approx(0.0).margin(1e-15));
  const double s_star = 2.622998969669779;  // shooting-solver reference
  REQUIRE(std::abs(right.t[1] - s_star) <= 1e-9);
  REQUIRE(std::abs(right.t[2] - (kTwoPi - s_star)) <= 1e-9);
  REQUIRE(right.v[1].x == Catch::Approx(-1.7370341836426595).margin(1e-9));
  REQUIRE(right.v[1].y == Catch::Approx(0.49565921883308073).margin(1e-9));
  REQUIRE(right.v[2].x == Catch::Approx(right.v[1].x).margin(1e-9));
  REQUIRE(right.v[2].y == Catch::Approx(-right.v[1].y).margin(1e-9));

  // Through (-a, 0): the mirror image.
  REQUIRE(left.t[0] == Catch::Approx(kPi));
  REQUIRE(left.v[1].x == Catch::Approx(1.7370341836426595).margin(1e-9));

  REQUIRE_THROWS_AS(poncelet::symmetric_orbits(Ellipse(1.0, 1.0)),
                    poncelet::CircleError);
}

TEST_CASE("chord tangency defect vanishes only at tangency", "[billiard]") {
  const Ellipse caustic(1.5, 0.5);
  // Tangent at the top vertex: the horizontal line y = 0.5.
  REQUIRE(poncelet::chord_tangency_defect(caustic, Vec2{-2.0, 0.5},
                                          Vec2{3.0, 0.5}) ==
          Catch::Approx(0.0).margin(1e-15));
  // A chord through the center misses tangency by b^2.
  REQUIRE(poncelet::chord_tangency_defect(caustic, Vec2{-1.0, 0.0},
                                          Vec2{1.0, 0.0}) ==
          Catch::Approx(0.25));
  REQUIRE_THROWS_AS(poncelet::chord_tangency_defect(caustic, Vec2{1.0, 1.0},
                                                    Vec2{1.0, 1.0}),
                    poncelet::DegeneracyError);
}

}  // namespace
