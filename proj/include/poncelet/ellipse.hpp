#pragma once

#include <cmath>
#include <stdexcept>

#include "poncelet/errors.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

// Axis-aligned, origin-centered ellipse x^2/a^2 + y^2/b^2 = 1 with a >= b > 0.
// The foci line is the x-axis by construction.
struct Ellipse {
  double a;
  double b;

  Ellipse(double semi_major, double semi_minor) : a(semi_major), b(semi_minor) {
    if (!(std::isfinite(a) && std::isfinite(b) && a >= b && b > 0.0)) {
      throw std::invalid_argument("Ellipse: semi-axes must satisfy a >= b > 0");
    }
  }

  bool is_circle() const { return a == b; }
  double linear_eccentricity() const {
    return std::sqrt(std::max(a * a - b * b, 0.0));
  }
  // Value of x^2/a^2 + y^2/b^2 - 1; zero on the boundary.
  double implicit_value(Vec2 p) const {
    return (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b) - 1.0;
  }
};

// Boundary point at eccentric angle t: (a cos t, b sin t).
inline Vec2 ellipse_point(const Ellipse& e, double t) {
  return {e.a * std::cos(t), e.b * std::sin(t)};
}

// Unit tangent at P(t), oriented counterclockwise.
inline Direction ellipse_tangent_dir(const Ellipse& e, double t) {
  return Direction(-e.a * std::sin(t), e.b * std::cos(t));
}

// Interior confocal ellipse with semi-axes (sqrt(a^2-l), sqrt(b^2-l)).
inline Ellipse confocal_ellipse(const Ellipse& e, double lambda) {
  if (!(lambda >= 0.0 && lambda < e.b * e.b)) {
    throw std::domain_error("confocal_ellipse: lambda must lie in [0, b^2)");
  }
  return Ellipse(std::sqrt(e.a * e.a - lambda), std::sqrt(e.b * e.b - lambda));
}

// Eccentric angle of a point assumed to lie on (or numerically near) E.
inline double boundary_param(const Ellipse& e, Vec2 p) {
  return wrap_angle(std::atan2(p.y / e.b, p.x / e.a));
}

// Parameter of the second intersection of the line {P(t) + s d} with E.
// Since P(t) is on E, the quadratic in s is s (A s + 2 B) = 0 with
//   A = dx^2/a^2 + dy^2/b^2,  B = px dx / a^2 + py dy / b^2;
// the root s = 0 is the base point and the larger-|s| root is returned.
// A vanishing second root means d is tangent to E at P(t).
inline double chord_from(const Ellipse& e, double t, Direction d) {
  const Vec2 p = ellipse_point(e, t);
  const double a2 = e.a * e.a;
  const double b2 = e.b * e.b;
  const double qa = d.dx() * d.dx() / a2 + d.dy() * d.dy() / b2;
  const double qb = p.x * d.dx() / a2 + p.y * d.dy() / b2;
  const double s1 = -2.0 * qb / qa;
  if (std::abs(s1) <= 1e-14 * e.a) {
    throw TangencyError("chord_from: direction is tangent to the ellipse");
  }
  if (std::abs(s1) < 1e-10 * e.a) {
    throw NearTangencyError(
        "chord_from: intersection roots too close to separate");
  }
  return boundary_param(e, p + s1 * d.vec());
}

}  // namespace poncelet
