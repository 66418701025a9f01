#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "poncelet/ellipse.hpp"
#include "poncelet/errors.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

// A triangular billiard orbit: boundary parameters in [0, 2*pi), vertices
// v[i] = P(t[i]), and the angular defect after three tangent chords.
struct Orbit {
  std::array<double, 3> t{};
  std::array<Vec2, 3> v{};
  double closure_residual = 0.0;
};

// Output of the caustic solver: the confocal parameter of the triangular
// family, the caustic itself, the sign-change interval found by the grid
// scan, and the rotation defect left at the solution.
struct CausticResult {
  double lambda_star;
  Ellipse caustic;
  std::pair<double, double> bracket;
  double residual_at_solution;
};

// Mirror image of d across the tangent: 2 <d, tangent> tangent - d.
inline Direction reflect_direction(Direction d, Direction tangent) {
  const double c = d.dx() * tangent.dx() + d.dy() * tangent.dy();
  return Direction(2.0 * c * tangent.dx() - d.dx(),
                   2.0 * c * tangent.dy() - d.dy());
}

// One bounce of the billiard map: follow the chord from P(t) along d, then
// reflect at the arrival point.
inline std::pair<double, Direction> billiard_step(const Ellipse& e, double t,
                                                  Direction d) {
  const double tn = chord_from(e, t, d);
  return {tn, reflect_direction(d, ellipse_tangent_dir(e, tn))};
}

// Parameter of the next vertex along the counterclockwise tangent chord from
// P(t) to an interior confocal caustic.  Tangency points (A cos h, B sin h)
// seen from P satisfy the polar-line condition u cos h + v sin h = 1 with
// u = px/A, v = py/B, i.e. h = atan2(v,u) +- acos(1/hypot(u,v)).  Of the two
// tangent lines the one whose chord turns counterclockwise about the center
// is kept, which makes the construction a single-valued map of t.
inline double caustic_tangent_step(const Ellipse& e, const Ellipse& caustic,
                                   double t) {
  const Vec2 p = ellipse_point(e, t);
  const double u = p.x / caustic.a;
  const double v = p.y / caustic.b;
  const double r = std::hypot(u, v);
  if (!(r > 1.0)) {
    throw DegeneracyError(
        "caustic_tangent_step: boundary point is not outside the caustic");
  }
  const double phi = std::atan2(v, u);
  const double delta = std::acos(1.0 / r);
  for (const double sign : {1.0, -1.0}) {
    const double h = phi + sign * delta;
    const Vec2 q{caustic.a * std::cos(h), caustic.b * std::sin(h)};
    const Vec2 chord = q - p;
    if (cross(p, chord) > 0.0) {
      return chord_from(e, t, Direction(chord));
    }
  }
  throw DegeneracyError(
      "caustic_tangent_step: no counterclockwise tangent chord");
}

namespace detail {

// Rotation defect of the triangular family at caustic parameter lambda:
// total parameter advance of three tangent chords from t = 0, minus 2*pi.
// Negative below the Poncelet parameter, positive above, monotone between.
inline double triangle_rotation_defect(const Ellipse& e,
                                       const Ellipse& caustic) {
  double t = 0.0;
  double advance = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double tn = caustic_tangent_step(e, caustic, t);
    advance += wrap_angle(tn - t);
    t = tn;
  }
  return advance - kTwoPi;
}

}  // namespace detail

// Finds the confocal parameter lambda* of the triangular (rotation number
// 1/3) Poncelet family: grid-scans the rotation defect over (0, b^2) for a
// sign change, then bisects the bracket to width 1e-14 b^2.  The scan grid
// is augmented with a near-boundary node because for very eccentric ellipses
// lambda* exceeds the largest interior grid node.
inline CausticResult find_caustic(const Ellipse& e, double tol = 1e-10) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("find_caustic: tolerance must be positive");
  }
  const double b2 = e.b * e.b;
  const auto defect = [&](double lam) {
    return detail::triangle_rotation_defect(e, confocal_ellipse(e, lam));
  };

  constexpr int kGridPoints = 64;
  double lo = b2 / kGridPoints;
  double flo = defect(lo);
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 2; i <= kGridPoints; ++i) {
    const double lam = (i < kGridPoints) ? b2 * i / kGridPoints
                                         : b2 * (1.0 - 1e-12);
    const double f = defect(lam);
    if (flo <= 0.0 && f > 0.0) {
      hi = lam;
      bracketed = true;
      break;
    }
    lo = lam;
    flo = f;
  }
  if (!bracketed) {
    throw SolverError("find_caustic: no sign change of the rotation defect "
                      "in (0, b^2)");
  }
  const std::pair<double, double> bracket{lo, hi};

  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * b2; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (defect(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double lambda_star = 0.5 * (lo + hi);
  const double residual = std::abs(defect(lambda_star));
  if (!(residual <= tol)) {
    throw SolverError("find_caustic: rotation defect at the solution exceeds "
                      "the tolerance");
  }
  return CausticResult{lambda_star, confocal_ellipse(e, lambda_star), bracket,
                       residual};
}

// Completes the boundary point P(t) to the triangular orbit tangent to the
// caustic: three counterclockwise tangent chords.  closure_residual is the
// angular distance between the start parameter and the end of the third
// chord; it is <= 1e-9 whenever the caustic comes from a converged
// find_caustic run.
inline Orbit poncelet_triangle(const Ellipse& e, const Ellipse& caustic,
                               double t) {
  const double c2_e = e.a * e.a - e.b * e.b;
  const double c2_g = caustic.a * caustic.a - caustic.b * caustic.b;
  if (!(caustic.a < e.a) || std::abs(c2_e - c2_g) > 1e-6 * e.a * e.a) {
    throw std::invalid_argument(
        "poncelet_triangle: caustic is not an interior confocal ellipse");
  }

  Orbit o;
  o.t[0] = wrap_angle(t);
  o.t[1] = caustic_tangent_step(e, caustic, o.t[0]);
  o.t[2] = caustic_tangent_step(e, caustic, o.t[1]);
  const double t_end = caustic_tangent_step(e, caustic, o.t[2]);
  o.closure_residual = angular_distance(t_end, o.t[0]);
  for (int i = 0; i < 3; ++i) o.v[i] = ellipse_point(e, o.t[i]);

  // Real Poncelet triangles are uniformly fat; these guards only catch
  // numerical failure (e.g. a caustic that never converged).
  const double twice_area = std::abs(cross(o.v[1] - o.v[0], o.v[2] - o.v[0]));
  if (twice_area < 2e-10 * e.a * e.a) {
    throw DegeneracyError("poncelet_triangle: degenerate (flat) triangle");
  }
  for (int i = 0; i < 3; ++i) {
    if (distance(o.v[i], o.v[(i + 1) % 3]) <= 1e-9 * e.a) {
      throw DegeneracyError("poncelet_triangle: repeated vertex");
    }
  }
  return o;
}

// Maximum over the vertices of the equal-angle defect
// |angle(in, tangent) - angle(tangent, out)|.
inline double reflection_residual(const Ellipse& e, const Orbit& o) {
  for (int i = 0; i < 3; ++i) {
    if (distance(o.v[i], o.v[(i + 1) % 3]) <= 1e-9 * e.a) {
      throw DegeneracyError("reflection_residual: repeated vertex");
    }
  }
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 incoming = o.v[i] - o.v[(i + 2) % 3];
    const Vec2 outgoing = o.v[(i + 1) % 3] - o.v[i];
    const Vec2 tangent = ellipse_tangent_dir(e, o.t[i]).vec();
    const double defect =
        signed_angle(incoming, tangent) - signed_angle(tangent, outgoing);
    worst = std::max(worst, std::abs(defect));
  }
  return worst;
}

// The two orbits through the ellipse's major-axis vertices (a,0) and (-a,0);
// each is symmetric about the foci line.  Requires a genuine ellipse: on a
// circle all orbits are congruent and the construction is meaningless.
inline std::pair<Orbit, Orbit> symmetric_orbits(const Ellipse& e,
                                                const Ellipse& caustic) {
  if (e.is_circle()) {
    throw CircleError("symmetric_orbits: input is a circle");
  }
  return {poncelet_triangle(e, caustic, 0.0),
          poncelet_triangle(e, caustic, kPi)};
}

inline std::pair<Orbit, Orbit> symmetric_orbits(const Ellipse& e) {
  if (e.is_circle()) {
    throw CircleError("symmetric_orbits: input is a circle");
  }
  return symmetric_orbits(e, find_caustic(e).caustic);
}

// Tangency defect of the chord through p and q against the caustic: writes
// the chord as u x + v y + w = 0 with u^2 + v^2 = 1 and returns
// |A^2 u^2 + B^2 v^2 - w^2|, which vanishes exactly at tangency.
inline double chord_tangency_defect(const Ellipse& caustic, Vec2 p, Vec2 q) {
  Vec2 n{q.y - p.y, p.x - q.x};
  const double len = norm(n);
  if (!(len > 1e-300)) {
    throw DegeneracyError("chord_tangency_defect: coincident chord endpoints");
  }
  n = (1.0 / len) * n;
  const double w = -dot(n, p);
  return std::abs(caustic.a * caustic.a * n.x * n.x +
                  caustic.b * caustic.b * n.y * n.y - w * w);
}

}  // namespace poncelet
