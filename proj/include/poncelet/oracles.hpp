#pragma once

#include <array>
#include <cmath>

#include "poncelet/billiard.hpp"
#include "poncelet/conic_fit.hpp"
#include "poncelet/ellipse.hpp"
#include "poncelet/errors.hpp"

// Independent cross-checks for the main pipeline.  Nothing here reuses the
// caustic-tangent construction: orbits are found by solving the reflection
// law directly, and conics by exact interpolation, so systematic bias in the
// primary code paths cannot hide.
namespace poncelet::oracles {

// Signed equal-angle defect at the middle vertex of P(prev) -> P(at) -> P(next).
inline double reflection_defect_at(const Ellipse& e, double t_prev, double t_at,
                                   double t_next) {
  const Vec2 incoming = ellipse_point(e, t_at) - ellipse_point(e, t_prev);
  const Vec2 outgoing = ellipse_point(e, t_next) - ellipse_point(e, t_at);
  const Vec2 tangent = ellipse_tangent_dir(e, t_at).vec();
  return signed_angle(incoming, tangent) - signed_angle(tangent, outgoing);
}

// Boundary parameter s of the isosceles triangular orbit ((a,0), P(s), P(-s)),
// located by scanning and bisecting the reflection defect at P(s).
inline double symmetric_orbit_param(const Ellipse& e) {
  const auto defect = [&](double s) {
    return reflection_defect_at(e, 0.0, s, kTwoPi - s);
  };
  constexpr int kScan = 128;
  const double s_min = 0.30 * kPi;
  const double s_max = 0.97 * kPi;
  double lo = s_min;
  double flo = defect(lo);
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    const double s = s_min + (s_max - s_min) * i / kScan;
    const double f = defect(s);
    if (flo == 0.0 || flo * f < 0.0) {
      hi = s;
      bracketed = true;
      break;
    }
    lo = s;
    flo = f;
  }
  if (!bracketed) {
    throw SolverError("symmetric_orbit_param: no sign change of the defect");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (defect(mid) * flo <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = defect(lo);
    }
  }
  return 0.5 * (lo + hi);
}

// Triangular orbit through P(t0) by shooting in the launch angle: a chord
// leaves P(t0) at angle phi above the forward tangent and is pushed through
// two reflections of the billiard map.  The closure defect (total parameter
// advance of the three chords minus 2*pi) is continuous in phi, close to
// -2*pi for grazing launches and close to +4*pi for reversed-grazing ones,
// so bisection always lands on the counterclockwise triangle.
inline std::array<double, 3> shoot_triangle(const Ellipse& e, double t0) {
  const double t_start = wrap_angle(t0);
  const Direction tangent = ellipse_tangent_dir(e, t_start);
  std::array<double, 3> params{t_start, 0.0, 0.0};
  const auto closure = [&](double phi) {
    const Direction launch(
        std::cos(phi) * tangent.dx() - std::sin(phi) * tangent.dy(),
        std::sin(phi) * tangent.dx() + std::cos(phi) * tangent.dy());
    double t = t_start;
    Direction d = launch;
    double advance = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const auto [t_next, d_next] = billiard_step(e, t, d);
      advance += wrap_angle(t_next - t);
      if (k < 3) params[static_cast<std::size_t>(k)] = t_next;
      t = t_next;
      d = d_next;
    }
    return advance - kTwoPi;
  };

  double lo = 1e-4;
  double hi = kPi - 1e-4;
  if (!(closure(lo) < 0.0 && closure(hi) > 0.0)) {
    throw SolverError(
        "shoot_triangle: launch bracket does not enclose a closed orbit");
  }
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (closure(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double residual = closure(0.5 * (lo + hi));
  if (!(std::abs(residual) <= 1e-10)) {
    throw SolverError("shoot_triangle: closure defect did not converge");
  }
  return params;
}

// Confocal parameter of the ellipse tangent to the chord p-q:
// lambda = a^2 u^2 + b^2 v^2 - w^2 for the chord line with unit normal.
inline double lambda_of_chord(const Ellipse& e, Vec2 p, Vec2 q) {
  Vec2 n{q.y - p.y, p.x - q.x};
  const double len = norm(n);
  if (!(len > 1e-300)) {
    throw DegeneracyError("lambda_of_chord: coincident chord endpoints");
  }
  n = (1.0 / len) * n;
  const double w = -dot(n, p);
  return e.a * e.a * n.x * n.x + e.b * e.b * n.y * n.y - w * w;
}

// Caustic parameter measured from a directly-shot triangle: the mean of the
// three per-side values (they agree to solver precision).
inline double shooting_caustic_lambda(const Ellipse& e, double t0) {
  const std::array<double, 3> t = shoot_triangle(e, t0);
  std::array<Vec2, 3> v;
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = ellipse_point(e, t[static_cast<std::size_t>(i)]);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += lambda_of_chord(e, v[static_cast<std::size_t>(i)],
                           v[static_cast<std::size_t>((i + 1) % 3)]);
  }
  return acc / 3.0;
}

// Exact conic through five points in general position: the null vector of
// the 5x6 interpolation system by Gauss-Jordan elimination with partial
// pivoting.  Unit-norm and sign-normalized like fit_conic.
inline ConicCoeffs five_point_conic(const std::array<Vec2, 5>& pts) {
  double m[5][6];
  double scale = 0.0;
  for (int r = 0; r < 5; ++r) {
    const Vec2 p = pts[static_cast<std::size_t>(r)];
    const double row[6] = {p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0};
    for (int c = 0; c < 6; ++c) {
      m[r][c] = row[c];
      scale = std::max(scale, std::abs(row[c]));
    }
  }

  int pivot_row_of_col[6] = {-1, -1, -1, -1, -1, -1};
  int rank = 0;
  for (int c = 0; c < 6 && rank < 5; ++c) {
    int best = -1;
    double best_abs = 1e-12 * scale;
    for (int r = rank; r < 5; ++r) {
      if (std::abs(m[r][c]) > best_abs) {
        best = r;
        best_abs = std::abs(m[r][c]);
      }
    }
    if (best < 0) continue;  // column stays free
    for (int k = 0; k < 6; ++k) std::swap(m[rank][k], m[best][k]);
    const double inv = 1.0 / m[rank][c];
    for (int k = 0; k < 6; ++k) m[rank][k] *= inv;
    for (int r = 0; r < 5; ++r) {
      if (r == rank) continue;
      const double factor = m[r][c];
      for (int k = 0; k < 6; ++k) m[r][k] -= factor * m[rank][k];
    }
    pivot_row_of_col[c] = rank;
    ++rank;
  }
  if (rank < 5) {
    throw FitAmbiguityError(
        "five_point_conic: points do not determine a unique conic");
  }
  int free_col = -1;
  for (int c = 0; c < 6; ++c) {
    if (pivot_row_of_col[c] < 0) free_col = c;
  }
  double x[6];
  x[free_col] = 1.0;
  for (int c = 0; c < 6; ++c) {
    if (pivot_row_of_col[c] >= 0) {
      x[c] = -m[pivot_row_of_col[c]][free_col];
    }
  }
  return normalized({x[0], x[1], x[2], x[3], x[4], x[5]});
}

}  // namespace poncelet::oracles
