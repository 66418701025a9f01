#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

#include "poncelet/errors.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

// General real conic A x^2 + B xy + C y^2 + D x + E y + F = 0.
struct ConicCoeffs {
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;

  double evaluate(Vec2 p) const {
    return A * p.x * p.x + B * p.x * p.y + C * p.y * p.y + D * p.x +
           E * p.y + F;
  }
  double norm() const {
    return std::sqrt(A * A + B * B + C * C + D * D + E * E + F * F);
  }
};

// Scales to unit norm and fixes the sign so the first nonzero of (A, B, C)
// (falling back to (D, E, F) for rank-deficient quadratic parts) is positive.
inline ConicCoeffs normalized(ConicCoeffs c) {
  const double n = c.norm();
  if (!(n > 0.0)) {
    throw std::invalid_argument("normalized: zero conic");
  }
  double lead = 0.0;
  for (const double v : {c.A, c.B, c.C, c.D, c.E, c.F}) {
    if (std::abs(v) > 1e-14 * n) {
      lead = v;
      break;
    }
  }
  const double s = (lead < 0.0 ? -1.0 : 1.0) / n;
  return {s * c.A, s * c.B, s * c.C, s * c.D, s * c.E, s * c.F};
}

// Least-squares conic through a point cloud: minimizes the sum of squared
// algebraic values over unit-norm coefficient vectors, i.e. the singular
// direction of the n x 6 design matrix with smallest singular value.
inline ConicCoeffs fit_conic(std::span<const Vec2> points) {
  if (points.size() < 5) {
    throw std::invalid_argument("fit_conic: at least 5 points are required");
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), 6);
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const Vec2 p = points[static_cast<std::size_t>(i)];
    design(i, 0) = p.x * p.x;
    design(i, 1) = p.x * p.y;
    design(i, 2) = p.y * p.y;
    design(i, 3) = p.x;
    design(i, 4) = p.y;
    design(i, 5) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  // A second near-zero singular value means the null space has dimension > 1
  // and the points (e.g. all coincident or collinear) admit many conics.
  if (!(sigma(4) > 1e-12 * sigma(0))) {
    throw FitAmbiguityError(
        "fit_conic: points do not determine a unique conic");
  }
  const Eigen::VectorXd c = svd.matrixV().col(5);
  return normalized({c(0), c(1), c(2), c(3), c(4), c(5)});
}

enum class ConicKind { ellipse, parabola, hyperbola, degenerate };

inline const char* to_string(ConicKind kind) {
  switch (kind) {
    case ConicKind::ellipse: return "ellipse";
    case ConicKind::parabola: return "parabola";
    case ConicKind::hyperbola: return "hyperbola";
    case ConicKind::degenerate: return "degenerate";
  }
  return "unknown";
}

// Classified geometric form.  center is set for central conics (ellipse,
// hyperbola); axis data is set for real ellipses only, with axis_angle the
// major-axis direction normalized to (-pi/2, pi/2].
struct ConicClass {
  ConicKind kind = ConicKind::degenerate;
  std::optional<Vec2> center;
  double axis_angle = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
};

// Deterministic classification under unit-norm coefficients: degenerate when
// |det M3| <= 1e-12, parabola band |B^2-4AC| <= 1e-10, sign otherwise.  A
// full-rank conic with B^2-4AC < 0 but no real points (imaginary ellipse,
// e.g. x^2+y^2+1) is reported as degenerate: the spec's ellipse kind demands
// real points and the kind set is closed.
inline ConicClass classify_conic(const ConicCoeffs& raw) {
  const ConicCoeffs c = normalized(raw);
  const double det3 =
      c.A * (c.C * c.F - 0.25 * c.E * c.E) -
      0.5 * c.B * (0.5 * c.B * c.F - 0.25 * c.E * c.D) +
      0.5 * c.D * (0.25 * c.B * c.E - 0.5 * c.C * c.D);
  const double disc = c.B * c.B - 4.0 * c.A * c.C;

  ConicClass out;
  if (std::abs(det3) <= 1e-12) {
    out.kind = ConicKind::degenerate;
    return out;
  }
  if (std::abs(disc) <= 1e-10) {
    out.kind = ConicKind::parabola;
    return out;
  }
  // Central conic: the gradient vanishes at the center.
  Vec2 center;
  if (!solve2x2(2.0 * c.A, c.B, c.B, 2.0 * c.C, -c.D, -c.E, center)) {
    out.kind = ConicKind::degenerate;
    return out;
  }
  out.center = center;
  if (disc > 0.0) {
    out.kind = ConicKind::hyperbola;
    return out;
  }
  // det M3 = mu1 mu2 Fc in the centered frame, so a real ellipse needs det3
  // and the trace of the quadratic part to have opposite signs.
  if (!(det3 * (c.A + c.C) < 0.0)) {
    out.kind = ConicKind::degenerate;  // imaginary ellipse: no real points
    return out;
  }
  out.kind = ConicKind::ellipse;
  const double f_centered = c.F + 0.5 * (c.D * center.x + c.E * center.y);
  // Eigenvalues of [[A, B/2], [B/2, C]]; the smaller one carries the major
  // axis since the semi-axis along an eigenvector is sqrt(-Fc / mu).
  const double half_trace = 0.5 * (c.A + c.C);
  const double spread = std::hypot(0.5 * (c.A - c.C), 0.5 * c.B);
  const double mu_major = half_trace - spread;
  const double mu_minor = half_trace + spread;
  out.semi_major = std::sqrt(-f_centered / mu_major);
  out.semi_minor = std::sqrt(-f_centered / mu_minor);
  // Major-axis direction: eigenvector for mu_major, the better-conditioned
  // of the two algebraic forms; a circle has no preferred axis, angle 0.
  const Vec2 e1{0.5 * c.B, mu_major - c.A};
  const Vec2 e2{mu_major - c.C, 0.5 * c.B};
  const Vec2 axis = norm_sq(e1) >= norm_sq(e2) ? e1 : e2;
  double angle = (norm_sq(axis) > 0.0) ? std::atan2(axis.y, axis.x) : 0.0;
  while (angle > 0.5 * kPi) angle -= kPi;
  while (angle <= -0.5 * kPi) angle += kPi;
  out.axis_angle = angle;
  return out;
}

}  // namespace poncelet
