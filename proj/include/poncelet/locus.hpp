#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "poncelet/billiard.hpp"
#include "poncelet/conic_fit.hpp"
#include "poncelet/errors.hpp"
#include "poncelet/triangle_centers.hpp"

namespace poncelet {

struct LocusSample {
  double t;
  Vec2 center;
};

// Full diagnostics for one center kind over the Poncelet family.
struct LocusReport {
  Ellipse ellipse;
  CenterKind kind;
  std::size_t n;
  CausticResult caustic;
  std::vector<LocusSample> samples;
  std::optional<ConicCoeffs> fit;          // absent when collapsed
  std::optional<ConicClass> conic_class;   // absent when collapsed
  double max_residual = 0.0;               // max |algebraic value|, unit norm
  double symmetry_defect = 0.0;            // max(|B|, |D|, |E|)
  std::optional<std::pair<Vec2, Vec2>> foci_line_points;
  bool collapsed = false;
};

// Centers of the Poncelet triangles through t_k = 2 pi k / n.  Failures are
// wrapped in SamplingError carrying the offending parameter.
inline std::vector<LocusSample> sample_locus(const Ellipse& e,
                                             const Ellipse& caustic,
                                             CenterKind kind, std::size_t n) {
  if (n < 5) {
    throw std::invalid_argument("sample_locus: at least 5 samples required");
  }
  std::vector<LocusSample> samples;
  samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    try {
      const Orbit o = poncelet_triangle(e, caustic, t);
      samples.push_back({t, triangle_center(kind, o.v[0], o.v[1], o.v[2])});
    } catch (const GeometryError& err) {
      throw SamplingError(t, err.what());
    }
  }
  return samples;
}

inline std::vector<LocusSample> sample_locus(const Ellipse& e, CenterKind kind,
                                             std::size_t n) {
  return sample_locus(e, find_caustic(e).caustic, kind, n);
}

// Samples one center locus, detects the point-locus (circle) degeneration,
// and otherwise fits and classifies the conic.  collapse_rel scales the
// collapse threshold: the locus counts as a point when the sample cloud's
// bounding-box diameter is <= collapse_rel * a.
inline LocusReport locus_report(const Ellipse& e, CenterKind kind,
                                std::size_t n, double caustic_tol = 1e-10,
                                double collapse_rel = 1e-9) {
  if (n < 64) {
    throw std::invalid_argument(
        "locus_report: at least 64 samples required for a stable fit");
  }
  CausticResult caustic = find_caustic(e, caustic_tol);
  std::vector<LocusSample> samples = sample_locus(e, caustic.caustic, kind, n);

  double min_x = samples[0].center.x, max_x = min_x;
  double min_y = samples[0].center.y, max_y = min_y;
  for (const LocusSample& s : samples) {
    min_x = std::min(min_x, s.center.x);
    max_x = std::max(max_x, s.center.x);
    min_y = std::min(min_y, s.center.y);
    max_y = std::max(max_y, s.center.y);
  }
  const double diameter = std::hypot(max_x - min_x, max_y - min_y);

  LocusReport report{e,
                     kind,
                     n,
                     std::move(caustic),
                     std::move(samples),
                     std::nullopt,
                     std::nullopt,
                     0.0,
                     0.0,
                     std::nullopt,
                     false};
  report.collapsed = diameter <= collapse_rel * e.a;
  if (!report.collapsed) {
    std::vector<Vec2> points;
    points.reserve(report.samples.size());
    for (const LocusSample& s : report.samples) points.push_back(s.center);
    report.fit = fit_conic(points);
    report.conic_class = classify_conic(*report.fit);
    for (const LocusSample& s : report.samples) {
      report.max_residual =
          std::max(report.max_residual, std::abs(report.fit->evaluate(s.center)));
    }
    report.symmetry_defect = std::max(
        {std::abs(report.fit->B), std::abs(report.fit->D), std::abs(report.fit->E)});
  }
  if (kind == CenterKind::circumcenter && !e.is_circle()) {
    const auto [o1, o2] = symmetric_orbits(e, report.caustic.caustic);
    report.foci_line_points = {circumcircle(o1.v[0], o1.v[1], o1.v[2]).center,
                               circumcircle(o2.v[0], o2.v[1], o2.v[2]).center};
  }
  return report;
}

struct DerivativeChecks {
  double r0;        // circumradius of the symmetric orbit at t = 0
  double r_prime;   // central-difference d r / d t at t = 0
  Vec2 c_prime;     // central-difference circumcenter velocity at t = 0
};

// Central finite differences of the circumradius and circumcenter along the
// family at the symmetric-orbit parameter t = 0 (vertex (a, 0)).
inline DerivativeChecks derivative_checks(const Ellipse& e, double h = 1e-4) {
  if (e.is_circle()) {
    throw CircleError("derivative_checks: input is a circle");
  }
  if (!(h > 0.0 && h < 1e-2)) {
    throw std::invalid_argument("derivative_checks: step must be in (0, 1e-2)");
  }
  const CausticResult caustic = find_caustic(e);
  const auto circle_at = [&](double t) {
    const Orbit o = poncelet_triangle(e, caustic.caustic, t);
    return circumcircle(o.v[0], o.v[1], o.v[2]);
  };
  const CircleData at0 = circle_at(0.0);
  const CircleData plus = circle_at(h);
  const CircleData minus = circle_at(-h);
  return {at0.radius, (plus.radius - minus.radius) / (2.0 * h),
          (1.0 / (2.0 * h)) * (plus.center - minus.center)};
}

}  // namespace poncelet
