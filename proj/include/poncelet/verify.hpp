#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "poncelet/billiard.hpp"
#include "poncelet/conic_fit.hpp"
#include "poncelet/cp2.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/oracles.hpp"
#include "poncelet/triangle_centers.hpp"

// The acceptance suite: nine quantitative criteria, each a pass/fail result
// with a measured-value detail string.  Shared by the `verify` CLI
// subcommand and the standalone acceptance binary.
namespace poncelet::verify {

struct CriterionResult {
  int index;
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  unsigned int seed = 12345;  // drives criterion 8's random rational lines
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline CriterionResult guarded(int index, const std::string& name,
                               const std::function<CriterionResult()>& body) {
  try {
    return body();
  } catch (const std::exception& err) {
    return {index, name, false, std::string("exception: ") + err.what()};
  }
}

}  // namespace detail

// 1. Circumcenter locus is a symmetric, origin-centered ellipse for four
//    representative eccentricities.
inline CriterionResult criterion_circumcenter_locus() {
  const int index = 1;
  const std::string name = "circumcenter-locus-ellipse";
  return detail::guarded(index, name, [&] {
    const std::array<std::pair<double, double>, 4> axes{
        {{2.0, 1.0}, {5.0, 3.0}, {10.0, 1.0}, {1.05, 1.0}}};
    double worst_residual = 0.0;
    double worst_symmetry = 0.0;
    bool ok = true;
    for (const auto& [a, b] : axes) {
      const LocusReport rep =
          locus_report(Ellipse(a, b), CenterKind::circumcenter, 720);
      const bool is_ellipse = rep.conic_class &&
                              rep.conic_class->kind == ConicKind::ellipse;
      ok = ok && !rep.collapsed && is_ellipse && rep.max_residual <= 1e-8 &&
           rep.symmetry_defect <= 1e-8;
      worst_residual = std::max(worst_residual, rep.max_residual);
      worst_symmetry = std::max(worst_symmetry, rep.symmetry_defect);
    }
    return CriterionResult{index, name, ok,
                           "4 ellipses: max residual " +
                               detail::fmt(worst_residual) +
                               " (<= 1e-8), max symmetry defect " +
                               detail::fmt(worst_symmetry) + " (<= 1e-8)"};
  });
}

// 2. On a circle the locus collapses to the center point.
inline CriterionResult criterion_circle_collapse() {
  const int index = 2;
  const std::string name = "circle-collapse";
  return detail::guarded(index, name, [&] {
    const LocusReport rep =
        locus_report(Ellipse(1.0, 1.0), CenterKind::circumcenter, 720);
    double worst = 0.0;
    for (const LocusSample& s : rep.samples) {
      worst = std::max(worst, norm(s.center));
    }
    const bool ok = rep.collapsed && worst <= 1e-9;
    return CriterionResult{index, name, ok,
                           "720 samples within " + detail::fmt(worst) +
                               " of the origin (<= 1e-9), collapsed flag " +
                               (rep.collapsed ? "set" : "NOT set")};
  });
}

// 3. The two symmetric-orbit circumcenters are the distinct x-axis
//    intersections of the fitted locus.
inline CriterionResult criterion_foci_line_intersections() {
  const int index = 3;
  const std::string name = "foci-line-intersections";
  return detail::guarded(index, name, [&] {
    const LocusReport rep =
        locus_report(Ellipse(2.0, 1.0), CenterKind::circumcenter, 720);
    if (!rep.foci_line_points || !rep.fit) {
      return CriterionResult{index, name, false,
                             "missing fit or foci-line points"};
    }
    const auto [c1, c2] = *rep.foci_line_points;
    const double worst_y = std::max(std::abs(c1.y), std::abs(c2.y));
    const double gap = std::abs(c1.x - c2.x);
    // x-axis intersections of the fitted conic: A x^2 + D x + F = 0.
    const ConicCoeffs& f = *rep.fit;
    const double disc = f.D * f.D - 4.0 * f.A * f.F;
    if (disc <= 0.0) {
      return CriterionResult{index, name, false,
                             "fitted locus does not cross the x-axis"};
    }
    const double root_lo = (-f.D - std::sqrt(disc)) / (2.0 * f.A);
    const double root_hi = (-f.D + std::sqrt(disc)) / (2.0 * f.A);
    const double x_lo = std::min(c1.x, c2.x);
    const double x_hi = std::max(c1.x, c2.x);
    const double mismatch =
        std::max(std::abs(root_lo - x_lo), std::abs(root_hi - x_hi));
    const bool ok = worst_y <= 1e-9 && gap >= 1e-6 && mismatch <= 1e-6;
    return CriterionResult{index, name, ok,
                           "|y| " + detail::fmt(worst_y) +
                               " (<= 1e-9), separation " + detail::fmt(gap) +
                               " (>= 1e-6), intersection mismatch " +
                               detail::fmt(mismatch) + " (<= 1e-6)"};
  });
}

// 4. Proof checkpoints at the symmetric orbit: r'(0) = 0, c'(0) vertical and
//    nonzero.
inline CriterionResult criterion_derivative_checks() {
  const int index = 4;
  const std::string name = "derivative-checks";
  return detail::guarded(index, name, [&] {
    const DerivativeChecks d = derivative_checks(Ellipse(2.0, 1.0), 1e-4);
    const double c_prime_norm = norm(d.c_prime);
    const bool ok = std::abs(d.r_prime) <= 1e-6 * d.r0 &&
                    std::abs(d.c_prime.x) <= 1e-6 * c_prime_norm &&
                    c_prime_norm >= 1e-6;
    return CriterionResult{index, name, ok,
                           "|r'(0)| " + detail::fmt(std::abs(d.r_prime)) +
                               " (<= 1e-6 r0), |c'x| " +
                               detail::fmt(std::abs(d.c_prime.x)) +
                               " (<= 1e-6 |c'|), |c'| " +
                               detail::fmt(c_prime_norm) + " (>= 1e-6)"};
  });
}

// 5. Closure, reflection law, per-side caustic tangency over the family, and
//    agreement of the bisection caustic with the shooting oracle.
inline CriterionResult criterion_caustic_closure_tangency() {
  const int index = 5;
  const std::string name = "caustic-closure-tangency";
  return detail::guarded(index, name, [&] {
    const Ellipse e(2.0, 1.0);
    const CausticResult caustic = find_caustic(e);
    double worst_closure = 0.0, worst_reflection = 0.0, worst_tangency = 0.0;
    for (int k = 0; k < 720; ++k) {
      const double t = kTwoPi * k / 720.0;
      const Orbit o = poncelet_triangle(e, caustic.caustic, t);
      worst_closure = std::max(worst_closure, o.closure_residual);
      worst_reflection = std::max(worst_reflection, reflection_residual(e, o));
      for (int i = 0; i < 3; ++i) {
        worst_tangency = std::max(
            worst_tangency,
            chord_tangency_defect(caustic.caustic, o.v[static_cast<std::size_t>(i)],
                                  o.v[static_cast<std::size_t>((i + 1) % 3)]));
      }
    }
    const double lambda_shot = oracles::shooting_caustic_lambda(e, 0.4);
    const double lambda_gap = std::abs(lambda_shot - caustic.lambda_star);
    const bool ok = worst_closure <= 1e-9 && worst_reflection <= 1e-9 &&
                    worst_tangency <= 1e-8 && lambda_gap <= 1e-9;
    return CriterionResult{
        index, name, ok,
        "closure " + detail::fmt(worst_closure) + " (<= 1e-9), reflection " +
            detail::fmt(worst_reflection) + " (<= 1e-9), tangency " +
            detail::fmt(worst_tangency) + " (<= 1e-8), |lambda gap| " +
            detail::fmt(lambda_gap) + " (<= 1e-9)"};
  });
}

// 6. Companion loci: centroid locus is the half-scale ellipse; incenter and
//    orthocenter loci fit ellipses.
inline CriterionResult criterion_companion_loci() {
  const int index = 6;
  const std::string name = "companion-loci";
  return detail::guarded(index, name, [&] {
    const Ellipse e(2.0, 1.0);
    const LocusReport centroid = locus_report(e, CenterKind::centroid, 720);
    bool ok = centroid.conic_class &&
              centroid.conic_class->kind == ConicKind::ellipse;
    double ratio_err = 1.0, center_norm = 1.0;
    if (ok) {
      const ConicClass& cls = *centroid.conic_class;
      ratio_err = std::abs(cls.semi_minor / cls.semi_major - 0.5);
      center_norm = cls.center ? norm(*cls.center) : 1.0;
      ok = ratio_err <= 1e-6 && center_norm <= 1e-8;
    }
    double worst_residual = centroid.max_residual;
    for (const CenterKind kind :
         {CenterKind::incenter, CenterKind::orthocenter}) {
      const LocusReport rep = locus_report(e, kind, 720);
      ok = ok && rep.conic_class &&
           rep.conic_class->kind == ConicKind::ellipse &&
           rep.max_residual <= 1e-8;
      worst_residual = std::max(worst_residual, rep.max_residual);
    }
    return CriterionResult{
        index, name, ok,
        "centroid axis-ratio defect " + detail::fmt(ratio_err) +
            " (<= 1e-6), center offset " + detail::fmt(center_norm) +
            " (<= 1e-8), worst locus residual " + detail::fmt(worst_residual) +
            " (<= 1e-8)"};
  });
}

// 7. Exact isotropic tangents, foci, confocal invariance, circle predicate.
inline CriterionResult criterion_exact_tangents_foci() {
  const int index = 7;
  const std::string name = "exact-isotropic-tangents-foci";
  return detail::guarded(index, name, [&] {
    using namespace cp2;
    const auto line = [](int re_u, int im_u, int re_v, int im_v, int re_w) {
      return HLine(Complex(Rational(re_u), Rational(im_u)),
                   Complex(Rational(re_v), Rational(im_v)),
                   Complex(Rational(re_w)));
    };
    const std::array<HLine, 4> expected_tangents{
        line(1, 0, 0, 1, 4), line(1, 0, 0, 1, -4), line(1, 0, 0, -1, 4),
        line(1, 0, 0, -1, -4)};
    const auto matches_set = [&](const std::vector<HLine>& got) {
      if (got.size() != 4) return false;
      for (const HLine& want : expected_tangents) {
        const auto hit = std::count_if(
            got.begin(), got.end(),
            [&](const HLine& g) { return same_line(g, want); });
        if (hit != 1) return false;
      }
      return true;
    };

    const ConicMat e53 = ConicMat::ellipse_from_squares(25, 9);
    const ConicMat confocal = ConicMat::ellipse_from_squares(20, 4);
    const bool tangents_ok = matches_set(isotropic_tangents(e53));
    const bool confocal_ok = matches_set(isotropic_tangents(confocal));

    const std::vector<HPoint> got_foci = foci(e53);
    const std::array<HPoint, 4> expected_foci{
        HPoint(Complex(4), Complex(0), Complex(1)),
        HPoint(Complex(-4), Complex(0), Complex(1)),
        HPoint(Complex(0), Complex(Rational(0), Rational(4)), Complex(1)),
        HPoint(Complex(0), Complex(Rational(0), Rational(-4)), Complex(1))};
    bool foci_ok = got_foci.size() == 4;
    for (const HPoint& want : expected_foci) {
      foci_ok = foci_ok &&
                std::count_if(got_foci.begin(), got_foci.end(),
                              [&](const HPoint& g) {
                                return same_point(g, want);
                              }) == 1;
    }

    const bool circle_ok = is_circle(ConicMat::unit_circle()) &&
                           !is_circle(ConicMat::ellipse_from_squares(4, 1));
    const bool ok = tangents_ok && confocal_ok && foci_ok && circle_ok;
    return CriterionResult{
        index, name, ok,
        std::string("E(5,3) tangents {x+-iy = +-4z} ") +
            (tangents_ok ? "exact" : "WRONG") + ", confocal E(sqrt20,2) " +
            (confocal_ok ? "identical" : "WRONG") + ", foci " +
            (foci_ok ? "exact" : "WRONG") + ", circle predicate " +
            (circle_ok ? "exact" : "WRONG")};
  });
}

// 8. The reflection involution: exact involutivity, fixed line, isometry,
//    non-triviality over random rational lines; isotropic rejection; the
//    limit-law probe.
inline CriterionResult criterion_reflection_involution(unsigned int seed) {
  const int index = 8;
  const std::string name = "reflection-involution";
  return detail::guarded(index, name, [&] {
    using namespace cp2;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> numerator(-9, 9);
    std::uniform_int_distribution<int> denominator(1, 4);
    const auto random_rational = [&] {
      return Rational(numerator(rng), denominator(rng));
    };

    int checked = 0;
    bool ok = true;
    while (checked < 100 && ok) {
      const Rational u = random_rational();
      const Rational v = random_rational();
      const Rational w = random_rational();
      if (u == 0 && v == 0) continue;  // infinity line: isotropic, skipped
      const HLine mirror{Complex(u), Complex(v), Complex(w)};
      const LineReflection refl = reflection_about(mirror);

      // Involution, exactly, as a matrix identity.
      ok = ok && refl.compose(refl).is_identity();
      // Fixes two independent points of the mirror.
      const HPoint at_infinity(Complex(v), Complex(-u), Complex(0));
      const HPoint finite = (u != 0)
                                ? HPoint(Complex(-w), Complex(0), Complex(u))
                                : HPoint(Complex(0), Complex(-w), Complex(v));
      ok = ok && same_point(refl(at_infinity), at_infinity) &&
           same_point(refl(finite), finite);
      // Preserves the complexified form dx^2 + dy^2 on directions.
      const std::array<std::pair<int, int>, 4> probe_dirs{
          {{1, 0}, {0, 1}, {1, 1}, {2, 3}}};
      for (const auto& [dx, dy] : probe_dirs) {
        const HPoint dir(Complex(dx), Complex(dy), Complex(0));
        const HPoint image = refl(dir);
        ok = ok && (image.x * image.x + image.y * image.y ==
                    dir.x * dir.x + dir.y * dir.y);
      }
      // Non-trivial.
      ok = ok && !refl.is_identity();
      ++checked;
    }

    const auto raises_isotropy = [](const HLine& l) {
      try {
        reflection_about(l);
      } catch (const IsotropyError&) {
        return true;
      } catch (...) {
        return false;
      }
      return false;
    };
    const bool isotropy_raised =
        raises_isotropy(HLine(Complex(1), Complex::i(), Complex(0))) &&
        raises_isotropy(infinity_line());

    // Limit-law probe: mirrors L_n with direction (1, i(1 - 1/n)) reflect the
    // x-axis ever closer (projectively, exactly) to the isotropic limit line.
    const HLine x_axis(Complex(0), Complex(1), Complex(0));
    const HLine limit(Complex::i(), Complex(-1), Complex(0));
    std::vector<Rational> dist;
    for (const int n : {10, 100, 1000}) {
      const Rational mu(n - 1, n);
      const HLine mirror(Complex(Rational(0), mu), Complex(-1), Complex(0));
      dist.push_back(
          projective_distance_sq(reflect_line(mirror, x_axis), limit));
    }
    const bool probe_ok =
        dist[0] > dist[1] && dist[1] > dist[2] && dist[2] > 0;

    ok = ok && isotropy_raised && probe_ok;
    return CriterionResult{
        index, name, ok,
        std::to_string(checked) +
            " random rational lines exact (R^2=id, fixes L, isometric, "
            "non-trivial); isotropic input " +
            (isotropy_raised ? "raises" : "DOES NOT raise") +
            " the isotropy error; limit probe " +
            (probe_ok ? "monotone decreasing" : "NOT monotone")};
  });
}

// 9. The least-squares fit agrees with the exact five-point interpolation.
inline CriterionResult criterion_fit_oracle_equivalence() {
  const int index = 9;
  const std::string name = "fit-oracle-equivalence";
  return detail::guarded(index, name, [&] {
    const Ellipse e(2.0, 1.0);
    const std::array<double, 5> angles{0.2, 1.3, 2.1, 3.8, 5.3};
    std::array<Vec2, 5> five;
    for (std::size_t i = 0; i < five.size(); ++i) {
      five[i] = ellipse_point(e, angles[i]);
    }
    const ConicCoeffs exact = oracles::five_point_conic(five);
    const ConicCoeffs lsq5 = fit_conic(five);
    std::vector<Vec2> many;
    for (int k = 0; k < 64; ++k) {
      many.push_back(ellipse_point(e, kTwoPi * k / 64.0));
    }
    const ConicCoeffs lsq64 = fit_conic(many);
    const auto gap = [](const ConicCoeffs& p, const ConicCoeffs& q) {
      return std::max({std::abs(p.A - q.A), std::abs(p.B - q.B),
                       std::abs(p.C - q.C), std::abs(p.D - q.D),
                       std::abs(p.E - q.E), std::abs(p.F - q.F)});
    };
    const double gap5 = gap(exact, lsq5);
    const double gap64 = gap(exact, lsq64);
    const bool ok = gap5 <= 1e-10 && gap64 <= 1e-10;
    return CriterionResult{index, name, ok,
                           "5-point gap " + detail::fmt(gap5) +
                               ", 64-point gap " + detail::fmt(gap64) +
                               " (both <= 1e-10)"};
  });
}

inline std::vector<CriterionResult> run_acceptance(
    const VerifyOptions& options = {}) {
  return {criterion_circumcenter_locus(),
          criterion_circle_collapse(),
          criterion_foci_line_intersections(),
          criterion_derivative_checks(),
          criterion_caustic_closure_tangency(),
          criterion_companion_loci(),
          criterion_exact_tangents_foci(),
          criterion_reflection_involution(options.seed),
          criterion_fit_oracle_equivalence()};
}

}  // namespace poncelet::verify
