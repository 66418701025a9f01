#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "poncelet/errors.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

enum class CenterKind { circumcenter, incenter, centroid, orthocenter };

inline const char* to_string(CenterKind kind) {
  switch (kind) {
    case CenterKind::circumcenter: return "circumcenter";
    case CenterKind::incenter: return "incenter";
    case CenterKind::centroid: return "centroid";
    case CenterKind::orthocenter: return "orthocenter";
  }
  return "unknown";
}

inline std::optional<CenterKind> center_kind_from_string(std::string_view s) {
  if (s == "circumcenter") return CenterKind::circumcenter;
  if (s == "incenter") return CenterKind::incenter;
  if (s == "centroid") return CenterKind::centroid;
  if (s == "orthocenter") return CenterKind::orthocenter;
  return std::nullopt;
}

struct CircleData {
  Vec2 center;
  double radius;
};

namespace detail {

// Squared diameter of the vertex set; the scale for degeneracy thresholds.
inline double vertex_scale_sq(Vec2 v1, Vec2 v2, Vec2 v3) {
  return std::max({norm_sq(v2 - v1), norm_sq(v3 - v1), norm_sq(v3 - v2)});
}

// Twice the signed area; throws when the triangle is (near-)collinear.
inline double guarded_twice_area(Vec2 v1, Vec2 v2, Vec2 v3,
                                 const char* who) {
  const double scale_sq = vertex_scale_sq(v1, v2, v3);
  const double twice_area = cross(v2 - v1, v3 - v1);
  if (!(std::abs(twice_area) > 1e-12 * scale_sq)) {
    throw DegeneracyError(std::string(who) +
                          ": vertices are collinear or coincident");
  }
  return twice_area;
}

}  // namespace detail

// Circumscribed circle via the perpendicular-bisector 2x2 solve, with the
// origin shifted to v1 for conditioning:
//   2 (vi - v1) . (c - v1) = |vi - v1|^2,  i = 2, 3.
inline CircleData circumcircle(Vec2 v1, Vec2 v2, Vec2 v3) {
  detail::guarded_twice_area(v1, v2, v3, "circumcircle");
  const Vec2 d2 = v2 - v1;
  const Vec2 d3 = v3 - v1;
  Vec2 rel;
  if (!solve2x2(2.0 * d2.x, 2.0 * d2.y, 2.0 * d3.x, 2.0 * d3.y,
                norm_sq(d2), norm_sq(d3), rel)) {
    throw DegeneracyError("circumcircle: singular bisector system");
  }
  const Vec2 center = v1 + rel;
  return CircleData{center, norm(rel)};
}

namespace detail {

inline Vec2 incenter(Vec2 v1, Vec2 v2, Vec2 v3) {
  const double l1 = distance(v2, v3);  // side opposite v1
  const double l2 = distance(v1, v3);
  const double l3 = distance(v1, v2);
  return (1.0 / (l1 + l2 + l3)) * (l1 * v1 + l2 * v2 + l3 * v3);
}

// Intersection of the altitudes: (h - v1) . (v3 - v2) = 0 and
// (h - v2) . (v3 - v1) = 0.
inline Vec2 orthocenter(Vec2 v1, Vec2 v2, Vec2 v3) {
  const Vec2 s1 = v3 - v2;
  const Vec2 s2 = v3 - v1;
  Vec2 h;
  if (!solve2x2(s1.x, s1.y, s2.x, s2.y, dot(v1, s1), dot(v2, s2), h)) {
    throw DegeneracyError("orthocenter: singular altitude system");
  }
  return h;
}

}  // namespace detail

inline Vec2 triangle_center(CenterKind kind, Vec2 v1, Vec2 v2, Vec2 v3) {
  detail::guarded_twice_area(v1, v2, v3, "triangle_center");
  switch (kind) {
    case CenterKind::circumcenter:
      return circumcircle(v1, v2, v3).center;
    case CenterKind::incenter:
      return detail::incenter(v1, v2, v3);
    case CenterKind::centroid:
      return (1.0 / 3.0) * (v1 + v2 + v3);
    case CenterKind::orthocenter:
      return detail::orthocenter(v1, v2, v3);
  }
  throw std::invalid_argument("triangle_center: unknown center kind");
}

}  // namespace poncelet
