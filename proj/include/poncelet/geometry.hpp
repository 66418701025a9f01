#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poncelet {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
inline Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
inline Vec2 operator-(Vec2 p) { return {-p.x, -p.y}; }
inline Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
inline Vec2 operator*(Vec2 p, double s) { return s * p; }

inline double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
inline double cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }
inline double norm_sq(Vec2 p) { return dot(p, p); }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }
inline double distance(Vec2 p, Vec2 q) { return norm(p - q); }

// Unit-length direction.  Construction normalizes, so dx()^2 + dy()^2 = 1 to
// machine precision; vectors too short to normalize reliably are rejected.
class Direction {
 public:
  Direction(double dx, double dy) {
    const double len = std::hypot(dx, dy);
    if (!(len > 1e-300)) {
      throw std::invalid_argument("Direction: cannot normalize a zero vector");
    }
    dx_ = dx / len;
    dy_ = dy / len;
  }
  explicit Direction(Vec2 v) : Direction(v.x, v.y) {}

  double dx() const { return dx_; }
  double dy() const { return dy_; }
  Vec2 vec() const { return {dx_, dy_}; }
  Direction reversed() const { return Direction(-dx_, -dy_); }

 private:
  double dx_;
  double dy_;
};

// Wraps an angle to [0, 2*pi).
inline double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Absolute angular distance between two angles, in [0, pi].
inline double angular_distance(double s, double t) {
  const double d = wrap_angle(s - t);
  return std::min(d, kTwoPi - d);
}

// Signed angle from u to v, in (-pi, pi].
inline double signed_angle(Vec2 u, Vec2 v) {
  return std::atan2(cross(u, v), dot(u, v));
}

// Solves [a11 a12; a21 a22] x = (b1, b2) with partial pivoting.  Returns
// false when a pivot vanishes; callers guard conditioning themselves.
inline bool solve2x2(double a11, double a12, double a21, double a22,
                     double b1, double b2, Vec2& out) {
  if (std::abs(a21) > std::abs(a11)) {
    std::swap(a11, a21);
    std::swap(a12, a22);
    std::swap(b1, b2);
  }
  if (a11 == 0.0) return false;
  const double m = a21 / a11;
  const double r22 = a22 - m * a12;
  const double r2 = b2 - m * b1;
  if (r22 == 0.0) return false;
  out.y = r2 / r22;
  out.x = (b1 - a12 * out.y) / a11;
  return true;
}

}  // namespace poncelet
