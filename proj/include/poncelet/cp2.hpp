#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "poncelet/errors.hpp"

// Exact complex projective plane over the Gaussian rationals Q(i): points,
// lines, symmetric conic matrices, isotropy, tangency via the dual conic,
// foci, the circle predicate, and the complex reflection law.  No floating
// point anywhere; every predicate is exact.
namespace poncelet::cp2 {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact square root of a non-negative rational, when one exists in Q.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  const Int sqrt_num = boost::multiprecision::sqrt(num);
  const Int sqrt_den = boost::multiprecision::sqrt(den);
  if (sqrt_num * sqrt_num != num || sqrt_den * sqrt_den != den) {
    return std::nullopt;
  }
  return Rational(sqrt_num, sqrt_den);
}

// Gaussian rational re + im*i.
struct Complex {
  Rational re{};
  Rational im{};

  Complex() = default;
  Complex(Rational r) : re(std::move(r)) {}  // NOLINT: scalar promotion
  Complex(int n) : re(n) {}                  // NOLINT: literal promotion
  Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return Complex(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  Complex conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }
};

inline bool operator==(const Complex& a, const Complex& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
inline Complex operator+(const Complex& a, const Complex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline Complex operator-(const Complex& a, const Complex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator/(const Complex& a, const Complex& b) {
  const Rational n = b.norm_sq();
  if (n == 0) throw std::domain_error("cp2: division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

namespace detail {

inline std::string rational_str(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

}  // namespace detail

// "0", "4", "-3/2", "i", "-i", "4i", "2+3i", "1/2-3/4i".
inline std::string to_string(const Complex& z) {
  if (z.im == 0) return detail::rational_str(z.re);
  std::string imag;
  if (z.im == 1) {
    imag = "i";
  } else if (z.im == -1) {
    imag = "-i";
  } else {
    imag = detail::rational_str(z.im) + "i";
  }
  if (z.re == 0) return imag;
  if (z.im > 0) return detail::rational_str(z.re) + "+" + imag;
  return detail::rational_str(z.re) + imag;
}

// Exact square root in Q(i), when one exists.  For x + iy with y != 0 the
// root needs |z| rational and (re + |z|)/2 a rational square.
inline std::optional<Complex> exact_sqrt(const Complex& z) {
  if (z.im == 0) {
    if (z.re >= 0) {
      const auto r = exact_sqrt(z.re);
      if (!r) return std::nullopt;
      return Complex(*r);
    }
    const auto r = exact_sqrt(Rational(-z.re));
    if (!r) return std::nullopt;
    return Complex(Rational(0), *r);
  }
  const auto modulus = exact_sqrt(z.norm_sq());
  if (!modulus) return std::nullopt;
  const Rational re_sq = (z.re + *modulus) / 2;
  const auto re = exact_sqrt(re_sq);
  if (!re || *re == 0) return std::nullopt;
  return Complex(*re, z.im / (2 * (*re)));
}

// Homogeneous point [x : y : z]; equality is projective.
struct HPoint {
  Complex x, y, z;
  HPoint(Complex px, Complex py, Complex pz)
      : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {
    if (x.is_zero() && y.is_zero() && z.is_zero()) {
      throw std::invalid_argument("HPoint: all coordinates are zero");
    }
  }
};

// Homogeneous line u x + v y + w z = 0; equality is projective.
struct HLine {
  Complex u, v, w;
  HLine(Complex lu, Complex lv, Complex lw)
      : u(std::move(lu)), v(std::move(lv)), w(std::move(lw)) {
    if (u.is_zero() && v.is_zero() && w.is_zero()) {
      throw std::invalid_argument("HLine: all coefficients are zero");
    }
  }
};

inline Complex incidence(const HLine& l, const HPoint& p) {
  return l.u * p.x + l.v * p.y + l.w * p.z;
}
inline bool on_line(const HLine& l, const HPoint& p) {
  return incidence(l, p).is_zero();
}

inline bool same_point(const HPoint& a, const HPoint& b) {
  return (a.x * b.y - a.y * b.x).is_zero() &&
         (a.x * b.z - a.z * b.x).is_zero() &&
         (a.y * b.z - a.z * b.y).is_zero();
}
inline bool same_line(const HLine& a, const HLine& b) {
  return (a.u * b.v - a.v * b.u).is_zero() &&
         (a.u * b.w - a.w * b.u).is_zero() &&
         (a.v * b.w - a.w * b.v).is_zero();
}

// Scales so the first nonzero coordinate is 1 — canonical representative
// for exact set comparison.
inline HPoint canonical(const HPoint& p) {
  const Complex lead = !p.x.is_zero() ? p.x : (!p.y.is_zero() ? p.y : p.z);
  return HPoint(p.x / lead, p.y / lead, p.z / lead);
}
inline HLine canonical(const HLine& l) {
  const Complex lead = !l.u.is_zero() ? l.u : (!l.v.is_zero() ? l.v : l.w);
  return HLine(l.u / lead, l.v / lead, l.w / lead);
}

inline HPoint meet(const HLine& a, const HLine& b) {
  const Complex x = a.v * b.w - a.w * b.v;
  const Complex y = a.w * b.u - a.u * b.w;
  const Complex z = a.u * b.v - a.v * b.u;
  if (x.is_zero() && y.is_zero() && z.is_zero()) {
    throw DegeneracyError("meet: the lines coincide");
  }
  return HPoint(x, y, z);
}
inline HLine join(const HPoint& a, const HPoint& b) {
  const Complex u = a.y * b.z - a.z * b.y;
  const Complex v = a.z * b.x - a.x * b.z;
  const Complex w = a.x * b.y - a.y * b.x;
  if (u.is_zero() && v.is_zero() && w.is_zero()) {
    throw DegeneracyError("join: the points coincide");
  }
  return HLine(u, v, w);
}

// The cyclic points I = [1 : i : 0] and J = [1 : -i : 0].
inline std::pair<HPoint, HPoint> cyclic_points() {
  return {HPoint(Complex(1), Complex::i(), Complex(0)),
          HPoint(Complex(1), -Complex::i(), Complex(0))};
}

inline HLine infinity_line() { return HLine(Complex(0), Complex(0), Complex(1)); }

// A line is isotropic iff it passes through a cyclic point, equivalently
// u^2 + v^2 = 0 (which also covers the infinity line).
inline bool is_isotropic(const HLine& l) {
  return (l.u * l.u + l.v * l.v).is_zero();
}

// Symmetric 3x3 conic matrix M; the conic is {P : P^T M P = 0}.
class ConicMat {
 public:
  using Matrix = std::array<std::array<Complex, 3>, 3>;

  explicit ConicMat(Matrix m) : m_(std::move(m)) {
    bool nonzero = false;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (m_[i][j] != m_[j][i]) {
          throw std::invalid_argument("ConicMat: matrix is not symmetric");
        }
        nonzero = nonzero || !m_[i][j].is_zero();
      }
    }
    if (!nonzero) throw std::invalid_argument("ConicMat: zero matrix");
  }

  // A x^2 + B xy + C y^2 + D xz + E yz + F z^2 = 0.
  static ConicMat from_coeffs(const Complex& A, const Complex& B,
                              const Complex& C, const Complex& D,
                              const Complex& E, const Complex& F) {
    const Complex half(Rational(1, 2));
    return ConicMat(Matrix{{{A, half * B, half * D},
                            {half * B, C, half * E},
                            {half * D, half * E, F}}});
  }

  // x^2/a2 + y^2/b2 = z^2 for rational squared semi-axes.
  static ConicMat ellipse_from_squares(const Rational& a2, const Rational& b2) {
    if (!(a2 > 0 && b2 > 0)) {
      throw std::invalid_argument(
          "ConicMat: squared semi-axes must be positive");
    }
    return from_coeffs(Complex(Rational(1) / a2), Complex(0),
                       Complex(Rational(1) / b2), Complex(0), Complex(0),
                       Complex(-1));
  }

  static ConicMat unit_circle() {
    return from_coeffs(Complex(1), Complex(0), Complex(1), Complex(0),
                       Complex(0), Complex(-1));
  }

  const Complex& at(int i, int j) const { return m_[i][j]; }

  Complex evaluate(const HPoint& p) const {
    const std::array<Complex, 3> v{p.x, p.y, p.z};
    Complex acc;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) acc = acc + v[i] * m_[i][j] * v[j];
    }
    return acc;
  }

  // Polar line M p of a point.
  HLine polar(const HPoint& p) const {
    const std::array<Complex, 3> v{p.x, p.y, p.z};
    std::array<Complex, 3> row{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) row[i] = row[i] + m_[i][j] * v[j];
    }
    return HLine(row[0], row[1], row[2]);
  }

  Complex det() const {
    return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
           m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
           m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
  }

  bool regular() const { return !det().is_zero(); }

  // Adjugate (transpose of cofactors); for symmetric M it is symmetric and
  // carries the dual conic: a line l is tangent to M iff l^T adj(M) l = 0.
  ConicMat adjugate() const {
    Matrix adj;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
        const int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
        adj[i][j] = m_[r1][c1] * m_[r2][c2] - m_[r1][c2] * m_[r2][c1];
      }
    }
    return ConicMat(adj);
  }

  bool is_real() const {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (m_[i][j].im != 0) return false;
      }
    }
    return true;
  }

 private:
  Matrix m_;
};

namespace detail {

// Dual bilinear form l1^T adj l2 evaluated on line coefficient vectors.
inline Complex dual_form(const ConicMat& adj, const HLine& l1, const HLine& l2) {
  const std::array<Complex, 3> a{l1.u, l1.v, l1.w};
  const std::array<Complex, 3> b{l2.u, l2.v, l2.w};
  Complex acc;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) acc = acc + a[i] * adj.at(i, j) * b[j];
  }
  return acc;
}

}  // namespace detail

// Tangent line to a regular conic at a point of the conic: the polar M p.
inline HLine conic_tangent_line(const ConicMat& c, const HPoint& p) {
  if (!c.regular()) {
    throw SingularConicError("conic_tangent_line: conic is singular");
  }
  if (!c.evaluate(p).is_zero()) {
    throw IncidenceError("conic_tangent_line: point does not lie on the conic");
  }
  return c.polar(p);
}

// All isotropic tangent lines, with multiplicity: for each cyclic point the
// pencil through it is (y_cp, -1, 0) + k (0, 0, 1), and tangency is the
// vanishing of the dual form, a quadratic in k solved exactly.  Returns the
// two I-tangents first, then the two J-tangents.
inline std::vector<HLine> isotropic_tangents(const ConicMat& c) {
  if (!c.regular()) {
    throw SingularConicError("isotropic_tangents: conic is singular");
  }
  const ConicMat adj = c.adjugate();
  const auto [ci, cj] = cyclic_points();
  std::vector<HLine> tangents;
  tangents.reserve(4);
  for (const HPoint& cp : {ci, cj}) {
    const HLine base(cp.y, Complex(-1), Complex(0));
    const HLine dz(Complex(0), Complex(0), Complex(1));
    const Complex alpha = detail::dual_form(adj, dz, dz);
    const Complex beta = Complex(2) * detail::dual_form(adj, base, dz);
    const Complex gamma = detail::dual_form(adj, base, base);
    if (alpha.is_zero()) {
      // The infinity line would be tangent through this pencil; outside the
      // supported (ellipse-type) domain.
      throw SingularConicError(
          "isotropic_tangents: pencil leading coefficient vanishes");
    }
    const Complex disc = beta * beta - Complex(4) * alpha * gamma;
    const auto root = exact_sqrt(disc);
    if (!root) {
      throw FieldExtensionError(
          "isotropic_tangents: tangency discriminant is not a square in Q(i)",
          "x^2 - (" + to_string(disc) + ")");
    }
    for (const Complex& k : {(-beta + *root) / (Complex(2) * alpha),
                             (-beta - *root) / (Complex(2) * alpha)}) {
      tangents.push_back(canonical(HLine(base.u, base.v, k)));
    }
  }
  return tangents;
}

namespace detail {

// Affine representative (x/z, y/z) ordering: real-coordinate finite points
// first, then by descending real and imaginary parts — a deterministic
// total order for printing.
inline bool focus_less(const HPoint& a, const HPoint& b) {
  const bool a_fin = !a.z.is_zero(), b_fin = !b.z.is_zero();
  if (a_fin != b_fin) return a_fin;
  if (!a_fin) return false;
  const Complex ax = a.x / a.z, ay = a.y / a.z;
  const Complex bx = b.x / b.z, by = b.y / b.z;
  const bool a_real = ax.im == 0 && ay.im == 0;
  const bool b_real = bx.im == 0 && by.im == 0;
  if (a_real != b_real) return a_real;
  if (ax.re != bx.re) return ax.re > bx.re;
  if (ax.im != bx.im) return ax.im > bx.im;
  if (ay.re != by.re) return ay.re > by.re;
  return ay.im > by.im;
}

}  // namespace detail

// Foci: pairwise intersections of one I-tangent with one J-tangent.  For a
// circle all four coincide at the center; for a non-circle real ellipse the
// list holds the two real foci and the conjugate imaginary pair.
inline std::vector<HPoint> foci(const ConicMat& c) {
  const std::vector<HLine> t = isotropic_tangents(c);
  std::vector<HPoint> out;
  out.reserve(4);
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      out.push_back(canonical(meet(t[static_cast<std::size_t>(i)],
                                   t[static_cast<std::size_t>(j)])));
    }
  }
  std::sort(out.begin(), out.end(), detail::focus_less);
  return out;
}

// A regular conic is a circle iff both cyclic points lie on it.  For real
// matrices the two evaluations are conjugate, so exactly one vanishing would
// indicate a logic error, not a valid input.
inline bool is_circle(const ConicMat& c) {
  if (!c.regular()) {
    throw SingularConicError("is_circle: conic is singular");
  }
  const auto [ci, cj] = cyclic_points();
  const bool at_i = c.evaluate(ci).is_zero();
  const bool at_j = c.evaluate(cj).is_zero();
  if (c.is_real() && at_i != at_j) {
    throw std::logic_error("is_circle: real conic through one cyclic point");
  }
  return at_i && at_j;
}

// Affine projective map (last row 0 0 1) realizing the complex-isometric
// reflection about a finite non-isotropic line.
class LineReflection {
 public:
  using Matrix = std::array<std::array<Complex, 3>, 3>;

  explicit LineReflection(Matrix m) : m_(std::move(m)) {}

  const Complex& at(int i, int j) const { return m_[i][j]; }

  HPoint operator()(const HPoint& p) const {
    const std::array<Complex, 3> v{p.x, p.y, p.z};
    std::array<Complex, 3> out{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out[i] = out[i] + m_[i][j] * v[j];
    }
    return HPoint(out[0], out[1], out[2]);
  }

  // Image of a line: l' = l R^{-1} = l R, the involution acting on rows.
  HLine map_line(const HLine& l) const {
    const std::array<Complex, 3> v{l.u, l.v, l.w};
    std::array<Complex, 3> out{};
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) out[j] = out[j] + v[i] * m_[i][j];
    }
    return HLine(out[0], out[1], out[2]);
  }

  LineReflection compose(const LineReflection& rhs) const {
    Matrix prod{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          prod[i][j] = prod[i][j] + m_[i][k] * rhs.m_[k][j];
        }
      }
    }
    return LineReflection(prod);
  }

  bool is_identity() const {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (m_[i][j] != (i == j ? Complex(1) : Complex(0))) return false;
      }
    }
    return true;
  }

 private:
  Matrix m_;
};

// The unique non-trivial complex-isometric involution fixing the points of a
// finite non-isotropic line L.  For L through the origin with direction
// (p, q) the linear part is [[p^2-q^2, 2pq], [2pq, q^2-p^2]] / (p^2+q^2);
// general position conjugates by the translation taking a base point of L
// to the origin.
inline LineReflection reflection_about(const HLine& line) {
  if (is_isotropic(line)) {
    throw IsotropyError("reflection_about: the mirror line is isotropic");
  }
  const Complex p = line.v;        // direction of L is (v, -u)
  const Complex q = -line.u;
  const Complex s = p * p + q * q;  // nonzero: L is not isotropic
  const Complex m00 = (p * p - q * q) / s;
  const Complex m01 = Complex(2) * p * q / s;
  const Complex m11 = (q * q - p * p) / s;

  Complex x0, y0;
  if (!line.u.is_zero()) {
    x0 = -line.w / line.u;
  } else {
    y0 = -line.w / line.v;
  }
  const Complex t0 = x0 - (m00 * x0 + m01 * y0);
  const Complex t1 = y0 - (m01 * x0 + m11 * y0);
  return LineReflection(LineReflection::Matrix{{{m00, m01, t0},
                                                {m01, m11, t1},
                                                {Complex(0), Complex(0),
                                                 Complex(1)}}});
}

inline HLine reflect_line(const HLine& mirror, const HLine& l) {
  return reflection_about(mirror).map_line(l);
}

// Squared chordal distance between lines as points of the dual plane:
// |l1 x l2|^2 / (|l1|^2 |l2|^2), an exact rational in [0, 1].
inline Rational projective_distance_sq(const HLine& a, const HLine& b) {
  const Complex c0 = a.v * b.w - a.w * b.v;
  const Complex c1 = a.w * b.u - a.u * b.w;
  const Complex c2 = a.u * b.v - a.v * b.u;
  const Rational num = c0.norm_sq() + c1.norm_sq() + c2.norm_sq();
  const Rational den = (a.u.norm_sq() + a.v.norm_sq() + a.w.norm_sq()) *
                       (b.u.norm_sq() + b.v.norm_sq() + b.w.norm_sq());
  return num / den;
}

// "(4,0)", "(0,4i)" for finite points; "[x : y : 0]" at infinity.
inline std::string to_string(const HPoint& p) {
  if (!p.z.is_zero()) {
    return "(" + to_string(p.x / p.z) + "," + to_string(p.y / p.z) + ")";
  }
  const HPoint c = canonical(p);
  return "[" + to_string(c.x) + " : " + to_string(c.y) + " : 0]";
}

inline std::string to_string(const HLine& l) {
  const HLine c = canonical(l);
  return "[" + to_string(c.u) + " : " + to_string(c.v) + " : " +
         to_string(c.w) + "]";
}

}  // namespace poncelet::cp2
