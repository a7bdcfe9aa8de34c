#pragma once

#include <array>
#include <compare>
#include <tuple>

#include "rodcomp/numeric.hpp"

namespace rodcomp {

struct IntVec2 {
  Int x, y;
  friend bool operator==(const IntVec2&, const IntVec2&) = default;
  friend auto operator<=>(const IntVec2& a, const IntVec2& b) {
    return std::tie(a.x, a.y) <=> std::tie(b.x, b.y);
  }
};

struct IntVec3 {
  Int x, y, z;
  friend bool operator==(const IntVec3&, const IntVec3&) = default;
  friend auto operator<=>(const IntVec3& a, const IntVec3& b) {
    return std::tie(a.x, a.y, a.z) <=> std::tie(b.x, b.y, b.z);
  }
};

struct RatVec2 {
  Rat x, y;
  friend bool operator==(const RatVec2&, const RatVec2&) = default;
  friend auto operator<=>(const RatVec2& a, const RatVec2& b) {
    return std::tie(a.x, a.y) <=> std::tie(b.x, b.y);
  }
};

struct RatVec3 {
  Rat x, y, z;
  friend bool operator==(const RatVec3&, const RatVec3&) = default;
  friend auto operator<=>(const RatVec3& a, const RatVec3& b) {
    return std::tie(a.x, a.y, a.z) <=> std::tie(b.x, b.y, b.z);
  }
};

inline IntVec3 operator+(const IntVec3& a, const IntVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline IntVec3 operator-(const IntVec3& a, const IntVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline IntVec3 operator-(const IntVec3& a) { return {-a.x, -a.y, -a.z}; }

inline RatVec2 operator+(const RatVec2& a, const RatVec2& b) { return {a.x + b.x, a.y + b.y}; }
inline RatVec2 operator-(const RatVec2& a, const RatVec2& b) { return {a.x - b.x, a.y - b.y}; }
inline RatVec3 operator+(const RatVec3& a, const RatVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline RatVec3 operator-(const RatVec3& a, const RatVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

inline bool is_zero(const IntVec3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }
inline bool is_zero(const IntVec2& v) { return v.x == 0 && v.y == 0; }

inline Int dot(const IntVec3& a, const IntVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Int dot(const IntVec2& a, const IntVec2& b) { return a.x * b.x + a.y * b.y; }

inline Rat dot(const IntVec3& a, const RatVec3& b) {
  return Rat(a.x) * b.x + Rat(a.y) * b.y + Rat(a.z) * b.z;
}
inline Rat dot(const IntVec2& a, const RatVec2& b) { return Rat(a.x) * b.x + Rat(a.y) * b.y; }

inline IntVec3 cross(const IntVec3& a, const IntVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Int cross2(const IntVec2& a, const IntVec2& b) { return a.x * b.y - a.y * b.x; }
inline Rat cross2(const RatVec2& a, const RatVec2& b) { return a.x * b.y - a.y * b.x; }

inline Int det3(const IntVec3& a, const IntVec3& b, const IntVec3& c) { return dot(a, cross(b, c)); }

inline RatVec3 frac(const RatVec3& v) { return {rat_frac(v.x), rat_frac(v.y), rat_frac(v.z)}; }
inline RatVec2 frac(const RatVec2& v) { return {rat_frac(v.x), rat_frac(v.y)}; }

inline bool is_integral(const RatVec2& v) { return is_integer(v.x) && is_integer(v.y); }
inline bool is_integral(const RatVec3& v) { return is_integer(v.x) && is_integer(v.y) && is_integer(v.z); }

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
  if (a == 0 && b == 0 && c == 0) throw AllZeroVector();
  using boost::multiprecision::gcd;
  return gcd(gcd(abs(a), abs(b)), abs(c));
}

inline Int gcd3(const IntVec3& v) { return gcd3(v.x, v.y, v.z); }

inline bool is_primitive(const IntVec3& v) { return !is_zero(v) && gcd3(v) == 1; }

// First nonzero coordinate made positive; zero vector left alone.
inline IntVec3 sign_canonical(const IntVec3& v) {
  const Int& lead = v.x != 0 ? v.x : (v.y != 0 ? v.y : v.z);
  if (lead < 0) return -v;
  return v;
}

inline IntVec2 sign_canonical(const IntVec2& v) {
  const Int& lead = v.x != 0 ? v.x : v.y;
  if (lead < 0) return {-v.x, -v.y};
  return v;
}

// Extended Euclid: g = gcd(|a|,|b|) >= 0 with x*a + y*b = g.
struct ExtGcd {
  Int g, x, y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_x = 1, x = 0;
  Int old_y = 0, y = 1;
  while (r != 0) {
    const Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_x - q * x; old_x = x; x = t;
    t = old_y - q * y; old_y = y; y = t;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  return {old_r, old_x, old_y};
}

// g = gcd3 with x*a + y*b + z*c = g (generalized Bezout coefficients).
struct Bezout3 {
  Int g, x, y, z;
};

inline Bezout3 bezout3(const Int& a, const Int& b, const Int& c) {
  const ExtGcd ab = ext_gcd(a, b);
  const ExtGcd abc = ext_gcd(ab.g, c);
  return {abc.g, abc.x * ab.x, abc.x * ab.y, abc.y};
}

inline Bezout3 bezout3(const IntVec3& v) { return bezout3(v.x, v.y, v.z); }

using Mat3 = std::array<std::array<Int, 3>, 3>;

inline Mat3 mat3_identity() {
  return {{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}}};
}

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

inline IntVec3 mat3_apply(const Mat3& m, const IntVec3& v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

inline RatVec3 mat3_apply(const Mat3& m, const RatVec3& v) {
  return {Rat(m[0][0]) * v.x + Rat(m[0][1]) * v.y + Rat(m[0][2]) * v.z,
          Rat(m[1][0]) * v.x + Rat(m[1][1]) * v.y + Rat(m[1][2]) * v.z,
          Rat(m[2][0]) * v.x + Rat(m[2][1]) * v.y + Rat(m[2][2]) * v.z};
}

inline Int mat3_det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 mat3_adjugate(const Mat3& m) {
  Mat3 a{};
  a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return a;
}

inline Mat3 mat3_transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

// Element of GL3(Z) with its exact inverse cached.
class UnimodularMatrix3 {
 public:
  explicit UnimodularMatrix3(const Mat3& m) : m_(m) {
    const Int d = mat3_det(m);
    if (d != 1 && d != -1)
      throw std::invalid_argument("matrix is not unimodular (det = " + d.str() + ")");
    inv_ = mat3_adjugate(m);
    if (d == -1)
      for (auto& row : inv_)
        for (auto& e : row) e = -e;
    det_ = d;
  }

  const Mat3& matrix() const { return m_; }
  const Mat3& inverse() const { return inv_; }
  const Int& det() const { return det_; }

  IntVec3 apply(const IntVec3& v) const { return mat3_apply(m_, v); }
  RatVec3 apply(const RatVec3& v) const { return mat3_apply(m_, v); }
  IntVec3 apply_inverse(const IntVec3& v) const { return mat3_apply(inv_, v); }
  RatVec3 apply_inverse(const RatVec3& v) const { return mat3_apply(inv_, v); }

  IntVec3 row(int i) const { return {m_[i][0], m_[i][1], m_[i][2]}; }

  UnimodularMatrix3 transposed_inverse() const { return UnimodularMatrix3(mat3_transpose(inv_)); }

  friend bool operator==(const UnimodularMatrix3& a, const UnimodularMatrix3& b) {
    return a.m_ == b.m_;
  }

 private:
  Mat3 m_;
  Mat3 inv_;
  Int det_;
};

namespace detail {

// det +1 matrix sending (a,b) to (gcd(a,b), 0); requires (a,b) != (0,0).
inline std::array<Int, 4> gcd_rotation(const Int& a, const Int& b) {
  const ExtGcd e = ext_gcd(a, b);
  return {e.x, e.y, -b / e.g, a / e.g};
}

inline Mat3 embed2(const std::array<Int, 4>& m, int r0, int r1) {
  Mat3 u = mat3_identity();
  u[r0][r0] = m[0]; u[r0][r1] = m[1];
  u[r1][r0] = m[2]; u[r1][r1] = m[3];
  return u;
}

}  // namespace detail

// For primitive d, a matrix U in GL3(Z) with U*d = (1,0,0). Built from two
// extended-Euclid rotations, so det(U) = +1.
inline UnimodularMatrix3 unimodular_completion(const IntVec3& d) {
  if (gcd3(d) != 1) throw NotPrimitive();
  Mat3 u = mat3_identity();
  IntVec3 v = d;
  if (!(v.x == 0 && v.y == 0)) {
    const Mat3 e1 = detail::embed2(detail::gcd_rotation(v.x, v.y), 0, 1);
    v = mat3_apply(e1, v);
    u = e1;
  }
  const Mat3 e2 = detail::embed2(detail::gcd_rotation(v.x, v.z), 0, 2);
  u = mat3_mul(e2, u);
  return UnimodularMatrix3(u);
}

// Whether the parametrized torus spanned by v1, v2 is embedded: the three
// 2x2 minors of (v1 | v2) must have gcd 1.
inline bool plane_torus_embedded(const IntVec3& v1, const IntVec3& v2) {
  const IntVec3 minors = cross(v1, v2);
  if (is_zero(minors)) throw DegenerateSpan();
  return gcd3(minors) == 1;
}

// Primitive integral normal of span(v1, v2), sign-canonical.
inline IntVec3 primitive_normal(const IntVec3& v1, const IntVec3& v2) {
  IntVec3 n = cross(v1, v2);
  if (is_zero(n)) throw DegenerateSpan();
  const Int g = gcd3(n);
  n = {n.x / g, n.y / g, n.z / g};
  return sign_canonical(n);
}

}  // namespace rodcomp
