#pragma once

#include <compare>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <utility>

#include "snl/rational.hpp"

namespace snl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }

/// Integer 2-vector: lattice points, cover offsets, period crossings.
struct IntVec {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend IntVec operator+(IntVec a, IntVec b) { return {a.x + b.x, a.y + b.y}; }
  friend IntVec operator-(IntVec a, IntVec b) { return {a.x - b.x, a.y - b.y}; }
  friend IntVec operator-(IntVec a) { return {-a.x, -a.y}; }
  friend IntVec operator*(std::int64_t s, IntVec v) { return {s * v.x, s * v.y}; }
  friend auto operator<=>(const IntVec&, const IntVec&) = default;
  friend std::ostream& operator<<(std::ostream& os, IntVec v) {
    return os << '(' << v.x << ',' << v.y << ')';
  }
};

using LatticePoint = IntVec;

inline std::int64_t cross(IntVec a, IntVec b) { return a.x * b.y - a.y * b.x; }
inline std::int64_t gcd_abs(IntVec v) { return std::gcd(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y); }
inline Vec2 to_vec2(IntVec v) { return {static_cast<double>(v.x), static_cast<double>(v.y)}; }

struct RationalPoint {
  Rational x;
  Rational y;

  friend RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend auto operator<=>(const RationalPoint& a, const RationalPoint& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

inline Vec2 to_vec2(const RationalPoint& p) { return {p.x.to_double(), p.y.to_double()}; }

/// An integral homology class (a,b) of the torus.
struct IntegralClass {
  std::int64_t a = 0;
  std::int64_t b = 0;

  bool is_trivial() const { return a == 0 && b == 0; }
  /// gcd(|a|,|b|) == 1; the trivial class is not primitive.
  bool is_primitive() const { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b) == 1; }
  /// Unoriented representative: a > 0, or a == 0 and b >= 0.
  IntegralClass canonical() const {
    return (a > 0 || (a == 0 && b >= 0)) ? *this : IntegralClass{-a, -b};
  }
  bool is_canonical() const { return canonical() == *this; }
  /// h = multiple * primitive, multiple >= 0 (0 only for the trivial class).
  std::pair<std::int64_t, IntegralClass> primitive_decomposition() const {
    const std::int64_t g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    if (g == 0) return {0, {0, 0}};
    return {g, {a / g, b / g}};
  }
  IntVec vec() const { return {a, b}; }
  Vec2 real() const { return {static_cast<double>(a), static_cast<double>(b)}; }

  friend IntegralClass operator+(IntegralClass p, IntegralClass q) { return {p.a + q.a, p.b + q.b}; }
  friend IntegralClass operator-(IntegralClass p) { return {-p.a, -p.b}; }
  friend IntegralClass operator*(std::int64_t n, IntegralClass p) { return {n * p.a, n * p.b}; }
  friend auto operator<=>(const IntegralClass&, const IntegralClass&) = default;
  friend std::ostream& operator<<(std::ostream& os, IntegralClass h) {
    return os << '(' << h.a << ',' << h.b << ')';
  }
};

inline IntegralClass to_class(IntVec v) { return {v.x, v.y}; }

}  // namespace snl
