#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gjms {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
// Points in R^n for dimension-generic routines.
using VecN = std::vector<double>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline double dot(const VecN& a, const VecN& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const VecN& a) { return std::sqrt(dot(a, a)); }

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

// Gamma(n/2) for integer n >= 1, evaluated exactly at integer and
// half-integer arguments (no lgamma round-off).
double gamma_half_integer(int n);

// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_area(int n);

}  // namespace gjms
