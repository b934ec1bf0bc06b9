#pragma once

#include <functional>

#include "gjms/geometry.hpp"
#include "gjms/sphere_harmonics.hpp"
#include "gjms/zonal.hpp"

namespace gjms {

// Moebius self-map of the unit ball moving a to the origin:
//   psi_a(x) = (x - a - |x|^2 a + 2(a.x) a - |a|^2 x) / (1 - 2 a.x + |a|^2 |x|^2).
// psi_{-a} inverts it.  Requires |a| < 1.
VecN moebius_ball(const VecN& a, const VecN& x);
Vec3 moebius_ball(const Vec3& a, const Vec3& x);

// Pointwise conformal factor of psi_a w.r.t. the Euclidean metric:
//   (1 - |a|^2) / (|a|^2 |x|^2 - 2 a.x + 1).
// Satisfies the hyperbolic isometry identity
//   1 - |psi_a(x)|^2 = factor * (1 - |x|^2).
double moebius_conformal_factor(const VecN& a, const VecN& x);
double moebius_conformal_factor(const Vec3& a, const Vec3& x);

// Inverse stereographic projection R^2 -> S^2 \ {south pole}:
//   I(y) = (2y, 1 - |y|^2) / (1 + |y|^2).
Vec3 stereographic(const Vec2& y);
Vec2 stereographic_inverse(const Vec3& x);

// Involutive conformal map between the upper half-space {z_n >= 0} and the
// unit ball: F(z) = -e_n + 2 (z + e_n)/|z + e_n|^2.
VecN halfspace_to_ball(const VecN& z);
// Its conformal factor: F^*(|dx|^2) = factor(z)^2 |dz|^2,
// factor(z) = 2 / ((1 + z_n)^2 + |z'|^2).
double halfspace_conformal_factor(const VecN& z);

// Ball parameter a -> half-space bubble parameters (z0', eps):
//   eps = (1 - |a|^2) / (|a|^2 + 2 a_n + 1),  z0' = 2 a' / (|a|^2 + 2 a_n + 1),
// which is exactly F(a) split into tangential and vertical parts.
struct HalfspaceParam {
  VecN z0_prime;  // dimension n-1
  double eps = 1.0;
};
HalfspaceParam param_change(const VecN& a);

// Extremal (bubble) extensions on the unit ball, D = |a|^2 |x|^2 - 2 a.x + 1:
//   n != 4: U_a = h^{(n-4)/2} + ((n-4)/4)(1 - |x|^2) h^{(n-2)/2},  h = (1-|a|^2)/D
//   n  = 4: U_a = log h + ((1 - |x|^2)/2)(h - 1).
// For n = 3 the first formula reads sqrt(D/(1-|a|^2)) - (1-|x|^2)/4 * sqrt((1-|a|^2)/D).
double extremal_ball(const VecN& a, int n, const VecN& x);

// Boundary traces.  n = 3: u_a(x) = |x - a| / sqrt(1 - |a|^2); general n != 4:
// u_a = ((1-|a|^2)/|x-a|^2)^{(n-4)/2}; n = 4: log((1-|a|^2)/|x-a|^2).
double extremal_trace(const VecN& a, int n, const VecN& x);
HarmonicSpectrum extremal_trace_spectrum(const Vec3& a, int band_limit, int oversample = 4);
// Zonal variant for a = |a| e_n (any rotation of a gives the same spectrum).
ZonalSpectrum extremal_trace_zonal(double a_norm, int n, int band_limit, int oversample = 4);

// Pullback of a boundary trace under psi_a with the -1/2 conformal weight:
//   u_phi(x) = u(psi_a(x)) * factor(a, x)^{-1/2},
// re-analyzed at the same band limit (u ~ 1 maps to the extremal trace u_a).
HarmonicSpectrum moebius_pullback(const HarmonicSpectrum& u, const Vec3& a,
                                  int oversample = 4);

// Half-plane bubble: v(y) = sqrt((eps^2 + |y - y0|^2) / (2 eps)).
struct BubbleParam {
  Vec2 center{0.0, 0.0};
  double eps = 1.0;
};
double bubble_plane(const BubbleParam& p, const Vec2& y);

}  // namespace gjms
