#include "gjms/conformal_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace gjms {

namespace {

void check_interior(const VecN& a) {
  if (norm(a) >= 1.0) throw std::invalid_argument("moebius: |a| must be < 1");
}

}  // namespace

VecN moebius_ball(const VecN& a, const VecN& x) {
  if (a.size() != x.size()) throw std::invalid_argument("moebius_ball: dimension mismatch");
  check_interior(a);
  const double ax = dot(a, x);
  const double a2 = dot(a, a);
  const double x2 = dot(x, x);
  const double denom = 1.0 - 2.0 * ax + a2 * x2;
  VecN out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = (x[i] - a[i] - x2 * a[i] + 2.0 * ax * a[i] - a2 * x[i]) / denom;
  return out;
}

Vec3 moebius_ball(const Vec3& a, const Vec3& x) {
  const VecN r = moebius_ball(VecN{a[0], a[1], a[2]}, VecN{x[0], x[1], x[2]});
  return {r[0], r[1], r[2]};
}

double moebius_conformal_factor(const VecN& a, const VecN& x) {
  check_interior(a);
  const double a2 = dot(a, a);
  return (1.0 - a2) / (a2 * dot(x, x) - 2.0 * dot(a, x) + 1.0);
}

double moebius_conformal_factor(const Vec3& a, const Vec3& x) {
  return moebius_conformal_factor(VecN{a[0], a[1], a[2]}, VecN{x[0], x[1], x[2]});
}

Vec3 stereographic(const Vec2& y) {
  const double y2 = dot(y, y);
  return {2.0 * y[0] / (1.0 + y2), 2.0 * y[1] / (1.0 + y2), (1.0 - y2) / (1.0 + y2)};
}

Vec2 stereographic_inverse(const Vec3& x) {
  if (1.0 + x[2] <= 0.0)
    throw std::invalid_argument("stereographic_inverse: south pole has no preimage");
  return {x[0] / (1.0 + x[2]), x[1] / (1.0 + x[2])};
}

VecN halfspace_to_ball(const VecN& z) {
  const std::size_t n = z.size();
  VecN w = z;
  w[n - 1] += 1.0;  // z + e_n
  const double w2 = dot(w, w);
  if (w2 == 0.0) throw std::invalid_argument("halfspace_to_ball: pole of the inversion");
  VecN out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * w[i] / w2;
  out[n - 1] -= 1.0;
  return out;
}

double halfspace_conformal_factor(const VecN& z) {
  const std::size_t n = z.size();
  double s = (1.0 + z[n - 1]) * (1.0 + z[n - 1]);
  for (std::size_t i = 0; i + 1 < n; ++i) s += z[i] * z[i];
  return 2.0 / s;
}

HalfspaceParam param_change(const VecN& a) {
  check_interior(a);
  const std::size_t n = a.size();
  const double denom = dot(a, a) + 2.0 * a[n - 1] + 1.0;
  HalfspaceParam p;
  p.eps = (1.0 - dot(a, a)) / denom;
  p.z0_prime.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) p.z0_prime[i] = 2.0 * a[i] / denom;
  return p;
}

namespace {

double extremal_h(const VecN& a, const VecN& x) {
  const double d = dot(a, a) * dot(x, x) - 2.0 * dot(a, x) + 1.0;
  return (1.0 - dot(a, a)) / d;
}

}  // namespace

double extremal_ball(const VecN& a, int n, const VecN& x) {
  check_interior(a);
  if (static_cast<int>(a.size()) != n || static_cast<int>(x.size()) != n)
    throw std::invalid_argument("extremal_ball: dimension mismatch");
  const double h = extremal_h(a, x);
  const double r2 = dot(x, x);
  if (n == 4) return std::log(h) + 0.5 * (1.0 - r2) * (h - 1.0);
  return std::pow(h, 0.5 * (n - 4)) +
         0.25 * (n - 4) * (1.0 - r2) * std::pow(h, 0.5 * (n - 2));
}

double extremal_trace(const VecN& a, int n, const VecN& x) {
  check_interior(a);
  const double h = extremal_h(a, x);
  if (n == 4) return std::log(h);
  return std::pow(h, 0.5 * (n - 4));
}

HarmonicSpectrum extremal_trace_spectrum(const Vec3& a, int band_limit, int oversample) {
  const SphereGrid grid = build_grid(band_limit, oversample);
  const VecN av{a[0], a[1], a[2]};
  std::vector<double> samples(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Vec3& x = grid.nodes[i];
    samples[i] = extremal_trace(av, 3, VecN{x[0], x[1], x[2]});
  }
  return analyze(grid, samples, band_limit);
}

ZonalSpectrum extremal_trace_zonal(double a_norm, int n, int band_limit, int oversample) {
  if (a_norm < 0.0 || a_norm >= 1.0)
    throw std::invalid_argument("extremal_trace_zonal: need 0 <= |a| < 1");
  // On the sphere D = 1 - 2|a|t + |a|^2 with t = x . (a/|a|).
  auto f = [a_norm, n](double t) {
    const double h = (1.0 - a_norm * a_norm) / (1.0 - 2.0 * a_norm * t + a_norm * a_norm);
    if (n == 4) return std::log(h);
    return std::pow(h, 0.5 * (n - 4));
  };
  return legendre_expand_zonal(f, n, band_limit, oversample);
}

HarmonicSpectrum moebius_pullback(const HarmonicSpectrum& u, const Vec3& a,
                                  int oversample) {
  const SphereGrid grid = build_grid(u.band_limit, oversample);
  std::vector<double> samples(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Vec3 y = moebius_ball(a, grid.nodes[i]);
    samples[i] = synthesize_at(u, y) / std::sqrt(moebius_conformal_factor(a, grid.nodes[i]));
  }
  return analyze(grid, samples, u.band_limit);
}

double bubble_plane(const BubbleParam& p, const Vec2& y) {
  const double dx = y[0] - p.center[0];
  const double dy = y[1] - p.center[1];
  return std::sqrt((p.eps * p.eps + dx * dx + dy * dy) / (2.0 * p.eps));
}

}  // namespace gjms
