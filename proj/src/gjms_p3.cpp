#include "gjms/gjms_p3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gjms/conformal_maps.hpp"

namespace gjms {

double p3_multiplier(int k, int n) {
  if (k < 0) throw std::invalid_argument("p3_multiplier: degree must be >= 0");
  if (n < 3) throw std::invalid_argument("p3_multiplier: dimension must be >= 3");
  const double b = k + 0.5 * (n - 2);
  return (b - 1.0) * b * (b + 1.0);
}

HarmonicSpectrum apply_p3(const HarmonicSpectrum& u) {
  HarmonicSpectrum out(u.band_limit);
  for (int k = 0; k <= u.band_limit; ++k) {
    const double p = p3_multiplier(k, 3);
    for (int m = -k; m <= k; ++m) out.at(k, m) = p * u.at(k, m);
  }
  return out;
}

ZonalSpectrum apply_p3_zonal(const ZonalSpectrum& u) {
  ZonalSpectrum out = u;
  for (int k = 0; k <= u.band_limit(); ++k) out.coeff[k] = p3_multiplier(k, u.dim) * u.coeff[k];
  return out;
}

double energy(const HarmonicSpectrum& u, bool normalized) {
  double e = 0.0;
  for (int k = 0; k <= u.band_limit; ++k) {
    const double p = p3_multiplier(k, 3);
    double block = 0.0;
    for (int m = -k; m <= k; ++m) block += u.at(k, m) * u.at(k, m);
    e += p * block;
  }
  return normalized ? e / (4.0 * M_PI) : e;
}

double energy_pairing(const HarmonicSpectrum& u, const HarmonicSpectrum& v, bool normalized) {
  if (u.band_limit != v.band_limit)
    throw std::invalid_argument("energy_pairing: band limits differ");
  double e = 0.0;
  for (int k = 0; k <= u.band_limit; ++k) {
    const double p = p3_multiplier(k, 3);
    // Group the coefficient product first so the sum is bitwise symmetric in u, v.
    for (int m = -k; m <= k; ++m) e += p * (u.at(k, m) * v.at(k, m));
  }
  return normalized ? e / (4.0 * M_PI) : e;
}

std::vector<double> green_samples(const Vec3& x0, const SphereGrid& grid) {
  std::vector<double> out(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    out[i] = -norm(grid.nodes[i] - x0) / (2.0 * M_PI);
  return out;
}

double green_energy_partial_sum(int K) {
  if (K < 0) throw std::invalid_argument("green_energy_partial_sum: K must be >= 0");
  double s = 0.0;
  for (int k = 0; k <= K; ++k) s += (2.0 * k + 1.0) / p3_multiplier(k, 3);
  return s;
}

double green_energy_extrapolated(int K0, int levels) {
  if (levels < 2) throw std::invalid_argument("green_energy_extrapolated: need >= 2 levels");
  std::vector<double> h(levels), val(levels);
  for (int j = 0; j < levels; ++j) {
    const int K = K0 << j;
    h[j] = 1.0 / K;
    val[j] = green_energy_partial_sum(K);
  }
  // Neville tableau evaluated at h = 0.
  for (int stage = 1; stage < levels; ++stage)
    for (int j = levels - 1; j >= stage; --j)
      val[j] = (h[j - stage] * val[j] - h[j] * val[j - 1]) / (h[j - stage] - h[j]);
  return val[levels - 1];
}

PdeResidual pde_residual(const HarmonicSpectrum& u, const SphereGrid& grid) {
  const std::vector<double> us = synthesize(u, grid);
  double umax = 0.0, umin = std::numeric_limits<double>::infinity();
  for (double v : us) {
    umax = std::max(umax, std::abs(v));
    umin = std::min(umin, v);
  }
  // A sign change (or near-zero) makes u^-5 meaningless; refuse.
  if (!(umin > 1e-8 * umax))
    throw std::invalid_argument("pde_residual: non-positive sample of u");

  const std::vector<double> p3u = synthesize(apply_p3(u), grid);
  PdeResidual r;
  double p3max = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double res = p3u[i] + 0.375 * std::pow(us[i], -5.0);
    r.max_abs = std::max(r.max_abs, std::abs(res));
    p3max = std::max(p3max, std::abs(p3u[i]));
  }
  r.max_rel = r.max_abs / p3max;
  return r;
}

double conformal_energy_invariance(const HarmonicSpectrum& u, const Vec3& a, int oversample) {
  if (norm(a) >= 1.0)
    throw std::invalid_argument("conformal_energy_invariance: |a| must be < 1");
  const HarmonicSpectrum uphi = moebius_pullback(u, a, oversample);
  const double e0 = energy(u);
  const double e1 = energy(uphi);
  return std::abs(e1 - e0) / std::abs(e0);
}

}  // namespace gjms
