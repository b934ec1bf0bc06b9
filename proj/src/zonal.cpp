#include "gjms/zonal.hpp"

#include <cmath>
#include <stdexcept>

#include "gjms/geometry.hpp"

namespace gjms {

namespace {

double zonal_alpha(int n) {
  if (n < 3) throw std::invalid_argument("zonal: dimension must be >= 3");
  return 0.5 * (n - 3);
}

// Same monic-recurrence beta as in quadrature.cpp, restated here for the
// orthonormal basis evaluation.
double beta_coeff(int k, double alpha) {
  const double two_a = 2.0 * alpha;
  return k * (k + two_a) / ((2.0 * k + two_a - 1.0) * (2.0 * k + two_a + 1.0));
}

}  // namespace

Quadrature1D zonal_surface_rule(int n, int npoints) {
  Quadrature1D q = gauss_gegenbauer(npoints, zonal_alpha(n));
  const double ring = sphere_surface_area(n - 1);
  for (double& w : q.weights) w *= ring;
  return q;
}

void zonal_basis_row(int n, int L, double t, std::vector<double>& row) {
  const double alpha = zonal_alpha(n);
  // Total mass of (1-t^2)^alpha dt; together with |S^{n-2}| this normalizes
  // Z_0 to 1/sqrt(|S^{n-1}|).
  const double mu0 = std::sqrt(M_PI) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
  const double ring = sphere_surface_area(n - 1);

  row.assign(L + 1, 0.0);
  row[0] = 1.0 / std::sqrt(mu0 * ring);
  if (L == 0) return;
  const double b1 = std::sqrt(beta_coeff(1, alpha));
  row[1] = t * row[0] / b1;
  for (int k = 1; k < L; ++k) {
    const double bk = std::sqrt(beta_coeff(k, alpha));
    const double bk1 = std::sqrt(beta_coeff(k + 1, alpha));
    row[k + 1] = (t * row[k] - bk * row[k - 1]) / bk1;
  }
}

ZonalSpectrum legendre_expand_zonal(const std::function<double(double)>& f, int n, int L,
                                    int oversample) {
  if (L < 0) throw std::invalid_argument("legendre_expand_zonal: band limit must be >= 0");
  if (oversample < 1) throw std::invalid_argument("legendre_expand_zonal: oversample >= 1");

  const Quadrature1D rule = zonal_surface_rule(n, oversample * (L + 1));
  ZonalSpectrum spec;
  spec.dim = n;
  spec.coeff.assign(L + 1, 0.0);

  std::vector<double> row;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double fv = rule.weights[i] * f(rule.nodes[i]);
    zonal_basis_row(n, L, rule.nodes[i], row);
    for (int k = 0; k <= L; ++k) spec.coeff[k] += fv * row[k];
  }
  return spec;
}

double zonal_synthesize_at(const ZonalSpectrum& spec, double t) {
  std::vector<double> row;
  zonal_basis_row(spec.dim, spec.band_limit(), t, row);
  double v = 0.0;
  for (std::size_t k = 0; k < spec.coeff.size(); ++k) v += spec.coeff[k] * row[k];
  return v;
}

double zonal_mean(const ZonalSpectrum& spec) {
  return spec.coeff.empty() ? 0.0 : spec.coeff[0] / std::sqrt(sphere_surface_area(spec.dim));
}

}  // namespace gjms
