#pragma once

#include <functional>
#include <vector>

#include "gjms/quadrature.hpp"

namespace gjms {

// Rotation-symmetric functions on S^{n-1}: f(x) = f(t), t = x . axis.
// Coefficients are against the zonal harmonics Z_k (degree-k Gegenbauer
// polynomials orthonormalized w.r.t. the surface measure dV of S^{n-1}).
struct ZonalSpectrum {
  int dim = 3;  // ambient dimension n
  std::vector<double> coeff;

  int band_limit() const { return static_cast<int>(coeff.size()) - 1; }
};

// 1D quadrature representing the surface integral of zonal functions:
// int_{S^{n-1}} f(x.axis) dV = sum_i w_i f(t_i).  Weights already include
// the |S^{n-2}| factor, so they sum to |S^{n-1}|.
Quadrature1D zonal_surface_rule(int n, int npoints);

// Z_k(t) for k = 0..L via the orthonormal-polynomial recurrence.
void zonal_basis_row(int n, int L, double t, std::vector<double>& row);

// Laplace-Beltrami eigenvalue on S^{n-1}: lambda_k = k(k+n-2).
inline double zonal_eigenvalue(int k, int n) {
  return static_cast<double>(k) * (k + n - 2);
}

// Expansion by quadrature, exact when f is a polynomial of degree <= L in t.
// `oversample` scales the node count beyond the minimal L+1.
ZonalSpectrum legendre_expand_zonal(const std::function<double(double)>& f, int n, int L,
                                    int oversample = 1);

double zonal_synthesize_at(const ZonalSpectrum& spec, double t);

// Mean value over the sphere: coeff[0] * Z_0 = coeff[0] / sqrt(|S^{n-1}|).
double zonal_mean(const ZonalSpectrum& spec);

}  // namespace gjms
