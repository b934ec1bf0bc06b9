#pragma once

#include <vector>

#include "gjms/geometry.hpp"
#include "gjms/quadrature.hpp"

namespace gjms {

// Tensor quadrature grid on S^2: Gauss-Legendre in cos(theta), uniform in
// phi.  A grid built at band limit L integrates products of two degree-L
// harmonics exactly, so analyze() is exact on band-limited input.
struct SphereGrid {
  int band_limit = 0;  // largest degree this grid analyzes exactly
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> t_nodes;    // cos(theta), ascending, size n_theta
  std::vector<double> t_weights;  // Gauss-Legendre weights, size n_theta
  std::vector<Vec3> nodes;        // unit vectors, size n_theta*n_phi
  std::vector<double> weights;    // positive, sum 4*pi

  int size() const { return n_theta * n_phi; }
  int index(int i_theta, int j_phi) const { return i_theta * n_phi + j_phi; }
  double phi(int j) const { return 2.0 * M_PI * j / n_phi; }
};

// n_theta = oversample*(L+1) Gauss-Legendre nodes, n_phi = oversample*(2L+1)
// longitudes.  oversample > 1 buys quadrature headroom for non-band-limited
// integrands (u^-4 and friends); it does not change what analyze() accepts.
SphereGrid build_grid(int band_limit, int oversample = 1);

// Real orthonormal spherical harmonic coefficients u_{k,m}, 0 <= k <= L,
// -k <= m <= k, flattened so (k,m) sits at k*k + k + m.
struct HarmonicSpectrum {
  int band_limit = 0;
  std::vector<double> coeff;

  HarmonicSpectrum() = default;
  explicit HarmonicSpectrum(int L) : band_limit(L), coeff((L + 1) * (L + 1), 0.0) {}
  double& at(int k, int m) { return coeff[k * k + k + m]; }
  double at(int k, int m) const { return coeff[k * k + k + m]; }
  int size() const { return static_cast<int>(coeff.size()); }
};

// Associated Legendre functions normalized so that the real harmonics built
// from them are orthonormal against the surface measure (total mass 4*pi).
// row[k] = \bar P_k^m(t) for k = m..L; Condon-Shortley phase included.
void normalized_legendre_row(int L, int m, double t, std::vector<double>& row);
// Same rows together with d/dtheta at t = cos(theta).
void normalized_legendre_row_deriv(int L, int m, double t, std::vector<double>& row,
                                   std::vector<double>& dtheta);

// Forward transform by quadrature: u_{k,m} = sum_i w_i u(x_i) Y_{k,m}(x_i).
// Exact when the samples come from a spectrum with band limit <= grid.band_limit.
HarmonicSpectrum analyze(const SphereGrid& grid, const std::vector<double>& samples,
                         int band_limit);
std::vector<double> synthesize(const HarmonicSpectrum& spec, const SphereGrid& grid);

// Pointwise evaluation at an arbitrary unit vector (O(L^2) per call).
double synthesize_at(const HarmonicSpectrum& spec, const Vec3& x);

// Tangential gradient of the synthesized function at every grid node,
// returned as ambient R^3 vectors (orthogonal to the node direction).
std::vector<Vec3> tangent_gradient_samples(const HarmonicSpectrum& spec,
                                           const SphereGrid& grid);

struct SobolevNorms {
  double l2 = 0;      // sqrt(sum u_km^2)
  double h_half = 0;  // sqrt(sum (lambda_k^{1/2} + 1) u_km^2), lambda_k = k(k+1)
  double h1 = 0;
  double h_3half = 0;
};

SobolevNorms sobolev_norms(const HarmonicSpectrum& spec);

}  // namespace gjms
