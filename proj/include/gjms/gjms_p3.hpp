#pragma once

#include <vector>

#include "gjms/sphere_harmonics.hpp"
#include "gjms/zonal.hpp"

namespace gjms {

// Spectral multiplier of the order-three conformally covariant operator on
// S^{n-1}: acting on degree-k harmonics by
//   p3(k, n) = (k + (n-4)/2)(k + (n-2)/2)(k + n/2),
// i.e. (B-1)B(B+1) with B = sqrt(-Lap + (n-2)^2/4).  For n = 3 the k = 0
// eigenvalue is negative (-3/8); everything above is positive.
double p3_multiplier(int k, int n = 3);

HarmonicSpectrum apply_p3(const HarmonicSpectrum& u);
ZonalSpectrum apply_p3_zonal(const ZonalSpectrum& u);

// Quadratic energy sum_{k,m} p3(k,3) u_{k,m}^2 = int u P3 u dV, optionally
// divided by 4*pi (the normalization in which constants give -3/8).
double energy(const HarmonicSpectrum& u, bool normalized = false);
double energy_pairing(const HarmonicSpectrum& u, const HarmonicSpectrum& v,
                      bool normalized = false);

// Green function of P3 on S^2 with pole x0: G = -(1/2pi)|x - x0| (ambient
// chordal distance).  Samples on a grid.
std::vector<double> green_samples(const Vec3& x0, const SphereGrid& grid);

// Partial sums S_K = sum_{k<=K} (2k+1)/p3(k,3) of the Green function energy
// series; S_K -> 0 as K -> infinity.
double green_energy_partial_sum(int K);

// Polynomial (Neville) extrapolation of S_K to K = infinity over K = K0*2^j,
// j = 0..levels-1, in the variable 1/K.
double green_energy_extrapolated(int K0 = 16, int levels = 5);

struct PdeResidual {
  double max_abs = 0;   // sup |P3 u + (3/8) u^-5| over grid nodes
  double max_rel = 0;   // max_abs / sup |P3 u|
};

// Residual of the Euler-Lagrange equation P3 u = -(3/8) u^-5 for a positive
// function given by its spectrum; both sides are synthesized on the grid.
PdeResidual pde_residual(const HarmonicSpectrum& u, const SphereGrid& grid);

// Conformal invariance of the energy: pulls u back through the Moebius map
// psi_a (with the -1/2 conformal weight), re-analyzes at the same band limit
// and returns |E[u_phi] - E[u]| / |E[u]|.
double conformal_energy_invariance(const HarmonicSpectrum& u, const Vec3& a,
                                   int oversample = 4);

}  // namespace gjms
