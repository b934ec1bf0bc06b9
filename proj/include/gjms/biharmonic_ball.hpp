#pragma once

#include <functional>

#include "gjms/geometry.hpp"
#include "gjms/sphere_harmonics.hpp"
#include "gjms/zonal.hpp"

namespace gjms {

// Biharmonic extension of boundary data u from S^{n-1} to the unit ball in
// the Neumann class dU/dr = -((n-4)/2) u.  Per degree,
//   U_k(x) = |x|^k Y_k(x/|x|) (1 + e_k (1 - |x|^2)),   e_k = k/2 + (n-4)/4,
// and Delta U_k = c_k |x|^k Y_k with c_k = -(k + (n-4)/2)(2k + n).
double extension_moment(int k, int n);     // e_k
double extension_laplacian_coeff(int k, int n);  // c_k

struct BallExtension {
  HarmonicSpectrum boundary;  // n = 3
};

struct ZonalBallExtension {
  ZonalSpectrum boundary;  // any n >= 3
};

BallExtension extend(const HarmonicSpectrum& u);
ZonalBallExtension extend_zonal(const ZonalSpectrum& u);

struct ExtensionValues {
  double value = 0;
  double laplacian = 0;
  double radial_derivative = 0;
};

ExtensionValues eval_extension(const BallExtension& ext, const Vec3& x);
// Zonal evaluation at radius r and cosine t of the angle from the symmetry axis.
ExtensionValues eval_extension(const ZonalBallExtension& ext, double r, double t);

// int_B (Delta U)^2 dx = sum u_{k,m}^2 c_k^2 / (2k + n), from shell-by-shell
// orthogonality of the spherical harmonics.
double bulk_energy(const BallExtension& ext);
double bulk_energy(const ZonalBallExtension& ext);

// Third-order boundary operator on the Neumann class, assembled from its
// defining normal-derivative formula
//   B U = -d(Delta U)/dr - ((n-4)/2) d^2U/dr^2 - (n/2) Lap_{S} u
//         + ((n-4)(n^2-3n+4)/4) u,
// reduced per degree.  Diagonalizes with multiplier b33_multiplier(k, n),
// which equals 2 p3(k, n).
double b33_multiplier(int k, int n);
HarmonicSpectrum boundary_operator_b33(const BallExtension& ext);
ZonalSpectrum boundary_operator_b33(const ZonalBallExtension& ext);

struct TraceDeficit {
  double lhs = 0;      // sharp constant side
  double rhs = 0;      // quadratic boundary energy side
  double deficit = 0;  // rhs - lhs, nonnegative when the inequality holds
};

// n = 3:  -(3/4)|S^2|^{3/2} (int u^-4 dV)^{-1/2}  <=  int_B (Delta U)^2
//         + 2 int |grad_S u|^2 - (3/2) int u^2.
TraceDeficit trace_deficit_n3(const HarmonicSpectrum& u, int oversample = 4);

// n >= 5:  c_n |S^{n-1}|^{3/(n-1)} (int |u|^{2(n-1)/(n-4)})^{(n-4)/(n-1)}
//          <=  int (Delta U)^2 + 2 int |grad u|^2 + (n(n-4)/2) int u^2,
// with c_n = n(n-2)(n-4)/4.
TraceDeficit trace_deficit_general(const ZonalSpectrum& u, int oversample = 4);

// n = 4 (exponential class):
//   log( (1/|S^3|) int e^{3(u - mean u)} dV )  <=  (3/16 pi^2)
//       [ int (Delta U)^2 + 2 int |grad u|^2 ].
TraceDeficit trace_deficit_n4(const ZonalSpectrum& u, int oversample = 4);

// Amended extension keeping trace and Neumann data while absorbing a
// correction V with V = dV/dr = 0 on the boundary:
//   U^ = ((|x|^2 + 3)/4) U + ((1 - |x|^2)/2) x . grad U + V.
using ScalarField3 = std::function<double(const Vec3&)>;
using VectorField3 = std::function<Vec3(const Vec3&)>;
ScalarField3 amend_extension(ScalarField3 U, VectorField3 gradU, ScalarField3 V);

// Largest violation of V = dV/dr = 0 over boundary sample points (radial
// derivative by fourth-order finite differences with step h).
double amend_correction_boundary_defect(const ScalarField3& V, int n_samples = 64,
                                        double h = 1e-4);

}  // namespace gjms
