#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gjms/conformal_maps.hpp"
#include "gjms/geometry.hpp"

namespace gjms {

// Far-field behaviour f(z) ~ amplitude |z - center|^-power (1 + c2/|z|^2 + ...),
// used to correct truncated kernel integrals analytically.
struct DecayLaw {
  double amplitude = 0;
  double power = 0;
  double second_order = 0;  // c2 in the expansion above
};

// Planar integrand carried as a closed-form evaluator together with the
// polar quadrature grid (rings around `center`) used to integrate it.
// Samples on the ring/angle grid are materialized for validation.
struct PlanarField {
  Vec2 center{0.0, 0.0};
  std::function<double(const Vec2&)> eval;
  double grid_radius = 0;          // truncation radius R of the grid
  std::vector<double> ring_radii;  // strictly increasing panel boundaries, last = R
  int n_angle = 64;                // angular points per half-turn panel
  int points_per_panel = 8;        // radial Gauss nodes per panel
  bool radial = false;             // f is a function of |z - center| alone
  std::optional<DecayLaw> decay;
  std::vector<double> samples;     // f at ring boundary x angle grid points
};

// f = v^-5 for the half-plane bubble v = sqrt((eps^2+|y-y0|^2)/(2 eps)):
// radial about y0 with decay amplitude (2 eps)^{5/2}, power 5,
// second-order coefficient -(5/2) eps^2.
PlanarField make_bubble_inverse_quintic(const BubbleParam& p, double grid_radius,
                                        double ring_spacing, int points_per_panel = 8,
                                        int n_angle = 64);

// Generic compactly supported field (decay law absent); support_radius caps
// the quadrature domain.
PlanarField make_compact_field(std::function<double(const Vec2&)> f, const Vec2& center,
                               double support_radius, double ring_spacing,
                               int points_per_panel = 12, int n_angle = 64);

struct KernelTransformResult {
  double value = 0;          // int_{|z-c|<=R} |y-z| f dz plus the tail correction
  double disk_part = 0;
  double tail_correction = 0;
  double tail_estimate = 0;  // magnitude of the next-order tail term
};

// int |y - z| f(z) dz over the truncated disk, by polar quadrature about the
// field center.  The radial integral is split at |y - center| and refined
// dyadically toward it, which keeps the kernel kink away from all Gauss
// nodes.  Radial fields use the closed-form angular factor
//   int_0^{2pi} |y - z| dtheta = 4 (s + rho) E(2 sqrt(s rho)/(s + rho))
// (complete elliptic integral of the second kind), so only the 1D radial
// quadrature remains.  With a decay law, the part beyond R enters through
// the leading power law; tail_estimate bounds the first neglected order.
KernelTransformResult kernel_transform(const PlanarField& f, const Vec2& y, double R);

struct ResidualReport {
  std::vector<Vec2> points;
  std::vector<double> residual;  // |v - (3/16pi) K v^-5| / v per point
  double max_residual = 0;
};

// Residual of the bubble integral identity v = (3/16 pi) int |y-z| v^-5 dz
// at the given evaluation points, with truncation radius R = r_factor * eps.
ResidualReport integral_residual(const BubbleParam& p, const std::vector<Vec2>& pts,
                                 double r_factor = 100.0, double ring_spacing_over_eps = 1.0,
                                 int points_per_panel = 8);

// Biharmonic half-space extension of planar data f with zero first normal
// derivative: v^(x,t) = (1/4pi) int sqrt(t^2 + |x-y|^2) f(y) dy.
double halfspace_extend(const PlanarField& f, const Vec2& x, double t);
// Its full Laplacian (kernel Laplacian 2/sqrt(t^2+s^2) integrated exactly).
double halfspace_laplacian(const PlanarField& f, const Vec2& x, double t);
// d/dt of the Laplacian at t = 0+, fitted from one-sided values through the
// expansion a0 + a1 t ln t + a2 t; converges to -f(x).
double halfspace_dt_laplacian_at_zero(const PlanarField& f, const Vec2& x, double h0 = 1e-3);

struct AsymptoticFit {
  double alpha = 0;
  double b1 = 0;
  double b2 = 0;
  double remainder_slope = 0;          // log-log decay rate of the fitted remainder
  std::vector<double> ring_radii;
  std::vector<double> ring_remainder;  // sup_theta |w - alpha r - b.theta| per ring
};

// Far-field structure of w(x) = prefactor * int |x-y| f(y) dy for compactly
// supported f:  w = alpha |x| + b1 cos + b2 sin + O(1/|x|).  alpha and b are
// extrapolated over the outermost rings (models 1/r^2..1/r^3 resp. 1/r..1/r^2).
AsymptoticFit asymptotic_fit(const PlanarField& f, double prefactor, double r0 = 40.0,
                             int n_rings = 5, double ring_factor = 1.6, int n_angles = 128);

// Plain integrals of the field over its grid disk: mass and first moments.
double planar_mass(const PlanarField& f);
Vec2 planar_moment(const PlanarField& f);

}  // namespace gjms
