#pragma once

#include <functional>
#include <vector>

namespace gjms {

struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss quadrature for the weight (1-t^2)^alpha on [-1,1] (Gegenbauer-type,
// alpha = (n-3)/2 covers the zonal measure on S^{n-1}; alpha = 0 is
// Gauss-Legendre).  Nodes come from the symmetric tridiagonal Jacobi matrix
// (Golub-Welsch), then get two Newton polish steps on the orthonormal
// recurrence; weights use the Christoffel formula 1/sum_k p_k(x)^2, which
// reproduces the total mass mu0 to machine precision.
Quadrature1D gauss_gegenbauer(int npoints, double alpha);

inline Quadrature1D gauss_legendre(int npoints) { return gauss_gegenbauer(npoints, 0.0); }

// Composite Gauss-Legendre over [a,b] split at the given breakpoints
// (breakpoints outside (a,b) are ignored), q nodes per panel.
Quadrature1D panel_gauss(double a, double b, const std::vector<double>& breakpoints, int q);

// Panel boundaries for [a,b] refined geometrically toward an interior point c:
// uniform panels of width ~h away from c, and dyadically shrinking panels
// approaching c from both sides down to width h*2^-levels.  Used for kernels
// with a kink at c.
std::vector<double> refined_breakpoints(double a, double b, double c, double h, int levels);

double integrate(const Quadrature1D& q, const std::function<double(double)>& f);

}  // namespace gjms
