#pragma once

#include <string>
#include <vector>

#include "gjms/sphere_harmonics.hpp"

namespace gjms {

// Scale-invariant quotient whose infimum over positive traces is the sharp
// constant: y3(u) = (1/4pi) * (sum_k p3(k) |u_k|^2) * sqrt(int u^-4).
double y3_functional(const HarmonicSpectrum& u, int oversample = 4);

// Euclidean gradient of y3 in coefficient space.
HarmonicSpectrum y3_gradient(const HarmonicSpectrum& u, int oversample = 4);

struct MinimizeOptions {
  int max_iterations = 400;
  double gradient_tol = 1e-9;
  int oversample = 4;
  double positivity_floor = 1e-8;    // reject steps with min u <= floor * max u
  double orbit_abort_ratio = 1e-4;   // stop when min u / max u collapses
  bool precondition = true;          // diagonal 1/(1+p3(k)); false = plain gradient
};

struct MinimizeResult {
  HarmonicSpectrum minimizer;        // rescaled so P3 u = -(3/8) u^-5 holds
  double value = 0.0;                // y3 at the minimizer
  double multiplier = 0.0;           // S/A at the unscaled critical point
  double rescale = 0.0;              // tau with tau^6 = -3/(8 multiplier)
  double gradient_norm = 0.0;
  double el_residual = 0.0;          // max relative residual of the rescaled trace
  int iterations = 0;
  bool converged = false;
  std::string abort_reason;          // empty unless the descent was cut short
  std::vector<double> value_history; // strictly decreasing iterate values
};

MinimizeResult minimize_y3(const HarmonicSpectrum& initial, const MinimizeOptions& opt = {});

// int_{S^2} <grad x_i, grad T> u^-4 dsigma, the obstruction pairing that must
// vanish at any critical trace.  i selects the ambient coordinate (0, 1, 2).
double kw_integral(const HarmonicSpectrum& T, const HarmonicSpectrum& u, int i,
                   int oversample = 4);

}  // namespace gjms
