#pragma once

#include <functional>

#include "gjms/geometry.hpp"

namespace gjms {

using ScalarFieldN = std::function<double(const VecN&)>;

// Fourth-order central Laplacian in R^dim with step h.
double fd_laplacian(const ScalarFieldN& f, const VecN& x, double h);

struct FdBiharmonic {
  double value = 0;  // composed fourth-order Laplacian-of-Laplacian estimate
  double scale = 0;  // sum of |weight * sample| over the stencil (cancellation mass)
};

// Biharmonic operator by composing two fourth-order Laplacian stencils.
// `scale` measures the size of the individual contributions that cancel;
// |value|/scale is the natural discretization-limited residual for a field
// that is exactly biharmonic.
FdBiharmonic fd_biharmonic(const ScalarFieldN& f, const VecN& x, double h);

}  // namespace gjms
