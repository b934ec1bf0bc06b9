#include "gjms/finite_diff.hpp"

#include <cmath>
#include <map>

namespace gjms {

namespace {

// Five-point fourth-order second derivative: offsets and weights (times 1/h^2).
constexpr int kOffsets[5] = {-2, -1, 0, 1, 2};
constexpr double kWeights[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

}  // namespace

double fd_laplacian(const ScalarFieldN& f, const VecN& x, double h) {
  double acc = 0.0;
  VecN p = x;
  for (std::size_t d = 0; d < x.size(); ++d) {
    for (int i = 0; i < 5; ++i) {
      p[d] = x[d] + kOffsets[i] * h;
      acc += kWeights[i] * f(p);
    }
    p[d] = x[d];
  }
  return acc / (h * h);
}

FdBiharmonic fd_biharmonic(const ScalarFieldN& f, const VecN& x, double h) {
  // Accumulate the composed stencil weights on the integer offset lattice so
  // every sample is evaluated once and the cancellation mass is well defined.
  std::map<std::vector<int>, double> stencil;
  const std::size_t dim = x.size();
  for (std::size_t d1 = 0; d1 < dim; ++d1) {
    for (int i = 0; i < 5; ++i) {
      for (std::size_t d2 = 0; d2 < dim; ++d2) {
        for (int j = 0; j < 5; ++j) {
          std::vector<int> off(dim, 0);
          off[d1] += kOffsets[i];
          off[d2] += kOffsets[j];
          stencil[off] += kWeights[i] * kWeights[j];
        }
      }
    }
  }

  FdBiharmonic out;
  const double h4 = h * h * h * h;
  VecN p(dim);
  for (const auto& [off, w] : stencil) {
    for (std::size_t d = 0; d < dim; ++d) p[d] = x[d] + off[d] * h;
    const double contrib = w * f(p) / h4;
    out.value += contrib;
    out.scale += std::abs(contrib);
  }
  return out;
}

}  // namespace gjms
