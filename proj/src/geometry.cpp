#include "gjms/geometry.hpp"

#include <stdexcept>

namespace gjms {

double gamma_half_integer(int n) {
  if (n < 1) throw std::invalid_argument("gamma_half_integer: n must be >= 1");
  if (n % 2 == 0) {
    // Gamma(m) = (m-1)! with m = n/2.
    double g = 1.0;
    for (int j = 2; j < n / 2; ++j) g *= j;
    return g;
  }
  // Gamma(m + 1/2) = (2m-1)!! sqrt(pi) / 2^m with m = (n-1)/2.
  double g = std::sqrt(M_PI);
  for (int j = 1; j <= (n - 1) / 2; ++j) g *= (j - 0.5);
  return g;
}

double sphere_surface_area(int n) {
  if (n < 2) throw std::invalid_argument("sphere_surface_area: n must be >= 2");
  return 2.0 * std::pow(M_PI, 0.5 * n) / gamma_half_integer(n);
}

}  // namespace gjms
