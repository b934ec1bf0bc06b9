#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gjms/sphere_harmonics.hpp"

namespace gjms {

// Deterministic normal deviates: mt19937_64 plus hand-rolled Box-Muller.
// std::normal_distribution is implementation-defined, which would break
// cross-platform reproducibility of seeded runs.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  double uniform() {  // in [0, 1)
    return (engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Random positive trace: mean one plus Gaussian coefficients damped by
// (1+k)^-3, shrunk until the sampled minimum stays above a tenth of the mean.
inline HarmonicSpectrum random_positive_spectrum(int band_limit, std::uint64_t seed,
                                                 double amplitude = 0.5) {
  GaussianSource gauss(seed);
  HarmonicSpectrum u(band_limit);
  HarmonicSpectrum noise(band_limit);
  for (int k = 1; k <= band_limit; ++k)
    for (int m = -k; m <= k; ++m)
      noise.at(k, m) = gauss() / ((1.0 + k) * (1.0 + k) * (1.0 + k));

  const SphereGrid grid = build_grid(band_limit, 2);
  const double mean_coeff = std::sqrt(4.0 * M_PI);  // constant 1
  double a = amplitude;
  for (int attempt = 0; attempt < 60; ++attempt, a *= 0.5) {
    u.coeff[0] = mean_coeff;
    for (int i = 1; i < u.size(); ++i) u.coeff[i] = a * noise.coeff[i];
    double min_v = 1.0;
    for (double v : synthesize(u, grid)) min_v = std::min(min_v, v);
    if (min_v > 0.1) return u;
  }
  u = HarmonicSpectrum(band_limit);
  u.coeff[0] = mean_coeff;
  return u;
}

}  // namespace gjms
