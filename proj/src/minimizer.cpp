#include "gjms/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gjms/gjms_p3.hpp"

namespace gjms {

namespace {

struct QuotientParts {
  double S = 0;        // sum p3(k) u_km^2
  double A = 0;        // int u^-4
  double value = 0;    // (1/4pi) S sqrt(A)
  double min_sample = 0;
  double max_sample = 0;
  bool positive = false;
};

QuotientParts evaluate_quotient(const HarmonicSpectrum& u, const SphereGrid& grid,
                                double floor_ratio) {
  QuotientParts q;
  const std::vector<double> samples = synthesize(u, grid);
  q.min_sample = std::numeric_limits<double>::infinity();
  q.max_sample = -q.min_sample;
  for (double v : samples) {
    q.min_sample = std::min(q.min_sample, v);
    q.max_sample = std::max(q.max_sample, v);
  }
  q.positive = q.min_sample > floor_ratio * std::abs(q.max_sample);
  if (!q.positive) return q;
  for (std::size_t i = 0; i < samples.size(); ++i)
    q.A += grid.weights[i] * std::pow(samples[i], -4.0);
  q.S = energy(u, false);
  q.value = q.S * std::sqrt(q.A) / (4.0 * M_PI);
  return q;
}

}  // namespace

double y3_functional(const HarmonicSpectrum& u, int oversample) {
  const SphereGrid grid = build_grid(u.band_limit, oversample);
  const QuotientParts q = evaluate_quotient(u, grid, 0.0);
  if (!q.positive) throw std::invalid_argument("y3: trace must be positive");
  return q.value;
}

HarmonicSpectrum y3_gradient(const HarmonicSpectrum& u, int oversample) {
  const SphereGrid grid = build_grid(u.band_limit, oversample);
  const std::vector<double> samples = synthesize(u, grid);
  double A = 0;
  std::vector<double> inv5(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i] > 0)) throw std::invalid_argument("y3 gradient: trace must be positive");
    A += grid.weights[i] * std::pow(samples[i], -4.0);
    inv5[i] = std::pow(samples[i], -5.0);
  }
  const double S = energy(u, false);
  const HarmonicSpectrum q = analyze(grid, inv5, u.band_limit);

  HarmonicSpectrum g(u.band_limit);
  const double sqrtA = std::sqrt(A);
  for (int k = 0; k <= u.band_limit; ++k) {
    const double p3 = p3_multiplier(k, 3);
    for (int m = -k; m <= k; ++m)
      g.at(k, m) =
          (2.0 * p3 * u.at(k, m) * sqrtA - 2.0 * S / sqrtA * q.at(k, m)) / (4.0 * M_PI);
  }
  return g;
}

MinimizeResult minimize_y3(const HarmonicSpectrum& initial, const MinimizeOptions& opt) {
  MinimizeResult res;
  HarmonicSpectrum u = initial;
  const SphereGrid grid = build_grid(u.band_limit, opt.oversample);

  QuotientParts cur = evaluate_quotient(u, grid, opt.positivity_floor);
  if (!cur.positive)
    throw std::invalid_argument("minimize_y3: initial trace must be positive");
  res.value_history.push_back(cur.value);

  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it;
    const HarmonicSpectrum g = y3_gradient(u, opt.oversample);
    double gnorm2 = 0;
    for (double v : g.coeff) gnorm2 += v * v;
    res.gradient_norm = std::sqrt(gnorm2);
    if (res.gradient_norm < opt.gradient_tol) {
      res.converged = true;
      break;
    }
    if (cur.min_sample / cur.max_sample < opt.orbit_abort_ratio) {
      res.abort_reason = "trace ratio collapsed; descent is chasing a boundary orbit";
      break;
    }

    // Preconditioned steepest descent; 1 + p3(k) >= 5/8 keeps the metric
    // positive while flattening the k^3 growth of the symbol.
    HarmonicSpectrum dir(u.band_limit);
    double predicted = 0;
    for (int k = 0; k <= u.band_limit; ++k) {
      const double scale = opt.precondition ? 1.0 / (1.0 + p3_multiplier(k, 3)) : 1.0;
      for (int m = -k; m <= k; ++m) {
        dir.at(k, m) = -scale * g.at(k, m);
        predicted += scale * g.at(k, m) * g.at(k, m);
      }
    }

    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
      HarmonicSpectrum trial(u.band_limit);
      for (int i = 0; i < u.size(); ++i)
        trial.coeff[i] = u.coeff[i] + step * dir.coeff[i];
      const QuotientParts next = evaluate_quotient(trial, grid, opt.positivity_floor);
      if (!next.positive) continue;
      if (next.value < cur.value - 1e-4 * step * predicted) {
        u = trial;
        cur = next;
        res.value_history.push_back(cur.value);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.abort_reason = "line search stalled";
      break;
    }
  }

  res.multiplier = cur.S / cur.A;
  res.value = cur.value;
  res.minimizer = u;
  if (res.multiplier < 0) {
    // At a critical point P3 u = (S/A) u^-5; tau u solves the normalized
    // equation P3 v = -(3/8) v^-5 when tau^6 = -3 / (8 S/A).
    res.rescale = std::pow(-3.0 / (8.0 * res.multiplier), 1.0 / 6.0);
    for (double& c : res.minimizer.coeff) c *= res.rescale;
    res.el_residual = pde_residual(res.minimizer, grid).max_rel;
  } else {
    res.rescale = std::numeric_limits<double>::quiet_NaN();
    res.el_residual = std::numeric_limits<double>::quiet_NaN();
    if (res.abort_reason.empty()) res.abort_reason = "multiplier is nonnegative";
  }
  return res;
}

double kw_integral(const HarmonicSpectrum& T, const HarmonicSpectrum& u, int i,
                   int oversample) {
  if (i < 0 || i > 2) throw std::invalid_argument("kw_integral: coordinate out of range");
  const int L = std::max(T.band_limit, u.band_limit);
  const SphereGrid grid = build_grid(L, oversample);

  HarmonicSpectrum Tp(L), up(L);
  for (int k = 0; k <= T.band_limit; ++k)
    for (int m = -k; m <= k; ++m) Tp.at(k, m) = T.at(k, m);
  for (int k = 0; k <= u.band_limit; ++k)
    for (int m = -k; m <= k; ++m) up.at(k, m) = u.at(k, m);

  const std::vector<double> us = synthesize(up, grid);
  const std::vector<Vec3> grads = tangent_gradient_samples(Tp, grid);
  double acc = 0;
  for (int idx = 0; idx < grid.size(); ++idx) {
    if (!(us[idx] > 0))
      throw std::invalid_argument("kw_integral: trace must be positive");
    // grad_{S^2} x_i = e_i - x_i x, and x . grad T = 0, so the pairing is the
    // i-th ambient component of the tangential gradient of T.
    acc += grid.weights[idx] * grads[idx][i] * std::pow(us[idx], -4.0);
  }
  return acc;
}

}  // namespace gjms
