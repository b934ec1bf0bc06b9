#include "gjms/sphere_harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace gjms {

SphereGrid build_grid(int band_limit, int oversample) {
  if (band_limit < 0) throw std::invalid_argument("build_grid: band limit must be >= 0");
  if (oversample < 1) throw std::invalid_argument("build_grid: oversample must be >= 1");

  SphereGrid g;
  g.band_limit = band_limit;
  g.n_theta = oversample * (band_limit + 1);
  g.n_phi = oversample * (2 * band_limit + 1);

  const Quadrature1D gl = gauss_legendre(g.n_theta);
  g.t_nodes = gl.nodes;
  g.t_weights = gl.weights;

  g.nodes.resize(g.size());
  g.weights.resize(g.size());
  const double wphi = 2.0 * M_PI / g.n_phi;
  for (int i = 0; i < g.n_theta; ++i) {
    const double t = g.t_nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < g.n_phi; ++j) {
      const double phi = g.phi(j);
      g.nodes[g.index(i, j)] = {s * std::cos(phi), s * std::sin(phi), t};
      g.weights[g.index(i, j)] = g.t_weights[i] * wphi;
    }
  }
  return g;
}

void normalized_legendre_row(int L, int m, double t, std::vector<double>& row) {
  std::vector<double> unused;
  normalized_legendre_row_deriv(L, m, t, row, unused);
}

// Stable three-term recurrence on fully normalized associated Legendre
// functions; no factorials appear, so it is safe to large degree.
void normalized_legendre_row_deriv(int L, int m, double t, std::vector<double>& row,
                                   std::vector<double>& dtheta) {
  if (m < 0 || m > L) throw std::invalid_argument("normalized_legendre_row: bad order");
  row.assign(L - m + 1, 0.0);
  dtheta.assign(L - m + 1, 0.0);

  const double s2 = std::max(0.0, 1.0 - t * t);  // sin^2(theta)
  const double s = std::sqrt(s2);

  // Diagonal seed \bar P_m^m = (-1)^m sqrt((2m+1)/(4pi) prod (2i-1)/(2i)) s^m.
  double pmm = 1.0 / std::sqrt(4.0 * M_PI);
  for (int i = 1; i <= m; ++i) pmm *= -s * std::sqrt((2.0 * i + 1.0) / (2.0 * i));
  row[0] = pmm;

  if (L > m) {
    row[1] = t * std::sqrt(2.0 * m + 3.0) * pmm;
    for (int k = m + 2; k <= L; ++k) {
      const double ak = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - m * m));
      const double akm1 =
          std::sqrt((4.0 * (k - 1.0) * (k - 1.0) - 1.0) /
                    ((k - 1.0) * (k - 1.0) - static_cast<double>(m) * m));
      row[k - m] = ak * (t * row[k - m - 1] - row[k - m - 2] / akm1);
    }
  }

  // d/dtheta via (1-t^2) d/dt relation:
  //   d\bar P_k^m/dtheta = (k t \bar P_k^m - r_k \bar P_{k-1}^m)/sin(theta),
  //   r_k = sqrt((k^2-m^2)(2k+1)/(2k-1)).
  // Quadrature grids keep sin(theta) away from 0, so the division is safe.
  if (s > 0.0) {
    for (int k = m; k <= L; ++k) {
      const double below = (k > m) ? row[k - m - 1] : 0.0;
      const double rk =
          (k > 0) ? std::sqrt((static_cast<double>(k) * k - static_cast<double>(m) * m) *
                              (2.0 * k + 1.0) / (2.0 * k - 1.0))
                  : 0.0;
      dtheta[k - m] = (k * t * row[k - m] - rk * below) / s;
    }
  }
}

namespace {

void check_analysis_band(const SphereGrid& grid, int band_limit) {
  if (band_limit < 0) throw std::invalid_argument("analyze: band limit must be >= 0");
  if (band_limit > grid.band_limit)
    throw std::invalid_argument("analyze: grid too coarse for requested band limit");
}

}  // namespace

HarmonicSpectrum analyze(const SphereGrid& grid, const std::vector<double>& samples,
                         int band_limit) {
  check_analysis_band(grid, band_limit);
  if (static_cast<int>(samples.size()) != grid.size())
    throw std::invalid_argument("analyze: sample count does not match grid");

  const int L = band_limit;
  HarmonicSpectrum spec(L);

  // Longitude sums first: F_c[i][m], F_s[i][m].
  std::vector<double> fc(static_cast<std::size_t>(grid.n_theta) * (L + 1));
  std::vector<double> fs(static_cast<std::size_t>(grid.n_theta) * (L + 1));
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int m = 0; m <= L; ++m) {
      double cs = 0.0, sn = 0.0;
      for (int j = 0; j < grid.n_phi; ++j) {
        const double a = m * grid.phi(j);
        cs += samples[grid.index(i, j)] * std::cos(a);
        sn += samples[grid.index(i, j)] * std::sin(a);
      }
      fc[i * (L + 1) + m] = cs;
      fs[i * (L + 1) + m] = sn;
    }
  }

  const double wphi = 2.0 * M_PI / grid.n_phi;
  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> row;
  for (int m = 0; m <= L; ++m) {
    for (int i = 0; i < grid.n_theta; ++i) {
      normalized_legendre_row(L, m, grid.t_nodes[i], row);
      const double w = grid.t_weights[i] * wphi;
      for (int k = m; k <= L; ++k) {
        const double p = row[k - m];
        if (m == 0) {
          spec.at(k, 0) += w * p * fc[i * (L + 1)];
        } else {
          spec.at(k, m) += w * sqrt2 * p * fc[i * (L + 1) + m];
          spec.at(k, -m) += w * sqrt2 * p * fs[i * (L + 1) + m];
        }
      }
    }
  }
  return spec;
}

std::vector<double> synthesize(const HarmonicSpectrum& spec, const SphereGrid& grid) {
  const int L = spec.band_limit;
  std::vector<double> out(grid.size(), 0.0);
  const double sqrt2 = std::sqrt(2.0);

  std::vector<double> row;
  std::vector<double> gc(L + 1), gs(L + 1);
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int m = 0; m <= L; ++m) {
      gc[m] = 0.0;
      gs[m] = 0.0;
      normalized_legendre_row(L, m, grid.t_nodes[i], row);
      for (int k = m; k <= L; ++k) {
        if (m == 0) {
          gc[0] += spec.at(k, 0) * row[k - m];
        } else {
          gc[m] += sqrt2 * spec.at(k, m) * row[k - m];
          gs[m] += sqrt2 * spec.at(k, -m) * row[k - m];
        }
      }
    }
    for (int j = 0; j < grid.n_phi; ++j) {
      double v = gc[0];
      const double phi = grid.phi(j);
      for (int m = 1; m <= L; ++m) v += gc[m] * std::cos(m * phi) + gs[m] * std::sin(m * phi);
      out[grid.index(i, j)] = v;
    }
  }
  return out;
}

double synthesize_at(const HarmonicSpectrum& spec, const Vec3& x) {
  const int L = spec.band_limit;
  const double t = x[2];
  const double phi = std::atan2(x[1], x[0]);
  const double sqrt2 = std::sqrt(2.0);

  double v = 0.0;
  std::vector<double> row;
  for (int m = 0; m <= L; ++m) {
    normalized_legendre_row(L, m, t, row);
    double g = 0.0;
    if (m == 0) {
      for (int k = m; k <= L; ++k) g += spec.at(k, 0) * row[k - m];
      v += g;
    } else {
      double gcos = 0.0, gsin = 0.0;
      for (int k = m; k <= L; ++k) {
        gcos += spec.at(k, m) * row[k - m];
        gsin += spec.at(k, -m) * row[k - m];
      }
      v += sqrt2 * (gcos * std::cos(m * phi) + gsin * std::sin(m * phi));
    }
  }
  return v;
}

std::vector<Vec3> tangent_gradient_samples(const HarmonicSpectrum& spec,
                                           const SphereGrid& grid) {
  const int L = spec.band_limit;
  const double sqrt2 = std::sqrt(2.0);
  std::vector<Vec3> out(grid.size());

  std::vector<double> row, dth;
  // Per theta ring: accumulate d/dtheta and (1/sin)d/dphi Fourier profiles.
  std::vector<double> dc(L + 1), ds(L + 1), pc(L + 1), ps(L + 1);
  for (int i = 0; i < grid.n_theta; ++i) {
    const double t = grid.t_nodes[i];
    const double sin_th = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int m = 0; m <= L; ++m) {
      dc[m] = ds[m] = pc[m] = ps[m] = 0.0;
      normalized_legendre_row_deriv(L, m, t, row, dth);
      for (int k = m; k <= L; ++k) {
        if (m == 0) {
          dc[0] += spec.at(k, 0) * dth[k - m];
        } else {
          dc[m] += sqrt2 * spec.at(k, m) * dth[k - m];
          ds[m] += sqrt2 * spec.at(k, -m) * dth[k - m];
          pc[m] += sqrt2 * spec.at(k, m) * row[k - m];
          ps[m] += sqrt2 * spec.at(k, -m) * row[k - m];
        }
      }
    }
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = grid.phi(j);
      double du_dtheta = dc[0];
      double du_dphi_over_sin = 0.0;
      for (int m = 1; m <= L; ++m) {
        const double c = std::cos(m * phi), s = std::sin(m * phi);
        du_dtheta += dc[m] * c + ds[m] * s;
        du_dphi_over_sin += m * (-pc[m] * s + ps[m] * c) / sin_th;
      }
      const double cos_th = t;
      const Vec3 theta_hat = {cos_th * std::cos(phi), cos_th * std::sin(phi), -sin_th};
      const Vec3 phi_hat = {-std::sin(phi), std::cos(phi), 0.0};
      out[grid.index(i, j)] =
          du_dtheta * theta_hat + du_dphi_over_sin * phi_hat;
    }
  }
  return out;
}

SobolevNorms sobolev_norms(const HarmonicSpectrum& spec) {
  SobolevNorms n;
  double l2 = 0, hh = 0, h1 = 0, h3 = 0;
  for (int k = 0; k <= spec.band_limit; ++k) {
    const double lam = static_cast<double>(k) * (k + 1);
    double block = 0;
    for (int m = -k; m <= k; ++m) block += spec.at(k, m) * spec.at(k, m);
    l2 += block;
    hh += (std::sqrt(lam) + 1.0) * block;
    h1 += (lam + 1.0) * block;
    h3 += (lam * std::sqrt(lam) + 1.0) * block;
  }
  n.l2 = std::sqrt(l2);
  n.h_half = std::sqrt(hh);
  n.h1 = std::sqrt(h1);
  n.h_3half = std::sqrt(h3);
  return n;
}

}  // namespace gjms
