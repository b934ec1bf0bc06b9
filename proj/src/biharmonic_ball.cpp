#include "gjms/biharmonic_ball.hpp"

#include "gjms/gjms_p3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gjms {

double extension_moment(int k, int n) { return 0.5 * k + 0.25 * (n - 4); }

double extension_laplacian_coeff(int k, int n) {
  return -(k + 0.5 * (n - 4)) * (2.0 * k + n);
}

BallExtension extend(const HarmonicSpectrum& u) { return BallExtension{u}; }

ZonalBallExtension extend_zonal(const ZonalSpectrum& u) { return ZonalBallExtension{u}; }

namespace {

// Radial profile of one degree and its first derivative / Laplacian pieces.
struct RadialTerms {
  double value;
  double laplacian;
  double deriv;
};

RadialTerms radial_terms(int k, int n, double r) {
  const double e = extension_moment(k, n);
  const double c = extension_laplacian_coeff(k, n);
  const double rk = std::pow(r, k);
  RadialTerms t;
  t.value = rk * (1.0 + e * (1.0 - r * r));
  t.laplacian = c * rk;
  // d/dr [ r^k (1+e) - e r^{k+2} ]
  const double rkm1 = (k == 0) ? 0.0 : std::pow(r, k - 1);
  t.deriv = k * rkm1 * (1.0 + e) - e * (k + 2.0) * std::pow(r, k + 1);
  return t;
}

// g_k(omega) = sum_m u_{k,m} Y_{k,m}(omega): per-degree angular profiles.
std::vector<double> degree_profiles(const HarmonicSpectrum& spec, const Vec3& omega) {
  const int L = spec.band_limit;
  std::vector<double> g(L + 1, 0.0);
  const double t = omega[2];
  const double phi = std::atan2(omega[1], omega[0]);
  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> row;
  for (int m = 0; m <= L; ++m) {
    normalized_legendre_row(L, m, t, row);
    for (int k = m; k <= L; ++k) {
      if (m == 0) {
        g[k] += spec.at(k, 0) * row[k - m];
      } else {
        g[k] += sqrt2 * (spec.at(k, m) * std::cos(m * phi) +
                         spec.at(k, -m) * std::sin(m * phi)) *
                row[k - m];
      }
    }
  }
  return g;
}

}  // namespace

ExtensionValues eval_extension(const BallExtension& ext, const Vec3& x) {
  const double r = norm(x);
  const Vec3 omega = (r > 0) ? (1.0 / r) * x : Vec3{0.0, 0.0, 1.0};
  const std::vector<double> g = degree_profiles(ext.boundary, omega);
  ExtensionValues v;
  for (int k = 0; k <= ext.boundary.band_limit; ++k) {
    const RadialTerms t = radial_terms(k, 3, r);
    v.value += g[k] * t.value;
    v.laplacian += g[k] * t.laplacian;
    v.radial_derivative += g[k] * t.deriv;
  }
  return v;
}

ExtensionValues eval_extension(const ZonalBallExtension& ext, double r, double t) {
  const int n = ext.boundary.dim;
  std::vector<double> row;
  zonal_basis_row(n, ext.boundary.band_limit(), t, row);
  ExtensionValues v;
  for (int k = 0; k <= ext.boundary.band_limit(); ++k) {
    const RadialTerms rt = radial_terms(k, n, r);
    const double g = ext.boundary.coeff[k] * row[k];
    v.value += g * rt.value;
    v.laplacian += g * rt.laplacian;
    v.radial_derivative += g * rt.deriv;
  }
  return v;
}

namespace {

template <typename Coeffs>
double bulk_energy_impl(const Coeffs& get, int kmax, int n) {
  double s = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const double c = extension_laplacian_coeff(k, n);
    s += get(k) * c * c / (2.0 * k + n);
  }
  return s;
}

}  // namespace

double bulk_energy(const BallExtension& ext) {
  const auto& u = ext.boundary;
  return bulk_energy_impl(
      [&u](int k) {
        double b = 0.0;
        for (int m = -k; m <= k; ++m) b += u.at(k, m) * u.at(k, m);
        return b;
      },
      u.band_limit, 3);
}

double bulk_energy(const ZonalBallExtension& ext) {
  const auto& u = ext.boundary;
  return bulk_energy_impl([&u](int k) { return u.coeff[k] * u.coeff[k]; },
                          u.band_limit(), u.dim);
}

double b33_multiplier(int k, int n) {
  const double c = extension_laplacian_coeff(k, n);
  const double half_nm4 = 0.5 * (n - 4);
  // d^2 U_k / dr^2 at r = 1 reduces to k(k-1) - (2k+1)(k + (n-4)/2).
  const double d2 = k * (k - 1.0) - (2.0 * k + 1.0) * (k + half_nm4);
  const double lambda = static_cast<double>(k) * (k + n - 2);
  const double zeroth = 0.25 * (n - 4.0) * (n * n - 3.0 * n + 4.0);
  return -c * k - half_nm4 * d2 + 0.5 * n * lambda + zeroth;
}

HarmonicSpectrum boundary_operator_b33(const BallExtension& ext) {
  HarmonicSpectrum out(ext.boundary.band_limit);
  for (int k = 0; k <= out.band_limit; ++k) {
    const double mult = b33_multiplier(k, 3);
    for (int m = -k; m <= k; ++m) out.at(k, m) = mult * ext.boundary.at(k, m);
  }
  return out;
}

ZonalSpectrum boundary_operator_b33(const ZonalBallExtension& ext) {
  ZonalSpectrum out = ext.boundary;
  for (int k = 0; k <= out.band_limit(); ++k)
    out.coeff[k] *= b33_multiplier(k, out.dim);
  return out;
}

namespace {

void check_positive(const std::vector<double>& samples, const char* who) {
  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  for (double v : samples) {
    mx = std::max(mx, std::abs(v));
    mn = std::min(mn, v);
  }
  if (!(mn > 1e-8 * mx)) throw std::invalid_argument(std::string(who) + ": u must be positive");
}

}  // namespace

TraceDeficit trace_deficit_n3(const HarmonicSpectrum& u, int oversample) {
  TraceDeficit d;
  // The bulk quadratic form collapses degree by degree to twice the boundary
  // energy; reuse that form so the equality holds bitwise.
  d.rhs = 2.0 * energy(u, false);

  const SphereGrid grid = build_grid(u.band_limit, oversample);
  const std::vector<double> us = synthesize(u, grid);
  check_positive(us, "trace_deficit_n3");
  double quartic = 0.0;
  for (int i = 0; i < grid.size(); ++i) quartic += grid.weights[i] * std::pow(us[i], -4.0);

  const double area = 4.0 * M_PI;
  d.lhs = -0.75 * std::pow(area, 1.5) / std::sqrt(quartic);
  d.deficit = d.rhs - d.lhs;
  return d;
}

TraceDeficit trace_deficit_general(const ZonalSpectrum& u, int oversample) {
  const int n = u.dim;
  if (n < 5) throw std::invalid_argument("trace_deficit_general: requires n >= 5");
  TraceDeficit d;
  for (int k = 0; k <= u.band_limit(); ++k) {
    const double c = extension_laplacian_coeff(k, n);
    const double per_degree = c * c / (2.0 * k + n) + 2.0 * zonal_eigenvalue(k, n) +
                              0.5 * n * (n - 4.0);
    d.rhs += per_degree * u.coeff[k] * u.coeff[k];
  }

  const double expo = 2.0 * (n - 1.0) / (n - 4.0);
  const Quadrature1D rule = zonal_surface_rule(n, oversample * (u.band_limit() + 1));
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    mass += rule.weights[i] * std::pow(std::abs(zonal_synthesize_at(u, rule.nodes[i])), expo);

  const double area = sphere_surface_area(n);
  const double cn = 0.25 * n * (n - 2.0) * (n - 4.0);
  d.lhs = cn * std::pow(area, 3.0 / (n - 1.0)) * std::pow(mass, (n - 4.0) / (n - 1.0));
  d.deficit = d.rhs - d.lhs;
  return d;
}

TraceDeficit trace_deficit_n4(const ZonalSpectrum& u, int oversample) {
  if (u.dim != 4) throw std::invalid_argument("trace_deficit_n4: requires n = 4");
  TraceDeficit d;
  double quad = 0.0;
  for (int k = 0; k <= u.band_limit(); ++k) {
    const double c = extension_laplacian_coeff(k, 4);
    quad += (c * c / (2.0 * k + 4.0) + 2.0 * zonal_eigenvalue(k, 4)) * u.coeff[k] * u.coeff[k];
  }
  d.rhs = 3.0 / (16.0 * M_PI * M_PI) * quad;

  const double mean = zonal_mean(u);
  const Quadrature1D rule = zonal_surface_rule(4, oversample * (u.band_limit() + 1));
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    mass += rule.weights[i] * std::exp(3.0 * (zonal_synthesize_at(u, rule.nodes[i]) - mean));
  d.lhs = std::log(mass / sphere_surface_area(4));
  d.deficit = d.rhs - d.lhs;
  return d;
}

ScalarField3 amend_extension(ScalarField3 U, VectorField3 gradU, ScalarField3 V) {
  return [U = std::move(U), gradU = std::move(gradU), V = std::move(V)](const Vec3& x) {
    const double r2 = dot(x, x);
    return 0.25 * (r2 + 3.0) * U(x) + 0.5 * (1.0 - r2) * dot(x, gradU(x)) + V(x);
  };
}

double amend_correction_boundary_defect(const ScalarField3& V, int n_samples, double h) {
  double worst = 0.0;
  // Spiral point set; enough coverage for a smoothness check.
  for (int i = 0; i < n_samples; ++i) {
    const double t = -1.0 + 2.0 * (i + 0.5) / n_samples;
    const double phi = 2.399963229728653 * i;  // golden angle
    const double s = std::sqrt(1.0 - t * t);
    const Vec3 omega{s * std::cos(phi), s * std::sin(phi), t};
    auto radial = [&](double r) { return V(r * omega); };
    const double v0 = radial(1.0);
    const double d1 = (-radial(1.0 + 2 * h) + 8 * radial(1.0 + h) - 8 * radial(1.0 - h) +
                       radial(1.0 - 2 * h)) /
                      (12.0 * h);
    worst = std::max({worst, std::abs(v0), std::abs(d1)});
  }
  return worst;
}

}  // namespace gjms
