#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "gjms/conformal_maps.hpp"
#include "gjms/gjms_p3.hpp"
#include "gjms/quadrature.hpp"
#include "gjms/rng.hpp"

using namespace gjms;

TEST_CASE("multiplier values") {
  CHECK(p3_multiplier(0, 3) == doctest::Approx(-3.0 / 8.0).epsilon(1e-15));
  CHECK(p3_multiplier(1, 3) == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(p3_multiplier(2, 3) == doctest::Approx(105.0 / 8.0).epsilon(1e-15));
  CHECK(p3_multiplier(5, 3) == doctest::Approx(1287.0 / 8.0).epsilon(1e-15));
  CHECK(p3_multiplier(0, 5) == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  // (k - 1/2)(k + 1/2)(k + 3/2) for n = 3
  for (int k = 0; k <= 64; ++k) {
    const double ref = (k - 0.5) * (k + 0.5) * (k + 1.5);
    CHECK(p3_multiplier(k, 3) == doctest::Approx(ref).epsilon(1e-15));
  }
  // strictly increasing from k = 1 on
  for (int n : {3, 4, 5, 6, 7})
    for (int k = 1; k < 30; ++k)
      CHECK(p3_multiplier(k + 1, n) > p3_multiplier(k, n));
}

TEST_CASE("apply acts diagonally") {
  HarmonicSpectrum u(5);
  u.at(0, 0) = 2.0;
  u.at(1, 0) = 1.0;
  u.at(2, 1) = -3.0;
  const HarmonicSpectrum pu = apply_p3(u);
  CHECK(pu.at(0, 0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(pu.at(1, 0) == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(pu.at(2, 1) == doctest::Approx(-3.0 * 105.0 / 8.0).epsilon(1e-15));

  ZonalSpectrum z;
  z.dim = 5;
  z.coeff = {1.0, 1.0};
  const ZonalSpectrum pz = apply_p3_zonal(z);
  CHECK(pz.coeff[0] == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(pz.coeff[1] == doctest::Approx(p3_multiplier(1, 5)).epsilon(1e-15));
}

TEST_CASE("energy of reference spectra") {
  HarmonicSpectrum one(2);
  one.at(0, 0) = std::sqrt(4.0 * M_PI);
  CHECK(energy(one, false) == doctest::Approx(-1.5 * M_PI).epsilon(1e-15));
  CHECK(energy(one, true) == doctest::Approx(-3.0 / 8.0).epsilon(1e-15));

  HarmonicSpectrum y50(6);
  y50.at(5, 0) = 1.0;
  CHECK(energy(y50, false) == doctest::Approx(1287.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("energy is conformally invariant on the extremal family") {
  for (double r : {0.3, 0.5, 0.8}) {
    const HarmonicSpectrum ua = extremal_trace_spectrum({0.0, 0.0, r}, 64);
    CHECK(energy(ua, false) == doctest::Approx(-1.5 * M_PI).epsilon(1e-6));
  }
}

TEST_CASE("self-adjointness is exact") {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  HarmonicSpectrum u(8), v(8);
  for (double& c : u.coeff) c = dist(eng);
  for (double& c : v.coeff) c = dist(eng);
  // <P3 u, v> agrees with the pairing up to summation rounding, and the
  // pairing itself is bitwise symmetric in its arguments
  const HarmonicSpectrum pu = apply_p3(u);
  double lhs = 0;
  for (int k = 0; k <= 8; ++k)
    for (int m = -k; m <= k; ++m) lhs += pu.at(k, m) * v.at(k, m);
  CHECK(lhs == doctest::Approx(energy_pairing(u, v, false)).epsilon(1e-14));
  CHECK(energy_pairing(u, v, false) == energy_pairing(v, u, false));
}

TEST_CASE("green function samples") {
  const SphereGrid g = build_grid(8);
  const Vec3 x0{0.0, 0.0, 1.0};
  const std::vector<double> G = green_samples(x0, g);
  for (int i = 0; i < g.size(); ++i) {
    const double ref = -norm(g.nodes[i] - x0) / (2.0 * M_PI);
    CHECK(G[i] == doctest::Approx(ref).epsilon(1e-15));
    CHECK(G[i] <= 0.0);
    CHECK(G[i] >= -1.0 / M_PI);  // chordal diameter 2
  }
}

TEST_CASE("chordal distance legendre coefficients") {
  // alpha_k of |x - x0| = sum alpha_k P_k(t), t = x . x0, via quadrature with
  // dyadic refinement into the t = 1 cusp; reference -(2k+1)/(2 p3(k,3)).
  std::vector<double> cuts;
  double w = 1.0;
  for (int j = 0; j < 48; ++j) {
    w *= 0.5;
    cuts.push_back(1.0 - 2.0 * w);
  }
  const Quadrature1D q = panel_gauss(-1.0, 1.0, cuts, 10);
  for (int k = 1; k <= 8; ++k) {
    double alpha = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double t = q.nodes[i];
      double pm1 = 1.0, p = t;
      for (int j = 2; j <= k; ++j) {
        const double next = ((2.0 * j - 1.0) * t * p - (j - 1.0) * pm1) / j;
        pm1 = p;
        p = next;
      }
      alpha += q.weights[i] * std::sqrt(2.0 - 2.0 * t) * p;
    }
    alpha *= (2.0 * k + 1.0) / 2.0;
    const double ref = -(2.0 * k + 1.0) / (2.0 * p3_multiplier(k, 3));
    CHECK(alpha == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("green energy partial sums") {
  CHECK(green_energy_partial_sum(0) == doctest::Approx(-8.0 / 3.0).epsilon(1e-15));
  CHECK(green_energy_partial_sum(1) == doctest::Approx(-16.0 / 15.0).epsilon(1e-15));
  // telescoped closed form S_K = -2/(2K+1) - 2/(2K+3)
  for (int K : {4, 8, 33, 100}) {
    const double closed = -2.0 / (2.0 * K + 1.0) - 2.0 / (2.0 * K + 3.0);
    CHECK(green_energy_partial_sum(K) == doctest::Approx(closed).epsilon(1e-13));
  }
  for (int K = 8; K <= 1024; K *= 2)
    CHECK(std::abs(green_energy_partial_sum(K)) <= 3.0 / K);
}

TEST_CASE("green energy extrapolates to zero") {
  CHECK(std::abs(green_energy_extrapolated()) <= 1e-6);
  CHECK(std::abs(green_energy_extrapolated(32, 6)) <= 1e-8);
}

TEST_CASE("pde residual of the constant solution vanishes") {
  HarmonicSpectrum one(4);
  one.at(0, 0) = std::sqrt(4.0 * M_PI);
  const SphereGrid g = build_grid(4, 4);
  const PdeResidual r = pde_residual(one, g);
  CHECK(r.max_abs <= 1e-13);
}

TEST_CASE("pde residual flags non-solutions") {
  HarmonicSpectrum u(4);
  u.at(0, 0) = std::sqrt(4.0 * M_PI);
  u.at(2, 0) = 0.1 * std::sqrt(4.0 * M_PI);
  const SphereGrid g = build_grid(4, 4);
  const PdeResidual r = pde_residual(u, g);
  CHECK(r.max_rel > 1e-2);
}

TEST_CASE("pde residual of the extremal trace") {
  const HarmonicSpectrum ua = extremal_trace_spectrum({0.0, 0.0, 0.5}, 64);
  const SphereGrid g = build_grid(64, 4);
  const PdeResidual r = pde_residual(ua, g);
  CHECK(r.max_rel <= 1e-6);
}

TEST_CASE("pde residual refuses sign-changing input") {
  HarmonicSpectrum u(2);
  u.at(1, 0) = 1.0;  // x3-like, changes sign
  const SphereGrid g = build_grid(2, 2);
  CHECK_THROWS(pde_residual(u, g));
}

TEST_CASE("conformal energy invariance") {
  HarmonicSpectrum one(64);
  one.at(0, 0) = std::sqrt(4.0 * M_PI);
  CHECK(conformal_energy_invariance(one, {0.0, 0.0, 0.0}) <= 1e-14);
  CHECK(conformal_energy_invariance(one, {0.0, 0.0, 0.5}) <= 1e-6);

  HarmonicSpectrum u(64);
  u.at(0, 0) = std::sqrt(4.0 * M_PI);
  u.at(1, 1) = 0.2 * std::sqrt(4.0 * M_PI);
  CHECK(conformal_energy_invariance(u, {0.0, 0.3, 0.0}) <= 1e-4);
}

TEST_CASE("cauchy-schwarz bound on the shifted energy form") {
  // E[u,v] <= sqrt(E[u] + (3/8) mean(u)^2) sqrt(E[v] + (3/8) mean(v)^2)
  //           - (3/8) mean(u) mean(v), normalized energies.
  std::mt19937_64 eng(77);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 1000; ++trial) {
    HarmonicSpectrum u(6), v(6);
    for (double& c : u.coeff) c = nd(eng);
    for (double& c : v.coeff) c = nd(eng);
    const double mu = u.at(0, 0) / std::sqrt(4.0 * M_PI);
    const double mv = v.at(0, 0) / std::sqrt(4.0 * M_PI);
    const double qu = energy(u, true) + 0.375 * mu * mu;   // = (1/4pi) sum_{k>=1} p3 u^2 >= 0
    const double qv = energy(v, true) + 0.375 * mv * mv;
    REQUIRE(qu >= -1e-15);
    REQUIRE(qv >= -1e-15);
    const double bound = std::sqrt(std::max(qu, 0.0)) * std::sqrt(std::max(qv, 0.0)) -
                         0.375 * mu * mv;
    CHECK(energy_pairing(u, v, true) <= bound + 1e-12);
  }
}

TEST_CASE("energy is nonnegative for traces vanishing at a point") {
  // u = |x - x0| * q with q > 0 zonal about x0; the exact energy is >= 0.
  // Partial sums converge like 1/L, so extrapolate over four band limits.
  std::mt19937_64 eng(101);
  std::uniform_real_distribution<double> dist(-0.2, 0.2);
  for (int trial = 0; trial < 5; ++trial) {
    const double c1 = dist(eng), c2 = dist(eng);
    auto f = [c1, c2](double t) {
      return std::sqrt(2.0 - 2.0 * t) * (1.0 + c1 * t + c2 * (1.5 * t * t - 0.5));
    };
    const int Lmax = 2048;
    const ZonalSpectrum spec = legendre_expand_zonal(f, 3, Lmax, 2);
    std::vector<double> h, val;
    for (int L = 256; L <= Lmax; L *= 2) {
      double e = 0;
      for (int k = 0; k <= L; ++k) e += p3_multiplier(k, 3) * spec.coeff[k] * spec.coeff[k];
      h.push_back(1.0 / L);
      val.push_back(e);
    }
    for (std::size_t stage = 1; stage < val.size(); ++stage)
      for (std::size_t j = val.size() - 1; j >= stage; --j)
        val[j] = (h[j - stage] * val[j] - h[j] * val[j - 1]) / (h[j - stage] - h[j]);
    double h32 = 0;
    for (int k = 0; k <= Lmax; ++k) {
      const double lam = k * (k + 1.0);
      h32 += (std::pow(lam, 1.5) + 1.0) * spec.coeff[k] * spec.coeff[k];
    }
    CHECK(val.back() >= -1e-6 * h32);
  }
}
