#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "gjms/rng.hpp"
#include "gjms/sphere_harmonics.hpp"

using namespace gjms;

namespace {

// Plain Legendre P_k by recurrence, for the addition-theorem oracle.
double legendre_pk(int k, double t) {
  double pm1 = 1.0, p = t;
  if (k == 0) return 1.0;
  for (int j = 2; j <= k; ++j) {
    const double next = ((2.0 * j - 1.0) * t * p - (j - 1.0) * pm1) / j;
    pm1 = p;
    p = next;
  }
  return p;
}

HarmonicSpectrum random_spectrum(int L, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  HarmonicSpectrum u(L);
  for (double& c : u.coeff) c = dist(eng);
  return u;
}

}  // namespace

TEST_CASE("grid weights sum to the sphere area") {
  for (int L : {0, 3, 8}) {
    const SphereGrid g = build_grid(L);
    double total = 0;
    for (double w : g.weights) total += w;
    CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
    CHECK(g.n_theta == L + 1);
    CHECK(g.n_phi == 2 * L + 1);
  }
}

TEST_CASE("basis is orthonormal on its minimal grid") {
  const int L = 16;
  const SphereGrid g = build_grid(L);
  const int nb = (L + 1) * (L + 1);

  Eigen::MatrixXd B(g.size(), nb);
  for (int j = 0; j < nb; ++j) {
    HarmonicSpectrum e(L);
    e.coeff[j] = 1.0;
    const std::vector<double> s = synthesize(e, g);
    for (int i = 0; i < g.size(); ++i) B(i, j) = s[i];
  }
  Eigen::VectorXd w(g.size());
  for (int i = 0; i < g.size(); ++i) w(i) = g.weights[i];
  const Eigen::MatrixXd gram = B.transpose() * w.asDiagonal() * B;

  double worst = 0;
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("orthonormality spot checks at L = 32") {
  const int L = 32;
  const SphereGrid g = build_grid(L);
  std::mt19937_64 eng(7);
  std::uniform_int_distribution<int> pick(0, (L + 1) * (L + 1) - 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int i = pick(eng), j = pick(eng);
    HarmonicSpectrum a(L), b(L);
    a.coeff[i] = 1.0;
    b.coeff[j] = 1.0;
    const std::vector<double> sa = synthesize(a, g);
    const std::vector<double> sb = synthesize(b, g);
    double ip = 0;
    for (int p = 0; p < g.size(); ++p) ip += g.weights[p] * sa[p] * sb[p];
    CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("analyze frozen values") {
  const SphereGrid g = build_grid(8);
  std::vector<double> ones(g.size(), 1.0);
  const HarmonicSpectrum c = analyze(g, ones, 8);
  CHECK(c.at(0, 0) == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-14));
  for (int i = 1; i < c.size(); ++i) CHECK(std::abs(c.coeff[i]) <= 1e-13);

  std::vector<double> x3(g.size());
  for (int i = 0; i < g.size(); ++i) x3[i] = g.nodes[i][2];
  const HarmonicSpectrum cx = analyze(g, x3, 8);
  CHECK(cx.at(1, 0) == doctest::Approx(std::sqrt(4.0 * M_PI / 3.0)).epsilon(1e-14));
  CHECK(std::abs(cx.at(0, 0)) <= 1e-14);
  CHECK(std::abs(cx.at(2, 1)) <= 1e-14);
}

TEST_CASE("round trip on band-limited data") {
  const int L = 16;
  const SphereGrid g = build_grid(L);
  const HarmonicSpectrum u = random_spectrum(L, 11);
  const HarmonicSpectrum back = analyze(g, synthesize(u, g), L);
  for (int i = 0; i < u.size(); ++i)
    CHECK(back.coeff[i] == doctest::Approx(u.coeff[i]).epsilon(1e-12).scale(1.0));

  // basis element round trip
  HarmonicSpectrum e(8);
  e.at(4, -2) = 1.0;
  const SphereGrid g8 = build_grid(8);
  const HarmonicSpectrum eb = analyze(g8, synthesize(e, g8), 8);
  CHECK(eb.at(4, -2) == doctest::Approx(1.0).epsilon(1e-13));
  double off = 0;
  for (int i = 0; i < eb.size(); ++i)
    if (i != 4 * 4 + 4 - 2) off = std::max(off, std::abs(eb.coeff[i]));
  CHECK(off <= 1e-13);
}

TEST_CASE("analyze rejects a grid coarser than the requested band") {
  const SphereGrid g = build_grid(4);
  std::vector<double> s(g.size(), 1.0);
  CHECK_THROWS(analyze(g, s, 5));
  std::vector<double> wrong(3, 0.0);
  CHECK_THROWS(analyze(g, wrong, 2));
}

TEST_CASE("pointwise synthesis agrees with grid synthesis") {
  const int L = 12;
  const SphereGrid g = build_grid(L);
  const HarmonicSpectrum u = random_spectrum(L, 3);
  const std::vector<double> s = synthesize(u, g);
  for (int i : {0, 7, 101, g.size() - 1}) {
    CHECK(synthesize_at(u, g.nodes[i]) ==
          doctest::Approx(s[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("addition theorem") {
  std::mt19937_64 eng(5);
  std::normal_distribution<double> nd;
  const int L = 10;
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 x{nd(eng), nd(eng), nd(eng)}, y{nd(eng), nd(eng), nd(eng)};
    x = (1.0 / norm(x)) * x;
    y = (1.0 / norm(y)) * y;
    const int k = trial % (L + 1);
    double lhs = 0;
    for (int m = -k; m <= k; ++m) {
      HarmonicSpectrum e(L);
      e.at(k, m) = 1.0;
      lhs += synthesize_at(e, x) * synthesize_at(e, y);
    }
    const double rhs = (2.0 * k + 1.0) / (4.0 * M_PI) * legendre_pk(k, dot(x, y));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("parseval on band-limited data") {
  const int L = 16;
  const SphereGrid g = build_grid(L);
  const HarmonicSpectrum u = random_spectrum(L, 23);
  const std::vector<double> s = synthesize(u, g);
  double quad = 0, spec = 0;
  for (int i = 0; i < g.size(); ++i) quad += g.weights[i] * s[i] * s[i];
  for (double c : u.coeff) spec += c * c;
  CHECK(quad == doctest::Approx(spec).epsilon(1e-10));
}

TEST_CASE("tangential gradient matches finite differences of the synthesis") {
  const int L = 8;
  const SphereGrid g = build_grid(L, 2);
  const HarmonicSpectrum u = random_spectrum(L, 17);
  const std::vector<Vec3> grads = tangent_gradient_samples(u, g);

  std::mt19937_64 eng(9);
  std::uniform_int_distribution<int> pick(0, g.size() - 1);
  const double h = 1e-6;
  for (int trial = 0; trial < 25; ++trial) {
    const int i = pick(eng);
    const Vec3 x = g.nodes[i];
    // tangential FD along two orthogonal directions at x
    Vec3 e1{-x[1], x[0], 0.0};
    if (norm(e1) < 1e-8) e1 = Vec3{1.0, 0.0, 0.0};
    e1 = (1.0 / norm(e1)) * e1;
    const Vec3 e2{x[1] * e1[2] - x[2] * e1[1], x[2] * e1[0] - x[0] * e1[2],
                  x[0] * e1[1] - x[1] * e1[0]};
    for (const Vec3& dir : {e1, e2}) {
      Vec3 xp = x + h * dir, xm = x - h * dir;
      xp = (1.0 / norm(xp)) * xp;
      xm = (1.0 / norm(xm)) * xm;
      const double fd = (synthesize_at(u, xp) - synthesize_at(u, xm)) / (2.0 * h);
      CHECK(dot(grads[i], dir) == doctest::Approx(fd).epsilon(5e-6).scale(1.0));
    }
  }
}

TEST_CASE("gradient eigenfunction identity") {
  // int |grad x_3|^2 dV = lambda_1 * int x_3^2 dV = 2 * 4pi/3.
  const SphereGrid g = build_grid(4, 2);
  HarmonicSpectrum u(4);
  u.at(1, 0) = std::sqrt(4.0 * M_PI / 3.0);  // synthesizes to x_3
  const std::vector<Vec3> grads = tangent_gradient_samples(u, g);
  double total = 0;
  for (int i = 0; i < g.size(); ++i) total += g.weights[i] * dot(grads[i], grads[i]);
  CHECK(total == doctest::Approx(8.0 * M_PI / 3.0).epsilon(1e-12));
}

TEST_CASE("sobolev norms") {
  HarmonicSpectrum one(4);
  one.at(0, 0) = std::sqrt(4.0 * M_PI);
  const SobolevNorms n1 = sobolev_norms(one);
  const double root = std::sqrt(4.0 * M_PI);
  CHECK(n1.l2 == doctest::Approx(root).epsilon(1e-15));
  CHECK(n1.h_half == doctest::Approx(root).epsilon(1e-15));
  CHECK(n1.h1 == doctest::Approx(root).epsilon(1e-15));
  CHECK(n1.h_3half == doctest::Approx(root).epsilon(1e-15));

  HarmonicSpectrum y10(2);
  y10.at(1, 0) = 1.0;
  CHECK(sobolev_norms(y10).h1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("interpolation bound with constant sqrt(2)") {
  // (lambda^{1/2} + 1)^2 <= 2 (lambda + 1) gives |u|_{H^{1/2}}^2 <= sqrt(2) |u|_{L^2} |u|_{H^1}.
  for (unsigned seed = 0; seed < 1000; ++seed) {
    const HarmonicSpectrum u = random_spectrum(6, seed);
    const SobolevNorms n = sobolev_norms(u);
    CHECK(n.h_half * n.h_half <= std::sqrt(2.0) * n.l2 * n.h1 * (1.0 + 1e-12));
  }
}

TEST_CASE("seeded random positive spectra are positive and reproducible") {
  const HarmonicSpectrum a = random_positive_spectrum(16, 42);
  const HarmonicSpectrum b = random_positive_spectrum(16, 42);
  for (int i = 0; i < a.size(); ++i) CHECK(a.coeff[i] == b.coeff[i]);

  const SphereGrid g = build_grid(16, 2);
  const std::vector<double> s = synthesize(a, g);
  for (double v : s) CHECK(v > 0.0);

  const HarmonicSpectrum c = random_positive_spectrum(16, 43);
  bool differs = false;
  for (int i = 0; i < a.size(); ++i)
    if (a.coeff[i] != c.coeff[i]) differs = true;
  CHECK(differs);
}
