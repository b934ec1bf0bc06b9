#include "gjms/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gjms/geometry.hpp"

namespace gjms {

namespace {

// Recurrence coefficients for monic polynomials orthogonal w.r.t.
// (1-t^2)^alpha dt on [-1,1]: x p_k = p_{k+1} + beta_k p_{k-1}.
// Symmetry kills the diagonal terms.
double beta_coeff(int k, double alpha) {
  const double two_a = 2.0 * alpha;
  // k = 1 needs the cancelled form: (k+2a) and (2k+2a-1) share the root a = -1/2.
  if (k == 1) return 1.0 / (3.0 + two_a);
  return k * (k + two_a) / ((2.0 * k + two_a - 1.0) * (2.0 * k + two_a + 1.0));
}

double total_mass(double alpha) {
  // int_{-1}^1 (1-t^2)^alpha dt = sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2)
  return std::sqrt(M_PI) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
}

// Evaluates the orthonormal polynomials p_0..p_n at x along with p_n'.
// p_0 = 1/sqrt(mu0); p_{k+1} = (x p_k - sqrt(beta_k) p_{k-1}) / sqrt(beta_{k+1}).
void orthonormal_eval(int n, double alpha, double mu0, double x, std::vector<double>& p,
                      double* deriv_n) {
  p.assign(n + 1, 0.0);
  p[0] = 1.0 / std::sqrt(mu0);
  double dprev = 0.0, dcur = 0.0;  // derivatives of p_{k-1}, p_k
  if (n == 0) {
    if (deriv_n) *deriv_n = 0.0;
    return;
  }
  double b1 = std::sqrt(beta_coeff(1, alpha));
  p[1] = x * p[0] / b1;
  dcur = p[0] / b1;
  for (int k = 1; k < n; ++k) {
    const double bk = std::sqrt(beta_coeff(k, alpha));
    const double bk1 = std::sqrt(beta_coeff(k + 1, alpha));
    p[k + 1] = (x * p[k] - bk * p[k - 1]) / bk1;
    const double dnext = (p[k] + x * dcur - bk * dprev) / bk1;
    dprev = dcur;
    dcur = dnext;
  }
  if (deriv_n) *deriv_n = dcur;
}

}  // namespace

Quadrature1D gauss_gegenbauer(int npoints, double alpha) {
  if (npoints < 1) throw std::invalid_argument("gauss_gegenbauer: npoints must be >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_gegenbauer: alpha must be > -1");

  const double mu0 = total_mass(alpha);
  Quadrature1D out;
  if (npoints == 1) {
    out.nodes = {0.0};
    out.weights = {mu0};
    return out;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(npoints);
  Eigen::VectorXd sub(npoints - 1);
  for (int k = 1; k < npoints; ++k) sub[k - 1] = std::sqrt(beta_coeff(k, alpha));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_gegenbauer: eigensolver failed");

  out.nodes.resize(npoints);
  out.weights.resize(npoints);
  std::vector<double> p;
  for (int i = 0; i < npoints; ++i) {
    double x = solver.eigenvalues()[i];
    // Two Newton steps on p_n(x) = 0 sharpen the eigenvalue to full precision.
    for (int it = 0; it < 2; ++it) {
      double dp = 0.0;
      orthonormal_eval(npoints, alpha, mu0, x, p, &dp);
      if (dp != 0.0) x -= p[npoints] / dp;
    }
    orthonormal_eval(npoints, alpha, mu0, x, p, nullptr);
    double s = 0.0;
    for (int k = 0; k < npoints; ++k) s += p[k] * p[k];
    out.nodes[i] = x;
    out.weights[i] = 1.0 / s;
  }
  return out;
}

Quadrature1D panel_gauss(double a, double b, const std::vector<double>& breakpoints, int q) {
  if (!(b > a)) throw std::invalid_argument("panel_gauss: empty interval");
  if (q < 1) throw std::invalid_argument("panel_gauss: q must be >= 1");
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const Quadrature1D base = gauss_legendre(q);
  Quadrature1D out;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double mid = 0.5 * (cuts[j] + cuts[j + 1]);
    const double half = 0.5 * (cuts[j + 1] - cuts[j]);
    for (int i = 0; i < q; ++i) {
      out.nodes.push_back(mid + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

std::vector<double> refined_breakpoints(double a, double b, double c, double h, int levels) {
  std::vector<double> cuts;
  for (double x = a; x < b; x += h) cuts.push_back(x);
  if (c > a && c < b) {
    double w = h;
    for (int j = 0; j < levels; ++j) {
      w *= 0.5;
      if (c - w > a) cuts.push_back(c - w);
      if (c + w < b) cuts.push_back(c + w);
    }
    cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double integrate(const Quadrature1D& q, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

}  // namespace gjms
