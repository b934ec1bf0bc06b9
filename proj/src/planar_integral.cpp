#include "gjms/planar_integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gjms/quadrature.hpp"

namespace gjms {

namespace {

// int_0^{2pi} |y - z| dtheta over the circle |z - c| = s, with rho = |y - c|:
// 4 (s + rho) E(k), k = 2 sqrt(s rho) / (s + rho).
double ring_kernel_average(double s, double rho) {
  if (s + rho == 0.0) return 0.0;
  const double k = std::min(1.0, 2.0 * std::sqrt(s * rho) / (s + rho));
  return 4.0 * (s + rho) * std::comp_ellint_2(k);
}

std::vector<double> uniform_rings(double R, double spacing) {
  if (!(R > 0) || !(spacing > 0)) throw std::invalid_argument("planar grid: bad extents");
  std::vector<double> r;
  for (double x = spacing; x < R; x += spacing) r.push_back(x);
  r.push_back(R);
  return r;
}

void materialize_samples(PlanarField& f) {
  f.samples.clear();
  const int na = std::max(8, f.n_angle);
  for (double r : f.ring_radii)
    for (int i = 0; i < na; ++i) {
      const double th = 2.0 * M_PI * i / na;
      f.samples.push_back(
          f.eval({f.center[0] + r * std::cos(th), f.center[1] + r * std::sin(th)}));
    }
}

void validate(const PlanarField& f) {
  for (std::size_t i = 1; i < f.ring_radii.size(); ++i)
    if (!(f.ring_radii[i] > f.ring_radii[i - 1]))
      throw std::invalid_argument("planar field: ring radii must increase strictly");
  if (f.ring_radii.empty() || f.ring_radii.back() != f.grid_radius)
    throw std::invalid_argument("planar field: grid must extend to its radius");
}

// Dyadic radial refinement toward an interior kink radius.
constexpr int kKinkLevels = 40;

// Generic tail integral int_R^inf s^{-q} * ring_kernel_average(s, rho) ds,
// mapped to [0,1] by s = R/sigma; finite for q > 2.
double tail_power_integral(double q, double R, double rho) {
  const Quadrature1D gl = gauss_legendre(48);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double sigma = 0.5 * (gl.nodes[i] + 1.0);
    const double w = 0.5 * gl.weights[i];
    const double k = std::min(1.0, 2.0 * std::sqrt(R * rho * sigma) / (R + rho * sigma));
    const double integrand =
        std::pow(sigma, q - 3.0) * (1.0 + rho * sigma / R) * std::comp_ellint_2(k);
    acc += w * integrand;
  }
  return 4.0 * std::pow(R, 2.0 - q) * acc;
}

}  // namespace

PlanarField make_bubble_inverse_quintic(const BubbleParam& p, double grid_radius,
                                        double ring_spacing, int points_per_panel,
                                        int n_angle) {
  if (!(grid_radius > 10.0 * p.eps))
    throw std::invalid_argument("bubble field: grid radius must exceed 10*eps");
  PlanarField f;
  f.center = p.center;
  f.eval = [p](const Vec2& z) { return std::pow(bubble_plane(p, z), -5.0); };
  f.grid_radius = grid_radius;
  f.ring_radii = uniform_rings(grid_radius, ring_spacing);
  f.points_per_panel = points_per_panel;
  f.n_angle = n_angle;
  f.radial = true;
  // v^-5 = (2 eps)^{5/2} (eps^2 + s^2)^{-5/2}
  //      = (2 eps)^{5/2} s^-5 (1 - (5/2) eps^2 / s^2 + O(s^-4)).
  f.decay = DecayLaw{std::pow(2.0 * p.eps, 2.5), 5.0, -2.5 * p.eps * p.eps};
  materialize_samples(f);
  for (double v : f.samples)
    if (!(v > 0)) throw std::invalid_argument("bubble field: samples must be positive");
  validate(f);
  return f;
}

PlanarField make_compact_field(std::function<double(const Vec2&)> f, const Vec2& center,
                               double support_radius, double ring_spacing,
                               int points_per_panel, int n_angle) {
  PlanarField out;
  out.center = center;
  out.eval = std::move(f);
  out.grid_radius = support_radius;
  out.ring_radii = uniform_rings(support_radius, ring_spacing);
  out.points_per_panel = points_per_panel;
  out.n_angle = n_angle;
  out.radial = false;
  materialize_samples(out);
  validate(out);
  return out;
}

KernelTransformResult kernel_transform(const PlanarField& f, const Vec2& y, double R) {
  validate(f);
  if (!(R <= f.grid_radius))
    throw std::invalid_argument("kernel_transform: truncation exceeds the field grid");

  const double dx = y[0] - f.center[0];
  const double dy = y[1] - f.center[1];
  const double rho = std::sqrt(dx * dx + dy * dy);
  const double theta_y = std::atan2(dy, dx);

  // Radial panels: the field's rings, split and refined dyadically at rho so
  // the kernel kink never meets a Gauss node.
  std::vector<double> cuts;
  for (double r : f.ring_radii)
    if (r < R) cuts.push_back(r);
  if (rho > 0.0 && rho < R) {
    double w = (f.ring_radii.size() > 1) ? f.ring_radii[0] : R;
    cuts.push_back(rho);
    for (int j = 0; j < kKinkLevels; ++j) {
      w *= 0.5;
      if (rho - w > 0.0) cuts.push_back(rho - w);
      if (rho + w < R) cuts.push_back(rho + w);
    }
  }
  const Quadrature1D radial = panel_gauss(0.0, R, cuts, f.points_per_panel);

  KernelTransformResult out;
  if (f.radial) {
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double s = radial.nodes[i];
      const double fv = f.eval({f.center[0] + s, f.center[1]});
      out.disk_part += radial.weights[i] * s * fv * ring_kernel_average(s, rho);
    }
  } else {
    const Quadrature1D ang =
        panel_gauss(theta_y, theta_y + 2.0 * M_PI, {theta_y + M_PI}, f.n_angle);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double s = radial.nodes[i];
      double ring = 0.0;
      for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
        const double th = ang.nodes[j];
        const Vec2 z{f.center[0] + s * std::cos(th), f.center[1] + s * std::sin(th)};
        const double r2 = s * s + rho * rho - 2.0 * s * rho * std::cos(th - theta_y);
        ring += ang.weights[j] * std::sqrt(std::max(0.0, r2)) * f.eval(z);
      }
      out.disk_part += radial.weights[i] * s * ring;
    }
  }

  if (f.decay) {
    if (!(f.decay->power > 3.0))
      throw std::invalid_argument("kernel_transform: tail requires decay power > 3");
    out.tail_correction = f.decay->amplitude * tail_power_integral(f.decay->power - 1.0, R, rho);
    out.tail_estimate = std::abs(f.decay->second_order) * f.decay->amplitude *
                        tail_power_integral(f.decay->power + 1.0, R, rho);
  }
  out.value = out.disk_part + out.tail_correction;
  return out;
}

ResidualReport integral_residual(const BubbleParam& p, const std::vector<Vec2>& pts,
                                 double r_factor, double ring_spacing_over_eps,
                                 int points_per_panel) {
  const double R = r_factor * p.eps;
  const PlanarField f =
      make_bubble_inverse_quintic(p, R, ring_spacing_over_eps * p.eps, points_per_panel);
  ResidualReport rep;
  rep.points = pts;
  rep.residual.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double k = kernel_transform(f, pts[i], R).value;
    const double v = bubble_plane(p, pts[i]);
    rep.residual[i] = std::abs(3.0 / (16.0 * M_PI) * k - v) / v;
    rep.max_residual = std::max(rep.max_residual, rep.residual[i]);
  }
  return rep;
}

namespace {

// Polar quadrature about an arbitrary basepoint x, covering the field's grid
// disk.  `inner_scale` adds dyadic refinement toward s = 0 (for kernels with
// a boundary layer there); 0 disables it.
template <typename Kernel>
double polar_about_point(const PlanarField& f, const Vec2& x, double inner_scale,
                         Kernel&& kernel) {
  const double off = std::hypot(x[0] - f.center[0], x[1] - f.center[1]);
  const double s_max = off + f.grid_radius;
  const double spacing =
      (f.ring_radii.size() > 1) ? f.ring_radii[0] : f.grid_radius;

  std::vector<double> cuts;
  for (double c = spacing; c < s_max; c += spacing) cuts.push_back(c);
  if (inner_scale > 0.0) {
    // Geometric panels through the layer: dyadic below its width, and again
    // between the width and the ring spacing (the kernel still varies over
    // decades there).
    for (double c = std::min(inner_scale, spacing); c > 1e-3 * inner_scale; c *= 0.5)
      cuts.push_back(c);
    for (double c = 2.0 * inner_scale; c < spacing; c *= 2.0) cuts.push_back(c);
  }
  const Quadrature1D radial = panel_gauss(0.0, s_max, cuts, f.points_per_panel);

  const int na = 2 * f.n_angle;
  double acc = 0.0;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double s = radial.nodes[i];
    double ring = 0.0;
    for (int j = 0; j < na; ++j) {
      const double th = 2.0 * M_PI * j / na;
      const Vec2 z{x[0] + s * std::cos(th), x[1] + s * std::sin(th)};
      const double dzx = z[0] - f.center[0], dzy = z[1] - f.center[1];
      if (dzx * dzx + dzy * dzy > f.grid_radius * f.grid_radius) continue;
      ring += f.eval(z);
    }
    ring *= 2.0 * M_PI / na;
    acc += radial.weights[i] * s * kernel(s) * ring;
  }
  return acc;
}

}  // namespace

double halfspace_extend(const PlanarField& f, const Vec2& x, double t) {
  if (t < 0) throw std::invalid_argument("halfspace_extend: t must be >= 0");
  return polar_about_point(f, x, 0.0, [t](double s) { return std::sqrt(t * t + s * s); }) /
         (4.0 * M_PI);
}

double halfspace_laplacian(const PlanarField& f, const Vec2& x, double t) {
  if (t < 0) throw std::invalid_argument("halfspace_laplacian: t must be >= 0");
  // Lap sqrt(t^2 + |x-y|^2) = 2 / sqrt(t^2 + |x-y|^2) in R^3; the integrand
  // develops a boundary layer of width t at s = 0, hence the inner refinement.
  return polar_about_point(f, x, t, [t](double s) {
           return 2.0 / std::sqrt(t * t + s * s);
         }) /
         (4.0 * M_PI);
}

double halfspace_dt_laplacian_at_zero(const PlanarField& f, const Vec2& x, double h0) {
  // Lap v^(x, t) = Lap v^(x, 0) - f(x) t + C t^2 ln t + D t^2 + ...
  // Three one-sided slopes fit the basis {1, h ln h, h}.
  const double l0 = halfspace_laplacian(f, x, 0.0);
  double h[3] = {h0, 0.5 * h0, 0.25 * h0};
  double g[3];
  for (int i = 0; i < 3; ++i)
    g[i] = (halfspace_laplacian(f, x, h[i]) - l0) / h[i];

  // Solve the 3x3 system g_i = a + b h_i ln h_i + c h_i by elimination.
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = 1.0;
    m[i][1] = h[i] * std::log(h[i]);
    m[i][2] = h[i];
    m[i][3] = g[i];
  }
  for (int col = 0; col < 2; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[piv], m[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double fac = m[r][col] / m[col][col];
      for (int c2 = col; c2 < 4; ++c2) m[r][c2] -= fac * m[col][c2];
    }
  }
  const double c = m[2][3] / m[2][2];
  const double b = (m[1][3] - m[1][2] * c) / m[1][1];
  return m[0][3] - m[0][1] * b - m[0][2] * c;
}

AsymptoticFit asymptotic_fit(const PlanarField& f, double prefactor, double r0, int n_rings,
                             double ring_factor, int n_angles) {
  if (n_rings < 3) throw std::invalid_argument("asymptotic_fit: need at least 3 rings");
  AsymptoticFit fit;
  fit.ring_radii.resize(n_rings);
  std::vector<std::vector<double>> w(n_rings, std::vector<double>(n_angles));
  std::vector<double> mean(n_rings), c1(n_rings), s1(n_rings);

  for (int j = 0; j < n_rings; ++j) {
    const double r = r0 * std::pow(ring_factor, j);
    fit.ring_radii[j] = r;
    double acc = 0, accc = 0, accs = 0;
    for (int i = 0; i < n_angles; ++i) {
      const double th = 2.0 * M_PI * i / n_angles;
      const Vec2 x{f.center[0] + r * std::cos(th), f.center[1] + r * std::sin(th)};
      w[j][i] = prefactor * kernel_transform(f, x, f.grid_radius).value;
      acc += w[j][i];
      accc += w[j][i] * std::cos(th);
      accs += w[j][i] * std::sin(th);
    }
    mean[j] = acc / n_angles / r;              // -> alpha + O(1/r^2)
    c1[j] = 2.0 * accc / n_angles;             // -> b1 + O(1/r)
    s1[j] = 2.0 * accs / n_angles;             // -> b2 + O(1/r)
  }

  // Extrapolate over the three outermost rings.
  auto solve3 = [](const double r[3], const double v[3], const double powers[3]) {
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 3; ++c) m[i][c] = std::pow(r[i], -powers[c]);
      m[i][3] = v[i];
    }
    for (int col = 0; col < 2; ++col) {
      int piv = col;
      for (int rr = col + 1; rr < 3; ++rr)
        if (std::abs(m[rr][col]) > std::abs(m[piv][col])) piv = rr;
      std::swap(m[piv], m[col]);
      for (int rr = col + 1; rr < 3; ++rr) {
        const double fac = m[rr][col] / m[col][col];
        for (int c = col; c < 4; ++c) m[rr][c] -= fac * m[col][c];
      }
    }
    const double x2 = m[2][3] / m[2][2];
    const double x1 = (m[1][3] - m[1][2] * x2) / m[1][1];
    return (m[0][3] - m[0][1] * x1 - m[0][2] * x2) / m[0][0];
  };

  const int j0 = n_rings - 3;
  const double rr[3] = {fit.ring_radii[j0], fit.ring_radii[j0 + 1], fit.ring_radii[j0 + 2]};
  const double alpha_powers[3] = {0.0, 2.0, 3.0};
  const double b_powers[3] = {0.0, 1.0, 2.0};
  const double mv[3] = {mean[j0], mean[j0 + 1], mean[j0 + 2]};
  const double cv[3] = {c1[j0], c1[j0 + 1], c1[j0 + 2]};
  const double sv[3] = {s1[j0], s1[j0 + 1], s1[j0 + 2]};
  fit.alpha = solve3(rr, mv, alpha_powers);
  fit.b1 = solve3(rr, cv, b_powers);
  fit.b2 = solve3(rr, sv, b_powers);

  // Remainder per ring and its log-log slope.
  fit.ring_remainder.resize(n_rings);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int j = 0; j < n_rings; ++j) {
    double worst = 0;
    for (int i = 0; i < n_angles; ++i) {
      const double th = 2.0 * M_PI * i / n_angles;
      const double model =
          fit.alpha * fit.ring_radii[j] + fit.b1 * std::cos(th) + fit.b2 * std::sin(th);
      worst = std::max(worst, std::abs(w[j][i] - model));
    }
    fit.ring_remainder[j] = worst;
    const double lx = std::log(fit.ring_radii[j]);
    const double ly = std::log(std::max(worst, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  fit.remainder_slope = (n_rings * sxy - sx * sy) / (n_rings * sxx - sx * sx);
  return fit;
}

double planar_mass(const PlanarField& f) {
  return polar_about_point(f, f.center, 0.0, [](double) { return 1.0; });
}

Vec2 planar_moment(const PlanarField& f) {
  // First moments of f about the origin of coordinates (not the center).
  const double spacing = (f.ring_radii.size() > 1) ? f.ring_radii[0] : f.grid_radius;
  std::vector<double> cuts;
  for (double c = spacing; c < f.grid_radius; c += spacing) cuts.push_back(c);
  const Quadrature1D radial = panel_gauss(0.0, f.grid_radius, cuts, f.points_per_panel);
  const int na = 2 * f.n_angle;
  Vec2 acc{0.0, 0.0};
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double s = radial.nodes[i];
    for (int j = 0; j < na; ++j) {
      const double th = 2.0 * M_PI * j / na;
      const Vec2 z{f.center[0] + s * std::cos(th), f.center[1] + s * std::sin(th)};
      const double fv = f.eval(z) * radial.weights[i] * s * (2.0 * M_PI / na);
      acc[0] += fv * z[0];
      acc[1] += fv * z[1];
    }
  }
  return acc;
}

}  // namespace gjms
