#include "phasekit/gabor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasekit/special.hpp"

namespace phasekit {

namespace {

void require_points(const Point& z, const Point& w, int d, const char* what) {
  if (static_cast<int>(z.size()) != 2 * d || static_cast<int>(w.size()) != 2 * d)
    throw std::invalid_argument(std::string(what) + ": points must have 2d coordinates");
}

int dim_of(const Point& z, const char* what) {
  if (z.empty() || z.size() % 2 != 0 || z.size() > 6)
    throw std::invalid_argument(std::string(what) + ": points must have 2d coordinates, d <= 3");
  return static_cast<int>(z.size() / 2);
}

double pos_dist2(const Point& z, const Point& w, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += (z[a] - w[a]) * (z[a] - w[a]);
  return s;
}

double freq_dist2(const Point& z, const Point& w, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += (z[d + a] - w[d + a]) * (z[d + a] - w[d + a]);
  return s;
}

}  // namespace

cplx gabor_numeric(const Operator& apply_T, const Point& z, const Point& w, const Window& g) {
  const SampledField a = apply_T(tf_shift(g.field, z));
  const SampledField b = tf_shift(g.field, w);
  require_same_grid(a.grid, b.grid, "gabor_numeric");
  return inner(a, b);
}

cplx gabor_heat_closed(double t, const ComplexDiffusion& gamma, const Point& z, const Point& w,
                       int d) {
  require_points(z, w, d, "gabor_heat_closed");
  if (!(t >= 0.0)) throw std::invalid_argument("gabor_heat_closed: t must be >= 0");
  if (!(gamma.alpha >= 0.0)) throw std::invalid_argument("gabor_heat_closed: alpha must be >= 0");
  const cplx rho = 1.0 + 2.0 * pi * gamma.gamma() * t;
  cplx cc = 0.0;
  double quad = 0.0, phase = 0.0;
  for (int a = 0; a < d; ++a) {
    const double x = z[a], xi = z[d + a], y = w[a], eta = w[d + a];
    const cplx c(xi + eta, y - x);
    cc += c * c;
    quad += xi * xi + eta * eta;
    phase += xi * x - eta * y;
  }
  const cplx expo = -0.5 * d * std::log(2.0 * rho) - pi * quad + cplx(0.0, 2.0 * pi * phase) +
                    pi * cc / (2.0 * rho);
  return std::exp(expo);
}

double heat_epsilon(double t, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("heat_epsilon: alpha must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("heat_epsilon: t must be >= 0");
  // 1 - 8 pi alpha t / (a^2 + b^2) rewritten without cancellation near 2 pi alpha t = 1.
  const double a = 1.0 + 2.0 * pi * alpha * t, b = 2.0 * pi * beta * t;
  const double m = 1.0 - 2.0 * pi * alpha * t;
  return 0.25 * pi * (1.0 - std::sqrt((m * m + b * b) / (a * a + b * b)));
}

double gabor_heat_bound(double t, const ComplexDiffusion& gamma, const Point& z, const Point& w,
                        int d) {
  require_points(z, w, d, "gabor_heat_bound");
  const double eps = heat_epsilon(t, gamma.alpha, gamma.beta);
  const double a = 1.0 + 2.0 * pi * gamma.alpha * t, b = 2.0 * pi * gamma.beta * t;
  double fr = 0.0;
  for (int k = 0; k < d; ++k) fr += z[d + k] * z[d + k] + w[d + k] * w[d + k];
  return std::pow(2.0, -0.5 * d) * std::pow(a * a + b * b, -0.25 * d) *
         std::exp(-0.5 * eps * fr - eps * pos_dist2(z, w, d));
}

cplx gabor_wave_entry(double t, int d, const Point& z, const Point& w, const PairingOrder& order) {
  require_points(z, w, d, "gabor_wave_entry");
  const auto nodes = wave_measure_nodes({d, t}, order);
  const double pre = std::pow(2.0, -0.5 * d) * std::exp(-0.5 * pi * freq_dist2(z, w, d));
  cplx s = 0.0;
  for (std::size_t i = 0; i < nodes.points.size(); ++i) {
    const auto& a = nodes.points[i];
    double ph = 0.0, g = 0.0;
    for (int k = 0; k < d; ++k) {
      const double x = z[k], xi = z[d + k], y = w[k], eta = w[d + k];
      ph += -2.0 * xi * a[k] + (xi - eta) * (x + a[k] + y);
      g += (x - y + a[k]) * (x - y + a[k]);
    }
    s += nodes.weights[i] * std::exp(-0.5 * pi * g) * std::polar(1.0, pi * ph);
  }
  return pre * s;
}

double gabor_wave_modsq(double t, int d, const Point& z, const Point& w, const PairingOrder& order) {
  if (d < 1 || d > 3) throw std::invalid_argument("gabor_wave_modsq: d must be 1, 2 or 3");
  if (!(t > 0.0)) throw std::invalid_argument("gabor_wave_modsq: t must be > 0");
  require_points(z, w, d, "gabor_wave_modsq");
  const auto nodes = wave_measure_nodes({d, t}, order);
  const std::size_t N = nodes.points.size();
  double v[3], fs[3];
  for (int k = 0; k < d; ++k) {
    v[k] = z[k] - w[k];
    fs[k] = z[d + k] + w[d + k];
  }
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto& a = nodes.points[i];
    for (std::size_t j = 0; j < N; ++j) {
      const auto& b = nodes.points[j];
      double g1 = 0.0, g2 = 0.0, ph = 0.0;
      for (int k = 0; k < d; ++k) {
        const double m = v[k] + 0.5 * (a[k] + b[k]), r = a[k] - b[k];
        g1 += m * m;
        g2 += r * r;
        ph += r * fs[k];
      }
      // The (i, j) and (j, i) terms are conjugate, so only the cosine survives.
      s += nodes.weights[i] * nodes.weights[j] * std::exp(-pi * g1 - 0.25 * pi * g2) *
           std::cos(pi * ph);
    }
  }
  return std::pow(2.0, -d) * std::exp(-pi * freq_dist2(z, w, d)) * std::max(0.0, s);
}

cplx wave_overlap_density(double t, double u, double freq_sum, int nodes) {
  if (!(t > 0.0)) throw std::invalid_argument("wave_overlap_density: t must be > 0");
  const double h = 2.0 * (t - std::abs(u));
  if (h <= 0.0) return 0.0;
  const auto q = gauss_legendre(nodes, -h, h);
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double r = q.nodes[i];
    s += q.weights[i] * 0.25 * std::exp(-0.25 * pi * r * r) * std::polar(1.0, -pi * r * freq_sum);
  }
  return s;
}

double wave_overlap_closed(double t, double u) {
  return 0.5 * erf(std::sqrt(pi) * std::max(0.0, t - std::abs(u)));
}

double wave_bound_constant(double t) {
  return wave_overlap_closed(t, 0.0) * 4.0 * t * std::exp(4.0 * pi * t * t);
}

double gabor_wave_bound(double t, int d, const Point& z, const Point& w) {
  if (d < 1 || d > 3) throw std::invalid_argument("gabor_wave_bound: d must be 1, 2 or 3");
  if (!(t > 0.0)) throw std::invalid_argument("gabor_wave_bound: t must be > 0");
  require_points(z, w, d, "gabor_wave_bound");
  const double fr = std::exp(-0.5 * pi * freq_dist2(z, w, d));
  const double r2 = pos_dist2(z, w, d), r = std::sqrt(r2);
  if (d == 1) return std::sqrt(wave_bound_constant(t)) * std::exp(-0.25 * pi * r2) * fr;
  const double e = d == 2 ? std::max(0.0, r - t) : r - t;
  return t * std::exp(-0.5 * pi * e * e) * fr;
}

double gabor_hermite_mod(const std::vector<double>& theta, const Point& z, const Point& w) {
  const int d = static_cast<int>(theta.size());
  require_points(z, w, d, "gabor_hermite_mod");
  double logv = -d * std::log(2.0);
  for (int j = 0; j < d; ++j) {
    const double th = theta[j];
    if (!(th >= 0.0)) throw std::invalid_argument("gabor_hermite_mod: theta must be >= 0");
    const double dx = z[j] - w[j], dxi = z[d + j] - w[d + j];
    const double sx = z[j] + w[j], sxi = z[d + j] + w[d + j];
    const double dm = dx * dx + dxi * dxi, sm = sx * sx + sxi * sxi;
    if (th == 0.0) {
      logv -= 0.5 * pi * dm;
    } else {
      const double e = std::exp(-th);
      logv += -0.5 * std::log(std::sinh(th)) - 0.25 * pi * (1.0 + e) * dm -
              0.25 * pi * (1.0 - e) * sm;
    }
  }
  return std::exp(logv);
}

double hermite_normalization(const std::vector<double>& theta) {
  double c = 1.0;
  for (double th : theta) {
    if (!(th >= 0.0)) throw std::invalid_argument("hermite_normalization: theta must be >= 0");
    c *= th == 0.0 ? std::sqrt(2.0) : std::sqrt(-std::expm1(-2.0 * th));
  }
  return c;
}

Point rotate_phase_space(double mu, const Point& z) {
  const int d = dim_of(z, "rotate_phase_space");
  Point out(z.size());
  const double c = std::cos(mu), s = std::sin(mu);
  for (int j = 0; j < d; ++j) {
    out[j] = c * z[j] + s * z[d + j];
    out[d + j] = -s * z[j] + c * z[d + j];
  }
  return out;
}

double gabor_complex_hermite_mod(double theta, double mu, double t, const Point& z,
                                 const Point& w) {
  if (!(theta > 0.0)) throw std::invalid_argument("gabor_complex_hermite_mod: theta must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("gabor_complex_hermite_mod: t must be > 0");
  const int d = dim_of(z, "gabor_complex_hermite_mod");
  return gabor_hermite_mod(std::vector<double>(d, theta * t), rotate_phase_space(mu * t, z), w);
}

Point GaborSlice::w_at(std::size_t i, std::size_t j) const {
  Point w = w_base;
  const int d = static_cast<int>(w.size() / 2);
  w[0] = w_pos_axis.coord(static_cast<int>(i));
  w[d] = w_freq_axis.coord(static_cast<int>(j));
  return w;
}

void evaluate_slice(GaborSlice& slice, const GaborEntry& entry, Exec exec) {
  if (slice.w_base.empty()) slice.w_base.assign(slice.fixed_z.size(), 0.0);
  dim_of(slice.fixed_z, "evaluate_slice");
  if (slice.w_base.size() != slice.fixed_z.size())
    throw std::invalid_argument("evaluate_slice: w_base dimension");
  if (slice.w_pos_axis.dim != 1 || slice.w_freq_axis.dim != 1)
    throw std::invalid_argument("evaluate_slice: slice axes must be 1-d grids");
  const std::size_t R = slice.rows(), C = slice.cols();
  slice.values.assign(R * C, cplx(0.0));
  const long total = static_cast<long>(R * C);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
  for (long k = 0; k < total; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) / C, j = static_cast<std::size_t>(k) % C;
    const cplx v = entry(slice.fixed_z, slice.w_at(i, j));
    slice.values[k] = slice.modulus_only ? cplx(std::abs(v)) : v;
  }
}

DecayFit fit_decay(const GaborSlice& slice, const std::vector<double>& exponent_grid,
                   const DecayFitOptions& opt) {
  if (exponent_grid.empty()) throw std::invalid_argument("fit_decay: empty exponent grid");
  for (double p : exponent_grid)
    if (!(p > 0.0)) throw std::invalid_argument("fit_decay: exponents must be > 0");
  if (slice.values.size() != slice.rows() * slice.cols())
    throw std::invalid_argument("fit_decay: slice shape mismatch");
  const int d = dim_of(slice.fixed_z, "fit_decay");
  const double x0 = slice.fixed_z[0], xi0 = slice.fixed_z[d];

  // Along a single direction use the row/column through the sample nearest fixed_z.
  auto nearest = [](const Grid& g, double v) {
    int k = static_cast<int>(std::lround((v - g.coord(0)) / g.spacing()));
    return std::clamp(k, 0, g.n - 1);
  };
  const std::size_t i0 = nearest(slice.w_pos_axis, x0), j0 = nearest(slice.w_freq_axis, xi0);

  std::vector<double> dist, logv;
  for (std::size_t i = 0; i < slice.rows(); ++i) {
    for (std::size_t j = 0; j < slice.cols(); ++j) {
      if (opt.direction == DecayDirection::position && j != j0) continue;
      if (opt.direction == DecayDirection::frequency && i != i0) continue;
      const double dx = slice.w_pos_axis.coord(static_cast<int>(i)) - x0;
      const double dxi = slice.w_freq_axis.coord(static_cast<int>(j)) - xi0;
      double r = 0.0;
      switch (opt.direction) {
        case DecayDirection::position: r = std::abs(dx); break;
        case DecayDirection::frequency: r = std::abs(dxi); break;
        case DecayDirection::radial: r = std::hypot(dx, dxi); break;
      }
      const double a = std::abs(slice.values[i * slice.cols() + j]);
      if (r > opt.max_dist || !(a > opt.floor)) continue;
      dist.push_back(r);
      logv.push_back(std::log(a));
    }
  }
  if (dist.size() < 3) throw std::invalid_argument("fit_decay: slice has too few nonzero samples");

  DecayFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (double p : exponent_grid) {
    Eigen::MatrixXd A(dist.size(), 2);
    Eigen::VectorXd b(dist.size());
    for (std::size_t k = 0; k < dist.size(); ++k) {
      A(k, 0) = 1.0;
      A(k, 1) = -std::pow(dist[k], p);
      b[k] = logv[k];
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    const double res = (A * x - b).cwiseAbs().maxCoeff();
    if (res < best.residual) best = {std::exp(x[0]), x[1], p, res};
  }
  return best;
}

Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double tol) {
  if (!(b > a)) throw std::invalid_argument("golden_section_max: need a < b");
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace phasekit
