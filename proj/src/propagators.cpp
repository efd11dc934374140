#include "phasekit/propagators.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "phasekit/special.hpp"

namespace phasekit {

void ComplexDiffusion::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("diffusion: alpha must be >= 0");
  if (alpha == 0.0 && beta == 0.0) throw std::invalid_argument("diffusion: gamma must be nonzero");
}

namespace {

double sq_norm(const Point& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

}  // namespace

cplx heat_symbol(double t, const ComplexDiffusion& gamma, const Point& xi) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_symbol: t must be > 0");
  gamma.validate();
  return std::exp(-4.0 * pi * pi * gamma.gamma() * t * sq_norm(xi));
}

double wave_symbol(WaveKind kind, double t, const Point& xi) {
  const double r = std::sqrt(sq_norm(xi));
  if (kind == WaveKind::cosine) return std::cos(2.0 * pi * r * t);
  const double a = 2.0 * pi * r;
  if (a * std::abs(t) < 1e-8) return t * (1.0 - (a * t) * (a * t) / 6.0);
  return std::sin(a * t) / a;
}

SampledField apply_multiplier(const Symbol& symbol, const SampledField& f) {
  SampledField fh = dft(f, Direction::forward);
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    cplx s = symbol(fh.grid.point(i));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::invalid_argument("apply_multiplier: non-finite symbol value");
    fh.values[i] *= s;
  }
  return dft(fh, Direction::inverse);
}

cplx heat_kernel(double t, const ComplexDiffusion& gamma, const Point& x) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be > 0");
  gamma.validate();
  const cplx c = 4.0 * pi * gamma.gamma() * t;
  const double d = static_cast<double>(x.size());
  return std::exp(-0.5 * d * std::log(c) - pi * sq_norm(x) / c);
}

MeasureNodes wave_measure_nodes(const WaveMeasure& m, const PairingOrder& order) {
  if (m.dim < 1 || m.dim > 3) throw std::invalid_argument("wave measure: d must be 1, 2 or 3");
  if (!(m.t > 0.0)) throw std::invalid_argument("wave measure: t must be > 0");
  MeasureNodes out;
  out.dim = m.dim;
  const double t = m.t;
  const int na = order.angular;
  if (m.dim == 1) {
    auto q = gauss_legendre(order.radial, -t, t);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      out.points.push_back({q.nodes[i], 0.0, 0.0});
      out.weights.push_back(0.5 * q.weights[i]);
    }
  } else if (m.dim == 2) {
    // r = t sin(psi) turns (2 pi)^{-1}(t^2-r^2)^{-1/2} r dr dphi into (2 pi)^{-1} t sin(psi).
    auto q = gauss_legendre(order.radial, 0.0, 0.5 * pi);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double r = t * std::sin(q.nodes[i]);
      const double w = t * std::sin(q.nodes[i]) * q.weights[i] / (2.0 * pi) * (2.0 * pi / na);
      for (int j = 0; j < na; ++j) {
        const double ph = 2.0 * pi * j / na;
        out.points.push_back({r * std::cos(ph), r * std::sin(ph), 0.0});
        out.weights.push_back(w);
      }
    }
  } else {
    // (4 pi t)^{-1} d sigma on the sphere of radius t, with u = cos(theta).
    auto q = gauss_legendre(order.radial, -1.0, 1.0);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double u = q.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double w = t / (4.0 * pi) * q.weights[i] * (2.0 * pi / na);
      for (int j = 0; j < na; ++j) {
        const double ph = 2.0 * pi * j / na;
        out.points.push_back({t * s * std::cos(ph), t * s * std::sin(ph), t * u});
        out.weights.push_back(w);
      }
    }
  }
  return out;
}

cplx wave_measure_pairing_complex(const WaveMeasure& m,
                                  const std::function<cplx(const Point&)>& test,
                                  const PairingOrder& order) {
  auto nodes = wave_measure_nodes(m, order);
  cplx s = 0.0;
  Point y(m.dim);
  for (std::size_t i = 0; i < nodes.points.size(); ++i) {
    for (int a = 0; a < m.dim; ++a) y[a] = nodes.points[i][a];
    s += nodes.weights[i] * test(y);
  }
  return s;
}

double wave_measure_pairing(const WaveMeasure& m, const std::function<double(const Point&)>& test,
                            const PairingOrder& order) {
  return wave_measure_pairing_complex(m, [&](const Point& y) { return cplx(test(y)); }, order)
      .real();
}

namespace {

std::vector<double> axis_thetas(const HermiteParams& p, int dim) {
  std::vector<double> th = p.theta;
  if (th.size() == 1 && dim > 1) th.assign(dim, p.theta[0]);
  if (static_cast<int>(th.size()) != dim)
    throw std::invalid_argument("hermite: theta must have 1 or d entries");
  for (double v : th)
    if (!(v >= 0.0)) throw std::invalid_argument("hermite: theta must be >= 0");
  return th;
}

// One-axis operator on line samples: A = M * D with D the DFT matrix onto the
// dual axis and M the quadrature of the Mehler-type oscillatory integral.
Eigen::MatrixXcd hermite_axis_matrix(const Grid& g, double theta) {
  const int n = g.n;
  const Grid gd = g.dual();
  const double c = std::cosh(theta), th = std::tanh(theta);
  Eigen::MatrixXcd D(n, n), M(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      D(m, k) = g.spacing() * std::polar(1.0, -2.0 * pi * g.coord(k) * gd.coord(m));
  const double pre = std::pow(c, -0.5) * gd.spacing();
  for (int k = 0; k < n; ++k) {
    const double x = g.coord(k);
    for (int m = 0; m < n; ++m) {
      const double eta = gd.coord(m);
      M(k, m) = pre * std::exp(-pi * th * (x * x + eta * eta)) *
                std::polar(1.0, 2.0 * pi * x * eta / c);
    }
  }
  return M * D;
}

// Applies a 1-d operator along `axis` to every grid line.
SampledField apply_along_axis(const SampledField& f, int axis, const Eigen::MatrixXcd& A,
                              Exec exec) {
  const Grid& g = f.grid;
  SampledField out(g, f.frequency_domain);
  const std::size_t N = g.size(), n = g.n;
  std::size_t stride = 1;
  for (int a = g.dim - 1; a > axis; --a) stride *= n;
  const std::size_t lines = N / n;
#pragma omp parallel if (exec == Exec::parallel)
  {
    Eigen::VectorXcd in(n), res(n);
#pragma omp for schedule(static)
    for (std::size_t l = 0; l < lines; ++l) {
      const std::size_t outer = l / stride, inner = l % stride;
      const std::size_t base = outer * stride * n + inner;
      for (std::size_t k = 0; k < n; ++k) in[k] = f.values[base + k * stride];
      res.noalias() = A * in;
      for (std::size_t k = 0; k < n; ++k) out.values[base + k * stride] = res[k];
    }
  }
  return out;
}

SampledField parity(const SampledField& f) {
  const Grid& g = f.grid;
  SampledField out(g, f.frequency_domain);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto k = g.unravel(i);
    for (int a = 0; a < g.dim; ++a) k[a] = (g.n - k[a]) % g.n;
    out.values[i] = f.values[g.ravel(k)];
  }
  return out;
}

// F_r = e^{i d r/2} A(a) B(s) A(a), a = -tan(r/2), s = sin r, where A(a) is
// multiplication by e^{i pi a |x|^2} and B(s) the multiplier e^{-i pi s |xi|^2}.
SampledField frft_step(const SampledField& f, double r) {
  const Grid& g = f.grid;
  const double a = -std::tan(0.5 * r), s = std::sin(r);
  SampledField u = f;
  auto chirp = [&](SampledField& v) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      double x2 = 0.0;
      for (double c : g.point(i)) x2 += c * c;
      v.values[i] *= std::polar(1.0, pi * a * x2);
    }
  };
  chirp(u);
  u = apply_multiplier([&](const Point& xi) { return std::polar(1.0, -pi * s * sq_norm(xi)); }, u);
  chirp(u);
  const cplx ph = std::polar(1.0, 0.5 * g.dim * r);
  for (auto& v : u.values) v *= ph;
  return u;
}

}  // namespace

SampledField hermite_apply(const HermiteParams& params, const SampledField& f, Exec exec) {
  const auto th = axis_thetas(params, f.grid.dim);
  SampledField u = f;
  for (int a = 0; a < f.grid.dim; ++a) {
    if (th[a] == 0.0) continue;
    u = apply_along_axis(u, a, hermite_axis_matrix(f.grid, th[a]), exec);
  }
  return u;
}

SampledField frft_apply(double mu, const SampledField& f) {
  double r = std::remainder(mu, 2.0 * pi);
  if (std::abs(std::sin(r)) < 1e-6) return std::abs(r) < 0.5 * pi ? f : parity(f);
  SampledField u = f;
  if (std::abs(r) > 0.5 * pi) {
    u = parity(u);
    r -= std::copysign(pi, r);
  }
  const int steps = std::abs(r) > 0.25 * pi ? 2 : 1;
  for (int i = 0; i < steps; ++i) u = frft_step(u, r / steps);
  return u;
}

SampledField complex_hermite_apply(const HermiteParams& params, const SampledField& f, Exec exec) {
  if (params.theta.size() != 1) throw std::invalid_argument("complex hermite: theta must be scalar");
  if (!(params.theta[0] > 0.0)) throw std::invalid_argument("complex hermite: theta must be > 0");
  if (!(params.t >= 0.0)) throw std::invalid_argument("complex hermite: t must be >= 0");
  if (params.t == 0.0) return f;
  HermiteParams h{{params.theta[0] * params.t}, 0.0, 1.0};
  return hermite_apply(h, frft_apply(params.mu * params.t, f), exec);
}

}  // namespace phasekit
