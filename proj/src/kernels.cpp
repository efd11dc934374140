#include "phasekit/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "phasekit/gabor.hpp"
#include "phasekit/special.hpp"
#include "phasekit/tf.hpp"

namespace phasekit {

namespace {

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// |xi_perp| with xi_perp := xi when s = 0.
double perp_norm(const Point& s, const Point& xi) {
  const double s2 = dot(s, s), x2 = dot(xi, xi);
  if (s2 == 0.0) return std::sqrt(x2);
  const double p = dot(s, xi);
  return std::sqrt(std::max(0.0, x2 - p * p / s2));
}

int on_grid_index(const Grid& g, double v, const char* what) {
  const double q = (v - g.coord(0)) / g.spacing();
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)) || r < 0 || r >= g.n)
    throw std::invalid_argument(std::string(what) + ": argument not on the sampled grid");
  return static_cast<int>(r);
}

std::size_t grid_index(const Grid& g, const Point& p, const char* what) {
  std::array<int, 3> k{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) k[a] = on_grid_index(g, p[a], what);
  return g.ravel(k);
}

double edge_ratio(const SampledField& f) {
  const Grid& g = f.grid;
  double edge = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(f.values[i]);
    peak = std::max(peak, a);
    const auto k = g.unravel(i);
    for (int d = 0; d < g.dim; ++d)
      if (k[d] == 0 || k[d] == g.n - 1) edge = std::max(edge, a);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

double sinc_term(double h, double xi) {
  // sin(4 pi h xi)/(4 pi xi) with the xi -> 0 limit h.
  const double a = 4.0 * pi * xi;
  if (std::abs(a * h) < 1e-6) return h * (1.0 - (a * h) * (a * h) / 6.0);
  return std::sin(a * h) / a;
}

}  // namespace

double ReducedKernel::eval(const Point& s, const Point& xi) const {
  if (static_cast<int>(s.size()) != dim || static_cast<int>(xi.size()) != dim)
    throw std::invalid_argument("kernel eval: s and xi must have d coordinates");
  switch (form) {
    case KernelForm::sampled:
      return samples.at(grid_index(samples.pos, s, "kernel eval"),
                        grid_index(samples.freq, xi, "kernel eval"))
          .real();
    case KernelForm::heat: return kernel_heat(t, gamma, s, xi);
    case KernelForm::wave_d1:
    case KernelForm::wave_d2:
    case KernelForm::wave_d3: return kernel_wave(dim, t, s, xi);
    case KernelForm::hermite:
    case KernelForm::complex_hermite:
      throw std::invalid_argument("kernel eval: hermite kernels are evaluated with eval_full");
    case KernelForm::cosine_d1_distributional:
      throw std::invalid_argument("kernel eval: the cosine kernel is distributional");
  }
  return 0.0;
}

double ReducedKernel::eval_full(const Point& z, const Point& w) const {
  if (form == KernelForm::hermite) return kernel_hermite(theta, z, w);
  if (form == KernelForm::complex_hermite) return kernel_complex_hermite(theta.at(0), mu, t, z, w);
  throw std::invalid_argument("kernel eval_full: only hermite forms carry a full kernel");
}

ReducedKernel kernel_from_symbol(const SampledField& symbol, const Grid& grid,
                                 const SymbolKernelOptions& opt) {
  if (!(symbol.grid == grid.dual()))
    throw std::invalid_argument("kernel_from_symbol: symbol must be sampled on the dual grid");
  const double er = edge_ratio(symbol);
  if (er > opt.edge_tol) {
    std::ostringstream os;
    os << "kernel_from_symbol: under-resolved symbol, edge/peak = " << er << " > " << opt.edge_tol;
    throw std::invalid_argument(os.str());
  }
  ReducedKernel k;
  k.form = KernelForm::sampled;
  k.dim = grid.dim;
  k.equation = "kappa = W(sigma)(xi, -s) = W(E)(s, xi)";
  if (opt.route == SymbolRoute::kernel_wigner) {
    SampledField sym = symbol;
    sym.frequency_domain = true;
    const SampledField E = dft(sym, Direction::inverse);
    const double eE = edge_ratio(E);
    if (eE > opt.edge_tol) {
      std::ostringstream os;
      os << "kernel_from_symbol: kernel wraps the grid, edge/peak = " << eE << " > " << opt.edge_tol;
      throw std::invalid_argument(os.str());
    }
    k.samples = cross_wigner(E, E);
    return k;
  }
  // W(sigma) lives on (dual grid) x (dual grid).half_dual(); flip the second argument.
  SampledField sym(symbol.grid, false);
  sym.values = symbol.values;
  const PhaseSpaceField W = cross_wigner(sym, sym);
  const Grid sg = W.freq, xg = W.pos;
  k.samples = PhaseSpaceField(sg, xg);
  for (std::size_t is = 0; is < sg.size(); ++is) {
    auto ks = sg.unravel(is);
    // -s_i is index n - i; the i = 0 sample (s = -L/4) maps to the unrepresented
    // +L/4 and takes the i = 0 column, which is negligible on resolved grids.
    for (int a = 0; a < sg.dim; ++a) ks[a] = (sg.n - ks[a]) % sg.n;
    const std::size_t iq = sg.ravel(ks);
    for (std::size_t m = 0; m < xg.size(); ++m) k.samples.at(is, m) = W.at(m, iq);
  }
  return k;
}

double heat_kernel_shear(double t, const ComplexDiffusion& g) {
  return g.beta / (4.0 * pi * t * std::norm(g.gamma()));
}

double kernel_heat(double t, const ComplexDiffusion& g, const Point& s, const Point& xi) {
  if (!(g.alpha > 0.0)) throw std::invalid_argument("kernel_heat: alpha must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_heat: t must be > 0");
  if (s.size() != xi.size()) throw std::invalid_argument("kernel_heat: dimension mismatch");
  const double d = static_cast<double>(s.size());
  const double m2 = std::norm(g.gamma());
  const double a = g.alpha / (2.0 * t * m2), b = 8.0 * pi * pi * t * m2 / g.alpha;
  const double k = heat_kernel_shear(t, g);
  double e = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = xi[i] - k * s[i];
    e += a * s[i] * s[i] + b * r * r;
  }
  return std::pow(8.0 * pi * t * m2 / g.alpha, 0.5 * d) * std::exp(-e);
}

ReducedKernel make_heat_kernel(double t, const ComplexDiffusion& g, int d) {
  if (!(g.alpha > 0.0)) throw std::invalid_argument("kernel_heat: alpha must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_heat: t must be > 0");
  ReducedKernel k;
  k.form = KernelForm::heat;
  k.dim = d;
  k.t = t;
  k.gamma = g;
  // The closed form is W(e^{-|x|^2/(4 gamma t)}); E carries (4 pi gamma t)^{-d/2}.
  k.normalization = std::pow(4.0 * pi * t * std::abs(g.gamma()), -d);
  k.equation = "kappa_t = W(E(t,.))(s, xi), Gaussian closed form";
  return k;
}

double kernel_wave(int d, double t, const Point& s, const Point& xi) {
  if (d < 1 || d > 3) throw std::invalid_argument("kernel_wave: d must be 1, 2 or 3");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_wave: t must be > 0");
  if (static_cast<int>(s.size()) != d || static_cast<int>(xi.size()) != d)
    throw std::invalid_argument("kernel_wave: s and xi must have d coordinates");
  const double sn = std::sqrt(dot(s, s));
  if (d == 1) return sn <= t ? sinc_term(t - sn, xi[0]) : 0.0;
  if (sn >= 2.0 * t) return 0.0;
  const double r = std::sqrt(t * t - 0.25 * sn * sn);
  const double j = bessel_j0(4.0 * pi * r * perp_norm(s, xi));
  return d == 2 ? j / (2.0 * pi) : r / (8.0 * pi * t * t) * j;
}

double kernel_wave_d3_sphere(double t, const Point& s, const Point& xi) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_wave: t must be > 0");
  if (s.size() != 3 || xi.size() != 3) throw std::invalid_argument("kernel_wave: d = 3 only");
  const double sn = std::sqrt(dot(s, s));
  if (sn >= t || sn == 0.0) return 0.0;
  return bessel_j0(4.0 * pi * std::sqrt(t * t - sn * sn) * perp_norm(s, xi)) / (2.0 * pi * sn);
}

ReducedKernel make_wave_kernel(int d, double t) {
  if (d < 1 || d > 3) throw std::invalid_argument("kernel_wave: d must be 1, 2 or 3");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_wave: t must be > 0");
  ReducedKernel k;
  k.form = d == 1 ? KernelForm::wave_d1 : d == 2 ? KernelForm::wave_d2 : KernelForm::wave_d3;
  k.dim = d;
  k.t = t;
  k.equation = d == 1 ? "kappa_t^(1)" : d == 2 ? "kappa_t^(2)" : "kappa_t^(3)";
  return k;
}

double wave_kernel_marginal(int d, double t, double xn, WaveKernelVariant variant, int nodes) {
  if (d < 1 || d > 3) throw std::invalid_argument("wave_kernel_marginal: d must be 1, 2 or 3");
  if (variant == WaveKernelVariant::sphere_d3 && d != 3)
    throw std::invalid_argument("wave_kernel_marginal: sphere variant is d = 3");
  if (d == 1) {
    // Even in s with a kink at s = 0: integrate [0, t] and double.
    const auto q = gauss_legendre(nodes, 0.0, t);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      s += 2.0 * q.weights[i] * kernel_wave(1, t, {q.nodes[i]}, {xn});
    return s;
  }
  // Polar angle phi between s and xi: |xi_perp| = |xi| sin(phi).
  const auto qa = gauss_legendre(nodes / 4 + 16, 0.0, pi);
  if (variant == WaveKernelVariant::sphere_d3) {
    // rho = t sin(psi) keeps the integrand smooth at rho = t.
    const auto q = gauss_legendre(nodes, 0.0, 0.5 * pi);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double rho = t * std::sin(q.nodes[i]), jac = t * std::cos(q.nodes[i]);
      const double r = t * std::cos(q.nodes[i]);
      double ang = 0.0;
      for (std::size_t k = 0; k < qa.nodes.size(); ++k)
        ang += qa.weights[k] * 2.0 * pi * std::sin(qa.nodes[k]) *
               bessel_j0(4.0 * pi * r * xn * std::sin(qa.nodes[k]));
      s += q.weights[i] * jac * rho * rho * ang / (2.0 * pi * rho);
    }
    return s;
  }
  // rho = 2t sin(psi): r(rho) = t cos(psi).
  const auto q = gauss_legendre(nodes, 0.0, 0.5 * pi);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double rho = 2.0 * t * std::sin(q.nodes[i]), jac = 2.0 * t * std::cos(q.nodes[i]);
    const double r = t * std::cos(q.nodes[i]);
    const double pre = d == 2 ? 1.0 / (2.0 * pi) : r / (8.0 * pi * t * t);
    double ang = 0.0;
    for (std::size_t k = 0; k < qa.nodes.size(); ++k) {
      const double j = bessel_j0(4.0 * pi * r * xn * std::sin(qa.nodes[k]));
      // d = 2: phi over [0, 2 pi) is twice [0, pi); d = 3: sphere element 2 pi sin(phi).
      ang += qa.weights[k] * (d == 2 ? 2.0 : 2.0 * pi * std::sin(qa.nodes[k])) * j;
    }
    s += q.weights[i] * jac * std::pow(rho, d - 1) * pre * ang;
  }
  return s;
}

double kernel_hermite(const std::vector<double>& theta, const Point& z, const Point& w) {
  const int d = static_cast<int>(theta.size());
  if (static_cast<int>(z.size()) != 2 * d || static_cast<int>(w.size()) != 2 * d)
    throw std::invalid_argument("kernel_hermite: points must have 2d coordinates");
  double logv = 0.0;
  for (int j = 0; j < d; ++j) {
    const double th = theta[j];
    if (th < 0.0) throw std::invalid_argument("kernel_hermite: theta must be >= 0");
    if (th == 0.0)
      throw std::invalid_argument("kernel_hermite: identity axes carry a delta factor");
    const double x = z[j], xi = z[d + j], y = w[j], eta = w[d + j];
    logv += -std::log(std::sinh(th)) -
            2.0 * pi / std::tanh(th) * (x * x + xi * xi + y * y + eta * eta) +
            4.0 * pi / std::sinh(th) * (x * y + xi * eta);
  }
  return std::exp(logv);
}

ReducedKernel make_hermite_kernel(const std::vector<double>& theta) {
  ReducedKernel k;
  k.form = KernelForm::hermite;
  k.dim = static_cast<int>(theta.size());
  k.theta = theta;
  int active = 0;
  for (double th : theta) {
    if (th < 0.0) throw std::invalid_argument("kernel_hermite: theta must be >= 0");
    if (th > 0.0) ++active;
  }
  // Each active axis of the closed form tends to 2^{-1} delta as theta -> 0.
  k.normalization = std::pow(2.0, active);
  k.equation = "k_W of R_Theta";
  return k;
}

double kernel_complex_hermite(double theta, double mu, double t, const Point& z, const Point& w) {
  if (!(theta > 0.0)) throw std::invalid_argument("kernel_complex_hermite: theta must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_complex_hermite: t must be > 0");
  if (z.size() != w.size() || z.empty() || z.size() % 2)
    throw std::invalid_argument("kernel_complex_hermite: points must have 2d coordinates");
  const double d = static_cast<double>(z.size() / 2), th = theta * t;
  const Point sw = rotate_phase_space(mu * t, w);
  return std::exp(-d * std::log(std::sinh(th)) - 2.0 * pi / std::tanh(th) * (dot(z, z) + dot(w, w)) +
                  4.0 * pi / std::sinh(th) * dot(z, sw));
}

ReducedKernel make_complex_hermite_kernel(double theta, double mu, double t, int d) {
  if (!(theta > 0.0)) throw std::invalid_argument("kernel_complex_hermite: theta must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("kernel_complex_hermite: t must be > 0");
  ReducedKernel k;
  k.form = KernelForm::complex_hermite;
  k.dim = d;
  k.theta = {theta};
  k.mu = mu;
  k.t = t;
  k.normalization = std::pow(2.0, d);
  k.equation = "k_W of R_{theta t} F_{mu t}";
  return k;
}

namespace {

void require_kernel_grids(const ReducedKernel& k, const PhaseSpaceField& W) {
  if (k.dim != W.pos.dim || W.freq.dim != W.pos.dim)
    throw std::invalid_argument("apply_kernel: kernel and field dimensions differ");
  if (k.form == KernelForm::cosine_d1_distributional)
    throw std::invalid_argument("apply_kernel: distributional kernels have no sampled action");
  if (k.form == KernelForm::sampled) {
    if (std::abs(k.samples.pos.spacing() - W.pos.spacing()) > 1e-12 * W.pos.spacing())
      throw std::invalid_argument("apply_kernel: sampled kernel s-spacing differs from the field");
    if (!(k.samples.freq == W.freq))
      throw std::invalid_argument("apply_kernel: sampled kernel frequency grid differs from the field");
  }
}

// kappa at lattice offset j (in grid steps) and frequency index m.
double kernel_at_offset(const ReducedKernel& k, const PhaseSpaceField& W, const std::array<int, 3>& j,
                        std::size_t m, const Point& xi) {
  if (k.form == KernelForm::sampled) {
    const Grid& sg = k.samples.pos;
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < sg.dim; ++a) {
      idx[a] = j[a] + sg.n / 2;
      if (idx[a] < 0 || idx[a] >= sg.n) return 0.0;
    }
    return k.samples.at(sg.ravel(idx), m).real();
  }
  Point s(k.dim);
  for (int a = 0; a < k.dim; ++a) s[a] = j[a] * W.pos.spacing();
  return k.eval(s, xi);
}

// d = 1 hermite forms: with (u, v) = S w the kernel is
// c e^{-a(x^2 + xi^2) - a(u^2 + v^2)} e^{b(x u + xi v)}, so the quadrature factors into
// X diag(W) Xi^T with X(x, w) = e^{-a x^2 - a|w|^2/2 + b x u}; each factor is <= 1.
PhaseSpaceField apply_full_d1(const ReducedKernel& k, const PhaseSpaceField& W) {
  const double th = k.form == KernelForm::hermite ? k.theta.at(0) : k.theta.at(0) * k.t;
  const double rot = k.form == KernelForm::hermite ? 0.0 : k.mu * k.t;
  if (!(th > 0.0)) throw std::invalid_argument("apply_kernel: identity axes carry a delta factor");
  const double a = 2.0 * pi / std::tanh(th), b = 4.0 * pi / std::sinh(th);
  const std::size_t Np = W.pos.size(), Nf = W.freq.size(), N = Np * Nf;
  Eigen::MatrixXd X(Np, N), Xi(Nf, N);
  Eigen::VectorXcd wv(N);
  for (std::size_t ip = 0; ip < Np; ++ip) {
    for (std::size_t iq = 0; iq < Nf; ++iq) {
      const std::size_t j = ip * Nf + iq;
      const Point w = rotate_phase_space(rot, {W.pos.coord(ip), W.freq.coord(iq)});
      const double h = 0.5 * a * (w[0] * w[0] + w[1] * w[1]);
      for (std::size_t r = 0; r < Np; ++r) {
        const double x = W.pos.coord(r);
        X(r, j) = std::exp(-a * x * x - h + b * x * w[0]);
      }
      for (std::size_t r = 0; r < Nf; ++r) {
        const double xi = W.freq.coord(r);
        Xi(r, j) = std::exp(-a * xi * xi - h + b * xi * w[1]);
      }
      wv[j] = W.values[j];
    }
  }
  const double c = k.normalization * W.pos.spacing() * W.freq.spacing() / std::sinh(th);
  const Eigen::MatrixXcd res = (X.cast<cplx>() * wv.asDiagonal()) * Xi.transpose().cast<cplx>();
  PhaseSpaceField out(W.pos, W.freq);
  for (std::size_t ip = 0; ip < Np; ++ip)
    for (std::size_t iq = 0; iq < Nf; ++iq) out.at(ip, iq) = c * res(ip, iq);
  return out;
}

PhaseSpaceField apply_full(const ReducedKernel& k, const PhaseSpaceField& W, Exec exec) {
  const std::size_t Np = W.pos.size(), Nf = W.freq.size(), N = Np * Nf;
  if (N > (std::size_t(1) << 15))
    throw std::invalid_argument("apply_kernel: dense phase-space quadrature limited to 2^15 points");
  const int d = k.dim;
  std::vector<Point> pts(N, Point(2 * d));
  for (std::size_t ip = 0; ip < Np; ++ip) {
    const Point x = W.pos.point(ip);
    for (std::size_t iq = 0; iq < Nf; ++iq) {
      const Point xi = W.freq.point(iq);
      for (int a = 0; a < d; ++a) {
        pts[ip * Nf + iq][a] = x[a];
        pts[ip * Nf + iq][d + a] = xi[a];
      }
    }
  }
  const double wgt =
      std::pow(W.pos.spacing() * W.freq.spacing(), d) * k.normalization;
  PhaseSpaceField out(W.pos, W.freq);
  const long n = static_cast<long>(N);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += k.eval_full(pts[i], pts[j]) * W.values[j];
    out.values[i] = wgt * s;
  }
  return out;
}

}  // namespace

PhaseSpaceField apply_kernel(const ReducedKernel& k, const PhaseSpaceField& W, Exec exec) {
  if (k.is_full()) {
    if (k.dim != W.pos.dim) throw std::invalid_argument("apply_kernel: dimension mismatch");
    return k.dim == 1 ? apply_full_d1(k, W) : apply_full(k, W, exec);
  }
  require_kernel_grids(k, W);
  const Grid& g = W.pos;
  const int d = g.dim, n = g.n, n2 = 2 * n;
  std::size_t M = 1;
  for (int a = 0; a < d; ++a) M *= n2;
  const Grid pad{d, n2, 2.0 * g.extent};
  const std::size_t Np = g.size(), Nf = W.freq.size();
  const double wgt = std::pow(g.spacing(), d) * k.normalization / static_cast<double>(M);
  PhaseSpaceField out(W.pos, W.freq);
  const long nf = static_cast<long>(Nf);

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> kb(M), wb(M);
#pragma omp for schedule(static)
    for (long m = 0; m < nf; ++m) {
      const Point xi = W.freq.point(m);
      for (std::size_t i = 0; i < M; ++i) {
        auto j = pad.unravel(i);
        for (int a = 0; a < d; ++a) j[a] = j[a] < n ? j[a] : j[a] - n2;
        kb[i] = kernel_at_offset(k, W, j, m, xi);
      }
      std::fill(wb.begin(), wb.end(), cplx(0.0));
      for (std::size_t ip = 0; ip < Np; ++ip) wb[pad.ravel(g.unravel(ip))] = W.at(ip, m);
      detail::fft_cube(kb.data(), d, n2, -1);
      detail::fft_cube(wb.data(), d, n2, -1);
      for (std::size_t i = 0; i < M; ++i) wb[i] *= kb[i];
      detail::fft_cube(wb.data(), d, n2, +1);
      for (std::size_t ip = 0; ip < Np; ++ip) out.at(ip, m) = wgt * wb[pad.ravel(g.unravel(ip))];
    }
  }
  return out;
}

namespace reference {

PhaseSpaceField apply_kernel(const ReducedKernel& k, const PhaseSpaceField& W) {
  if (k.is_full()) {
    if (k.dim != W.pos.dim) throw std::invalid_argument("apply_kernel: dimension mismatch");
    return apply_full(k, W, Exec::serial);
  }
  require_kernel_grids(k, W);
  const Grid& g = W.pos;
  const double wgt = std::pow(g.spacing(), g.dim) * k.normalization;
  PhaseSpaceField out(W.pos, W.freq);
  for (std::size_t m = 0; m < W.freq.size(); ++m) {
    const Point xi = W.freq.point(m);
    for (std::size_t ip = 0; ip < g.size(); ++ip) {
      const auto kx = g.unravel(ip);
      cplx s = 0.0;
      for (std::size_t jp = 0; jp < g.size(); ++jp) {
        const auto ky = g.unravel(jp);
        std::array<int, 3> off{0, 0, 0};
        for (int a = 0; a < g.dim; ++a) off[a] = kx[a] - ky[a];
        s += kernel_at_offset(k, W, off, m, xi) * W.at(jp, m);
      }
      out.at(ip, m) = wgt * s;
    }
  }
  return out;
}

}  // namespace reference

PhaseSpaceField evolve_wigner_heat(const PhaseSpaceField& W0, double t, double alpha, double beta,
                                   Exec exec) {
  if (!(alpha > 0.0)) throw std::invalid_argument("evolve_wigner_heat: alpha must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("evolve_wigner_heat: t must be > 0");
  const Grid& g = W0.pos;
  const int d = g.dim, n = g.n;
  const std::size_t Np = g.size(), Nf = W0.freq.size();
  PhaseSpaceField out(W0.pos, W0.freq);
  const long nf = static_cast<long>(Nf);

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> buf(Np);
#pragma omp for schedule(static)
    for (long m = 0; m < nf; ++m) {
      const Point xi = W0.freq.point(m);
      double xi2 = 0.0;
      for (double v : xi) xi2 += v * v;
      for (std::size_t ip = 0; ip < Np; ++ip) buf[ip] = W0.at(ip, m);
      detail::fft_cube(buf.data(), d, n, -1);
      for (std::size_t i = 0; i < Np; ++i) {
        const auto kk = g.unravel(i);
        double k2 = 0.0, kshift = 0.0;
        for (int a = 0; a < d; ++a) {
          const double kf = (kk[a] < n / 2 ? kk[a] : kk[a] - n) / g.extent;
          k2 += kf * kf;
          kshift += kf * 4.0 * pi * beta * t * xi[a];
        }
        // Fourier side of the 1/(2 pi alpha t)^{d/2}-normalized Gaussian and of the shear.
        buf[i] *= std::exp(-2.0 * pi * pi * alpha * t * k2) * std::polar(1.0, -2.0 * pi * kshift);
      }
      detail::fft_cube(buf.data(), d, n, +1);
      const double damp = std::exp(-8.0 * pi * pi * alpha * t * xi2) / static_cast<double>(Np);
      for (std::size_t ip = 0; ip < Np; ++ip) out.at(ip, m) = damp * buf[ip];
    }
  }
  return out;
}

LacunaReport lacuna_report(double t, const Grid& grid, const LacunaOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("lacuna_report: t must be > 0");
  if (grid.dim != 1) throw std::invalid_argument("lacuna_report: d = 1 grid required");
  const double eps = opt.mollifier, dx = grid.spacing();
  const double q = t / dx;
  if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q))
    throw std::invalid_argument("lacuna_report: t must be a multiple of the grid spacing");
  if (t + 4.0 > 0.5 * grid.extent || t + 6.0 * eps > 0.5 * grid.extent)
    throw std::invalid_argument("lacuna_report: under-resolved grid, light-cone offsets reach the edge");
  const Grid wf = grid.half_dual();
  if (1.0 / (2.0 * t) < 4.0 * wf.spacing() || eps < 4.0 * dx)
    throw std::invalid_argument("lacuna_report: under-resolved grid, ghost oscillation not sampled");

  LacunaReport r;
  r.t = t;
  r.center_ratio_closed = std::exp(-0.5 * pi * t * t);
  const Window g = gaussian_window(grid);
  const Operator cosine = [&](const SampledField& f) {
    return apply_multiplier(
        [&](const Point& xi) { return cplx(wave_symbol(WaveKind::cosine, t, xi)); }, f);
  };
  const double gg = std::real(inner(g.field, g.field));
  r.center_ratio = std::abs(gabor_numeric(cosine, {0.0, 0.0}, {0.0, 0.0}, g)) / gg;

  // Mollified cosine fundamental solution (1/2)(phi(x - t) + phi(x + t)).
  const SampledField E = sample(grid, [&](const Point& x) {
    auto phi = [&](double u) { return std::exp(-pi * u * u / (eps * eps)) / eps; };
    return cplx(0.5 * (phi(x[0] - t) + phi(x[0] + t)));
  });
  const PhaseSpaceField W = cross_wigner(E, E);
  const std::size_t i0 = static_cast<std::size_t>(grid.n / 2);  // x = 0
  const int n = wf.n;
  r.xi.resize(n);
  r.ghost_slice.resize(n);
  std::vector<double> model(n);
  for (int m = 0; m < n; ++m) {
    const double xi = wf.coord(m);
    r.xi[m] = xi;
    r.ghost_slice[m] = W.at(i0, m).real();
    model[m] = 0.5 * std::cos(4.0 * pi * xi * t) * std::sqrt(2.0) / eps *
               std::exp(-2.0 * pi * eps * eps * xi * xi);
  }
  r.ghost_amplitude = std::abs(W.at(i0, static_cast<std::size_t>(n / 2)));

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  const double ma = mean(r.ghost_slice), mb = mean(model);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (int m = 0; m < n; ++m) {
    const double a = r.ghost_slice[m] - ma, b = model[m] - mb;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  r.ghost_correlation = sab / std::sqrt(saa * sbb);

  // Dominant oscillation of the slice: FFT peak over xi with parabolic refinement.
  std::vector<cplx> buf(n);
  for (int m = 0; m < n; ++m) buf[m] = r.ghost_slice[m];
  detail::fft_cube(buf.data(), 1, n, -1);
  int best = 1;
  for (int k = 1; k < n / 2; ++k)
    if (std::abs(buf[k]) > std::abs(buf[best])) best = k;
  double shift = 0.0;
  if (best > 1 && best < n / 2 - 1) {
    const double a = std::log(std::abs(buf[best - 1])), b = std::log(std::abs(buf[best])),
                 c = std::log(std::abs(buf[best + 1]));
    const double den = a - 2.0 * b + c;
    if (den != 0.0) shift = 0.5 * (a - c) / den;
  }
  const double range = n * wf.spacing();  // xi window length
  r.ghost_period = range / (best + shift);
  r.ghost_period_expected = 1.0 / (2.0 * t);
  r.frequency_bin = wf.spacing();
  return r;
}

}  // namespace phasekit
