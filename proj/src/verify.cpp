#include "phasekit/verify.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "phasekit/gabor.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/metaplectic.hpp"
#include "phasekit/propagators.hpp"
#include "phasekit/special.hpp"
#include "phasekit/tf.hpp"

namespace phasekit {

namespace {

struct Ctx {
  SuiteConfig cfg;
  Grid g;
  std::vector<CheckEntry> entries;
  std::vector<std::string> notes;
  std::mt19937_64 rng;

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  // On-grid position near u.
  double on_grid(double u) const { return g.spacing() * std::round(u / g.spacing()); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void push(Ctx& c, CheckEntry e) { c.entries.push_back(std::move(e)); }

// measured is an error or discrepancy; passes when measured <= tol.
void add_le(Ctx& c, const std::string& id, const std::string& desc, const std::string& anchor,
            double measured, double tol, const std::string& diag = "") {
  push(c, {id, desc, anchor, measured, 0.0, tol, std::isfinite(measured) && measured <= tol, diag});
}

void add_close(Ctx& c, const std::string& id, const std::string& desc, const std::string& anchor,
               double measured, double expected, double tol, const std::string& diag = "") {
  const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tol;
  push(c, {id, desc, anchor, measured, expected, tol, ok, diag});
}

// Nonnegative-margin checks: passes when measured >= expected.
void add_ge(Ctx& c, const std::string& id, const std::string& desc, const std::string& anchor,
            double measured, double expected, const std::string& diag = "") {
  push(c, {id, desc, anchor, measured, expected, 0.0, std::isfinite(measured) && measured >= expected,
           diag});
}

void guard(Ctx& c, const std::string& id, const std::string& desc, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    push(c, {id, desc, "", std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, false,
             std::string("error: ") + e.what()});
  }
}

double rel_max(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return max_abs_diff(a, b) / max_abs(b);
}

Operator multiplier_op(std::function<cplx(const Point&)> sym) {
  return [sym](const SampledField& f) { return apply_multiplier(sym, f); };
}

Operator heat_op(double t, ComplexDiffusion gm) {
  return multiplier_op([=](const Point& xi) { return heat_symbol(t, gm, xi); });
}

Operator wave_op(double t) {
  return multiplier_op([=](const Point& xi) { return cplx(wave_symbol(WaveKind::sine, t, xi)); });
}

void resolution_check(Ctx& c, const std::string& suite) {
  const double spatial = std::exp(-pi * 0.25 * c.cfg.extent * c.cfg.extent);
  const double nyq = 0.5 * c.cfg.grid_n / c.cfg.extent;
  const double spectral = std::exp(-pi * nyq * nyq);
  const double m = std::max(spatial, spectral);
  std::string diag;
  if (m > 1e-12)
    diag = "under-resolved grid: window tail at edge " + fmt(spatial) + ", spectrum at Nyquist " +
           fmt(spectral) + " (n=" + std::to_string(c.cfg.grid_n) + ", L=" + fmt(c.cfg.extent) + ")";
  add_le(c, suite + ".resolution", "Gaussian window resolved in space and frequency",
         "grid resolution", m, 1e-12, diag);
}

// ---------------------------------------------------------------- transforms

void suite_transforms(Ctx& c) {
  resolution_check(c, "transforms");
  const Grid& g = c.g;
  const Window win = gaussian_window(g);

  guard(c, "transforms.dft_gaussian", "DFT maps the Gaussian to itself", [&] {
    const auto gh = dft(win.field, Direction::forward);
    const auto ref = sample(gh.grid, [](const Point& x) { return cplx(std::exp(-pi * x[0] * x[0])); });
    add_le(c, "transforms.dft_gaussian", "DFT maps the Gaussian to itself", "F g = g",
           max_abs_diff(gh.values, ref.values), 1e-12);
  });

  guard(c, "transforms.parseval", "Parseval over 20 random smooth fields", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto f = random_smooth_field(g, c.cfg.seed + i);
      const double a = norm2(f), b = norm2(dft(f, Direction::forward));
      worst = std::max(worst, std::abs(a * a - b * b) / (a * a));
    }
    add_le(c, "transforms.parseval", "Parseval over 20 random smooth fields", "||F f|| = ||f||",
           worst, 1e-10);
  });

  guard(c, "transforms.tf_shift_norm", "time-frequency shifts preserve the discrete norm", [&] {
    double worst = 0.0;
    for (Point z : {Point{1.0, 0.0}, Point{-2.0, 0.7}, Point{c.on_grid(0.5), -1.3}}) {
      const double a = norm2(win.field), b = norm2(tf_shift(win.field, z));
      worst = std::max(worst, std::abs(a - b) / a);
    }
    add_le(c, "transforms.tf_shift_norm", "time-frequency shifts preserve the discrete norm",
           "||pi(z) f|| = ||f||", worst, 1e-14);
  });

  guard(c, "transforms.gaussian_wigner", "Wigner distribution of the Gaussian", [&] {
    const auto W = cross_wigner(win.field, win.field);
    double worst = 0.0;
    for (std::size_t ip = 0; ip < W.pos.size(); ++ip)
      for (std::size_t iq = 0; iq < W.freq.size(); ++iq) {
        const double x = W.pos.coord(ip), xi = W.freq.coord(iq);
        const double ref = std::sqrt(2.0) * std::exp(-2.0 * pi * (x * x + xi * xi));
        worst = std::max(worst, std::abs(W.at(ip, iq) - ref) / std::sqrt(2.0));
      }
    add_le(c, "transforms.gaussian_wigner", "Wigner distribution of the Gaussian",
           "W g = 2^{1/2} e^{-2 pi (x^2 + xi^2)}", worst, 1e-8);
  });

  guard(c, "transforms.wigner_real", "W(f,f) is real", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 100);
    const auto W = cross_wigner(f, f);
    double im = 0.0;
    for (const auto& v : W.values) im = std::max(im, std::abs(v.imag()));
    add_le(c, "transforms.wigner_real", "W(f,f) is real", "Hermitian symmetry", im / max_abs(W.values),
           1e-12);
  });

  const double cell = g.spacing() * g.half_dual().spacing();

  guard(c, "transforms.wigner_mass", "phase-space integral of W(f,f) equals ||f||^2", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto f = random_smooth_field(g, c.cfg.seed + 200 + i);
      const auto W = cross_wigner(f, f);
      cplx s = 0.0;
      for (const auto& v : W.values) s += v;
      const double n2 = std::pow(norm2(f), 2);
      worst = std::max(worst, std::abs(s * cell - n2) / n2);
    }
    add_le(c, "transforms.wigner_mass", "phase-space integral of W(f,f) equals ||f||^2",
           "marginal identity", worst, 1e-9);
  });

  guard(c, "transforms.moyal", "Moyal identity on random smooth fields", [&] {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto f1 = random_smooth_field(g, c.cfg.seed + 300 + 4 * i);
      const auto g1 = random_smooth_field(g, c.cfg.seed + 301 + 4 * i);
      const auto f2 = random_smooth_field(g, c.cfg.seed + 302 + 4 * i);
      const auto g2 = random_smooth_field(g, c.cfg.seed + 303 + 4 * i);
      const auto W1 = cross_wigner(f1, g1), W2 = cross_wigner(f2, g2);
      cplx lhs = 0.0;
      for (std::size_t k = 0; k < W1.values.size(); ++k) lhs += W1.values[k] * std::conj(W2.values[k]);
      lhs *= cell;
      const cplx rhs = inner(f1, f2) * std::conj(inner(g1, g2));
      const double scale = norm2(f1) * norm2(f2) * norm2(g1) * norm2(g2);
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    add_le(c, "transforms.moyal", "Moyal identity on random smooth fields",
           "<W(f1,g1),W(f2,g2)> = <f1,f2> conj<g1,g2>", worst, 1e-8);
  });

  guard(c, "transforms.shift_covariance", "W(pi(z) f) is W f translated by z", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 400);
    const int kx = 12, kq = 16;  // shift in grid cells
    const Grid q = g.half_dual();
    const Point z{kx * g.spacing(), kq * q.spacing()};
    const auto W = cross_wigner(f, f);
    const auto Ws = cross_wigner(tf_shift(f, z), tf_shift(f, z));
    double worst = 0.0;
    for (int ip = kx; ip < g.n; ++ip)
      for (int iq = kq; iq < q.n; ++iq)
        worst = std::max(worst, std::abs(Ws.at(ip, iq) - W.at(ip - kx, iq - kq)));
    add_le(c, "transforms.shift_covariance", "W(pi(z) f) is W f translated by z",
           "W(pi(z) f)(w) = W f(w - z)", worst / max_abs(W.values), 1e-10);
  });

  guard(c, "transforms.fourier_covariance", "W(f,g)(x,xi) = W(F f, F g)(xi,-x)", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 500);
    const auto h = random_smooth_field(g, c.cfg.seed + 501);
    const auto W = cross_wigner(f, h);
    const auto Wh = cross_wigner(dft(f, Direction::forward), dft(h, Direction::forward));
    // W grids: pos dx, freq 1/(2L); Wh grids: pos 1/L, freq dx/2.
    double worst = 0.0;
    const Grid& hp = Wh.pos;
    const Grid& hq = Wh.freq;
    for (int ip = 0; ip < g.n; ++ip) {
      const double x = g.coord(ip);
      if (std::abs(x) >= 0.25 * g.extent) continue;
      const int jq = static_cast<int>(std::lround((-x - hq.coord(0)) / hq.spacing()));
      if (jq < 0 || jq >= hq.n) continue;
      for (int iq = 0; iq < W.freq.n; iq += 2) {
        const double xi = W.freq.coord(iq);
        const int jp = static_cast<int>(std::lround((xi - hp.coord(0)) / hp.spacing()));
        if (jp < 0 || jp >= hp.n) continue;
        worst = std::max(worst, std::abs(W.at(ip, iq) - Wh.at(jp, jq)));
      }
    }
    add_le(c, "transforms.fourier_covariance", "W(f,g)(x,xi) = W(F f, F g)(xi,-x)",
           "Fourier covariance", worst / max_abs(W.values), 1e-8);
  });

  guard(c, "transforms.stft_gaussian", "|V_g g(z)| = 2^{-1/2} e^{-pi |z|^2/2}", [&] {
    const auto V = stft(win.field, win, g.dual());
    double worst = 0.0;
    for (std::size_t ip = 0; ip < V.pos.size(); ++ip)
      for (std::size_t iq = 0; iq < V.freq.size(); ++iq) {
        const double x = V.pos.coord(ip), xi = V.freq.coord(iq);
        worst = std::max(worst, std::abs(std::abs(V.at(ip, iq)) -
                                         std::sqrt(0.5) * std::exp(-0.5 * pi * (x * x + xi * xi))));
      }
    add_le(c, "transforms.stft_gaussian", "|V_g g(z)| = 2^{-1/2} e^{-pi |z|^2/2}",
           "free Gaussian overlap", worst, 1e-9);
  });

  guard(c, "transforms.fast_vs_reference", "FFT Wigner and STFT against direct sums", [&] {
    const Grid s = make_grid(1, 64, 8.0);
    const auto f = random_smooth_field(s, c.cfg.seed + 600);
    const auto w = gaussian_window(s);
    const double a = rel_max(cross_wigner(f, f).values, reference::cross_wigner(f, f).values);
    const double b = rel_max(stft(f, w, s.dual()).values, reference::stft(f, w).values);
    add_le(c, "transforms.fast_vs_reference", "FFT Wigner and STFT against direct sums",
           "discrete sums", std::max(a, b), 1e-12);
  });

  guard(c, "transforms.serial_parallel", "serial and OpenMP kernels agree bit-for-bit", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 700);
    const double a =
        max_abs_diff(cross_wigner(f, f, Exec::serial).values, cross_wigner(f, f, Exec::parallel).values);
    add_le(c, "transforms.serial_parallel", "serial and OpenMP kernels agree bit-for-bit",
           "execution equivalence", a, 0.0);
  });

  // Special functions.
  guard(c, "special.gaussian_integral", "gaussian_integral against adaptive quadrature", [&] {
    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx rho(c.uniform(0.3, 2.0), c.uniform(-2.0, 2.0));
      const cplx cc(c.uniform(-0.8, 0.8), c.uniform(-0.8, 0.8));
      auto fre = [&](double x) { return std::exp(-2.0 * pi * rho * x * x + 2.0 * pi * cc * x).real(); };
      auto fim = [&](double x) { return std::exp(-2.0 * pi * rho * x * x + 2.0 * pi * cc * x).imag(); };
      const double inf = std::numeric_limits<double>::infinity();
      const cplx q(gauss_kronrod<double, 61>::integrate(fre, -inf, inf, 15, 1e-14),
                   gauss_kronrod<double, 61>::integrate(fim, -inf, inf, 15, 1e-14));
      const cplx v = gaussian_integral(rho, {cc}, 1);
      worst = std::max(worst, std::abs(v - q) / std::abs(q));
    }
    add_le(c, "special.gaussian_integral", "gaussian_integral against adaptive quadrature",
           "complex Gaussian integral", worst, 1e-7);
  });

  guard(c, "special.bessel_j0", "J0 power series against its integral representation", [&] {
    double worst = 0.0, worst_lib = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double z = 0.1 * i;
      // (1/pi) \int_0^pi cos(z sin t) dt; the trapezoid rule is spectral for this periodic integrand.
      const int m = 256;
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += std::cos(z * std::sin(pi * k / m));
      const double integral = s / m;
      worst = std::max(worst, std::abs(bessel_j0_series(z) - integral));
      worst_lib = std::max(worst_lib, std::abs(bessel_j0(z) - integral));
    }
    add_le(c, "special.bessel_j0", "J0 power series against its integral representation",
           "J0 integral representation", worst, 1e-10,
           "bessel_j0 deviation " + fmt(worst_lib));
  });

  guard(c, "special.erf", "erf odd symmetry and limits", [&] {
    double worst = std::abs(erf(0.0)) + std::abs(erf(40.0) - 1.0);
    for (double x : {0.1, 0.5, 1.3, 2.7}) worst = std::max(worst, std::abs(erf(-x) + erf(x)));
    add_le(c, "special.erf", "erf odd symmetry and limits", "erf", worst, 1e-15);
  });
}

// ---------------------------------------------------------------- heat

void suite_heat(Ctx& c) {
  resolution_check(c, "heat");
  const Grid& g = c.g;
  const Window win = gaussian_window(g);
  const Point o{0.0, 0.0};

  struct Peak {
    double beta, t, value;
  };
  for (const Peak& p : {Peak{0, 1, 0.262}, Peak{0, 2, 0.192}, Peak{0, 5, 0.124}, Peak{1, 1, 0.228},
                        Peak{1, 2, 0.164}, Peak{1, 5, 0.105}}) {
    const std::string id = std::string("heat.peak.") + (p.beta == 0 ? "real" : "complex") + ".t" +
                           std::to_string(static_cast<int>(p.t));
    guard(c, id, "peak |G_t(0,0)|", [&] {
      const double v = std::abs(gabor_heat_closed(p.t, {1.0, p.beta}, o, o, 1));
      add_close(c, id, "peak |G_t(0,0)|, alpha=1, beta=" + fmt(p.beta) + ", t=" + fmt(p.t),
                "heat peak table", v, p.value, 1e-3);
    });
  }
  guard(c, "heat.closed_t0", "G_0(0,0) equals ||g||^2", [&] {
    const double v = std::abs(gabor_heat_closed(0.0, {1.0, 0.0}, o, o, 1));
    add_close(c, "heat.closed_t0", "G_0(0,0) equals ||g||^2 = 2^{-1/2}", "t = 0 limit", v,
              std::sqrt(0.5), 1e-15);
  });

  guard(c, "heat.epsilon.max", "max_t eps(t,1,0) by golden-section search", [&] {
    const auto e = golden_section_max([](double t) { return heat_epsilon(t, 1.0, 0.0); }, 1e-3, 2.0);
    add_close(c, "heat.epsilon.max_value", "max_t eps(t,1,0) equals pi/4", "eps extremum", e.value,
              0.25 * pi, 1e-10);
    add_close(c, "heat.epsilon.argmax", "argmax_t eps(t,1,0) equals 1/(2 pi)", "eps extremum", e.arg,
              0.5 / pi, 1e-10);
  });
  guard(c, "heat.epsilon.t1", "eps(1,1,0)", [&] {
    const long double a = 1.0L + 2.0L * pi, r = 1.0L - 8.0L * pi / (a * a);
    const double direct = static_cast<double>(0.25L * pi * (1.0L - std::sqrt(r)));
    add_close(c, "heat.epsilon.t1", "eps(1,1,0) against a long-double evaluation", "eps",
              heat_epsilon(1.0, 1.0, 0.0), direct, 1e-14, "value " + fmt(direct));
  });
  guard(c, "heat.epsilon.small_t", "eps(1e-8,1,0) vanishes with t", [&] {
    add_le(c, "heat.epsilon.small_t", "eps(1e-8,1,0) vanishes with t", "eps", heat_epsilon(1e-8, 1, 0),
           1e-7);
  });
  guard(c, "heat.epsilon.monotone_beta", "eps decreases in |beta|", [&] {
    int bad = 0;
    for (double t : {0.05, 0.2, 1.0, 3.0})
      for (int i = 0; i < 40; ++i)
        if (heat_epsilon(t, 1.0, 0.1 * (i + 1)) > heat_epsilon(t, 1.0, 0.1 * i)) ++bad;
    add_le(c, "heat.epsilon.monotone_beta", "eps decreases in |beta| (violations)", "eps", bad, 0.0);
  });

  for (auto [al, be] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {1.0, 1.0}})
    for (double t : {0.1, 1.0}) {
      const std::string id = "heat.gabor_numeric.a" + fmt(al) + "_b" + fmt(be) + "_t" + fmt(t);
      guard(c, id, "closed form against numeric Gabor matrix", [&] {
        const ComplexDiffusion gm{al, be};
        const auto T = heat_op(t, gm);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
          const Point z{c.on_grid(c.uniform(-1.0, 1.0)), c.uniform(-1.0, 1.0)};
          const Point w{c.on_grid(z[0] + c.uniform(-1.0, 1.0)), z[1] + c.uniform(-1.0, 1.0)};
          const cplx a = gabor_numeric(T, z, w, win), b = gabor_heat_closed(t, gm, z, w, 1);
          worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        add_le(c, id, "closed form against numeric Gabor matrix at 25 points (complex, rel)",
               "heat Gabor closed form", worst, 1e-5);
      });
    }

  guard(c, "heat.bound_domination", "bound dominates |G_t| at 1000 random points", [&] {
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      const ComplexDiffusion gm{c.uniform(0.1, 2.0), c.uniform(-2.0, 2.0)};
      const double t = c.uniform(0.01, 5.0);
      const Point z{c.uniform(-3, 3), c.uniform(-3, 3)}, w{c.uniform(-3, 3), c.uniform(-3, 3)};
      const double b = gabor_heat_bound(t, gm, z, w, 1), m = std::abs(gabor_heat_closed(t, gm, z, w, 1));
      margin = std::min(margin, (b - m) / b);
    }
    add_ge(c, "heat.bound_domination", "min relative margin (bound - |G|)/bound over 1000 points",
           "heat Gabor bound", margin, 0.0);
  });
  guard(c, "heat.bound_peak", "bound prefactor at the origin", [&] {
    const double b = gabor_heat_bound(1.0, {1.0, 0.0}, o, o, 1);
    add_close(c, "heat.bound_peak", "bound at z=w=0 equals 2^{-1/2}(1+2 pi)^{-1/2}", "heat Gabor bound",
              b, std::sqrt(0.5 / (1.0 + 2.0 * pi)), 1e-15);
  });
  guard(c, "heat.bound_rate", "bound rate in |x-y|^2 at the eps maximum", [&] {
    const double t = 0.5 / pi;
    const double b0 = gabor_heat_bound(t, {1.0, 0.0}, o, o, 1);
    const double b1 = gabor_heat_bound(t, {1.0, 0.0}, {1.0, 0.0}, o, 1);
    add_close(c, "heat.bound_rate", "bound Gaussian rate in |x-y|^2 at beta=0, t=1/(2 pi)",
              "eps extremum", std::log(b0 / b1), 0.25 * pi, 1e-12);
  });

  guard(c, "heat.stft_route", "|h(z,w)| from the STFT of the kernel E(t, x - y)", [&] {
    double worst = 0.0;
    const double h = 1.0 / 16.0;
    const int m = 192;
    for (double t : {0.1, 1.0}) {
      const ComplexDiffusion gm{1.0, 0.0};
      for (int i = 0; i < 12; ++i) {
        const Point z{c.uniform(-1, 1), c.uniform(-1, 1)}, w{c.uniform(-1, 1), c.uniform(-1, 1)};
        cplx s = 0.0;
        for (int a = 0; a < m; ++a) {
          const double sa = -6.0 + a * h;
          const double gy = std::exp(-pi * (sa - w[0]) * (sa - w[0]));
          for (int b = 0; b < m; ++b) {
            const double rb = -6.0 + b * h;
            const double gx = std::exp(-pi * (rb - z[0]) * (rb - z[0]));
            s += heat_kernel(t, gm, {sa - rb}) * gx * gy *
                 std::polar(1.0, 2.0 * pi * (z[1] * rb - w[1] * sa));
          }
        }
        s *= h * h;
        const double ref = std::abs(gabor_heat_closed(t, gm, z, w, 1));
        worst = std::max(worst, std::abs(std::abs(s) - ref) / ref);
      }
    }
    add_le(c, "heat.stft_route", "|V_{g x g} k(y, x, eta, -xi)| against |G_t| at 24 points",
           "STFT route", worst, 1e-5);
  });

  guard(c, "heat.kernel_from_symbol", "sampled kernel against the heat closed form", [&] {
    const double t = 0.1;
    const ComplexDiffusion gm{1.0, 0.0};
    const auto sym = sample(g.dual(), [&](const Point& xi) { return heat_symbol(t, gm, xi); }, true);
    const auto hk = make_heat_kernel(t, gm, 1);
    for (auto route : {SymbolRoute::symbol_wigner, SymbolRoute::kernel_wigner}) {
      const auto k = kernel_from_symbol(sym, g, {route, 1e-6});
      double md = 0.0, mr = 0.0;
      for (std::size_t i = 0; i < k.samples.pos.size(); ++i)
        for (std::size_t j = 0; j < k.samples.freq.size(); ++j) {
          const double ref = hk.normalization *
                             kernel_heat(t, gm, k.samples.pos.point(i), k.samples.freq.point(j));
          md = std::max(md, std::abs(k.samples.at(i, j).real() - ref));
          mr = std::max(mr, std::abs(ref));
        }
      const std::string id = route == SymbolRoute::symbol_wigner ? "heat.kernel_from_symbol.sigma"
                                                                 : "heat.kernel_from_symbol.E";
      add_le(c, id, "sampled kernel vs |4 pi gamma t|^{-d} kernel_heat (max rel)",
             "kappa = W(sigma)(xi,-s) = W(E)(s,xi)", md / mr, 1e-6);
    }
    c.notes.push_back("kernel_heat normalization |4 pi gamma t|^{-d} = " + fmt(hk.normalization) +
                      " at t=0.1, gamma=1");
  });

  guard(c, "heat.kernel_values", "kernel_heat special values", [&] {
    const double a = std::abs(kernel_heat(1.0, {1, 0}, {0.0}, {0.0}) - std::sqrt(8.0 * pi));
    const double b = std::abs(kernel_heat(1.0, {1, 0}, {1.0}, {0.0}) - std::sqrt(8.0 * pi) * std::exp(-0.5));
    add_le(c, "heat.kernel_values", "kernel_heat at (0,0) and (1,0), alpha=t=1", "heat kernel",
           std::max(a, b), 1e-14);
  });

  guard(c, "heat.kernel_ridge", "xi-argmax of kappa on the shear line", [&] {
    const double t = 0.5;
    const ComplexDiffusion gm{1.0, 1.0};
    const double k = heat_kernel_shear(t, gm);
    const Grid q = g.half_dual();
    double worst = 0.0;
    for (double s : {-2.0, -1.0, 0.5, 1.5}) {
      int best = 0;
      for (int m = 0; m < q.n; ++m)
        if (kernel_heat(t, gm, {s}, {q.coord(m)}) > kernel_heat(t, gm, {s}, {q.coord(best)})) best = m;
      worst = std::max(worst, std::abs(q.coord(best) - k * s) / q.spacing());
    }
    add_le(c, "heat.kernel_ridge", "argmax distance from xi = k s in frequency cells", "heat kernel shear",
           worst, 1.0);
  });

  guard(c, "heat.apply_kernel", "kernel action against the propagated Wigner distribution", [&] {
    const double t = 0.5;
    for (double beta : {0.0, 1.0}) {
      const ComplexDiffusion gm{1.0, beta};
      const auto f = tf_shift(win.field, {0.0, 0.5});
      const auto W = cross_wigner(f, f);
      const auto u = apply_multiplier([&](const Point& xi) { return heat_symbol(t, gm, xi); }, f);
      const auto Wu = cross_wigner(u, u);
      add_le(c, "heat.apply_kernel.b" + fmt(beta), "apply_kernel(kernel_heat, W f) vs W(T f), rel L2",
             "Wigner kernel action", rel_l2_diff(apply_kernel(make_heat_kernel(t, gm, 1), W).values, Wu.values),
             1e-4);
      add_le(c, "heat.evolve.b" + fmt(beta), "evolve_wigner_heat(W f) vs W(T f), rel L2",
             "Wigner heat evolution", rel_l2_diff(evolve_wigner_heat(W, t, 1.0, beta).values, Wu.values),
             1e-4);
    }
  });

  guard(c, "heat.evolve.damping", "xi-slice masses decay like e^{-8 pi^2 alpha t xi^2}", [&] {
    const double t = 0.01, alpha = 10.0;
    PhaseSpaceField W0(g, g.half_dual());
    for (std::size_t ip = 0; ip < W0.pos.size(); ++ip)
      for (std::size_t iq = 0; iq < W0.freq.size(); ++iq)
        W0.at(ip, iq) = std::exp(-pi * W0.pos.coord(ip) * W0.pos.coord(ip));
    const auto W = evolve_wigner_heat(W0, t, alpha, 0.0);
    auto mass = [&](std::size_t iq) {
      cplx s = 0.0;
      for (std::size_t ip = 0; ip < W.pos.size(); ++ip) s += W.at(ip, iq);
      return s.real();
    };
    const std::size_t m0 = W.freq.n / 2;
    double worst = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double xi = W.freq.coord(m0 + k);
      const double want = std::exp(-8.0 * pi * pi * alpha * t * xi * xi);
      worst = std::max(worst, std::abs(mass(m0 + k) / mass(m0) - want) / want);
    }
    add_le(c, "heat.evolve.damping", "relative deviation of slice-mass ratios", "Wigner heat evolution",
           worst, 1e-6);
  });

  guard(c, "heat.evolve.shear", "Schrodinger limit translates slices by 4 pi beta t xi", [&] {
    const double t = 1.0, beta = 0.5 / pi * g.spacing() / (2.0 * g.half_dual().spacing());
    // 4 pi beta t * dxi = dx: each frequency cell shifts by one position cell.
    const auto f = random_smooth_field(g, c.cfg.seed + 800);
    const auto W0 = cross_wigner(f, f);
    const auto W = evolve_wigner_heat(W0, t, 1e-12, beta);
    double worst = 0.0;
    const int n = g.n;
    for (int iq = 0; iq < W.freq.n; ++iq) {
      const int sh = iq - W.freq.n / 2;
      for (int ip = 0; ip < n; ++ip) {
        const int src = ((ip - sh) % n + n) % n;
        worst = std::max(worst, std::abs(W.at(ip, iq) - W0.at(src, iq)));
      }
    }
    add_le(c, "heat.evolve.shear", "max deviation from the index-translated slices (rel)",
           "free Schrodinger shear", worst / max_abs(W0.values), 1e-9);
  });

  guard(c, "heat.gabor_kernel_pairing", "|h(z,w)|^2 = <K W(pi(z) g), W(pi(w) g)>", [&] {
    const double t = 0.5;
    const ComplexDiffusion gm{1.0, 0.0};
    const auto K = make_heat_kernel(t, gm, 1);
    const double cell = g.spacing() * g.half_dual().spacing();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const Point z{c.on_grid(c.uniform(-1, 1)), c.uniform(-1, 1)};
      const Point w{c.on_grid(c.uniform(-1, 1)), c.uniform(-1, 1)};
      const auto fz = tf_shift(win.field, z), fw = tf_shift(win.field, w);
      const auto KW = apply_kernel(K, cross_wigner(fz, fz));
      const auto Ww = cross_wigner(fw, fw);
      cplx s = 0.0;
      for (std::size_t k = 0; k < KW.values.size(); ++k) s += KW.values[k] * std::conj(Ww.values[k]);
      const double ref = std::norm(gabor_heat_closed(t, gm, z, w, 1));
      worst = std::max(worst, std::abs(s.real() * cell - ref) / ref);
    }
    add_le(c, "heat.gabor_kernel_pairing", "Wigner-kernel pairing against |G_t|^2 (rel)",
           "Gabor matrix / Wigner kernel pairing", worst, 1e-4);
  });

  guard(c, "heat.fit_decay", "decay fit of a heat slice picks p=2 and eps", [&] {
    GaborSlice sl;
    sl.fixed_z = {0.0, 0.0};
    sl.w_pos_axis = Grid{1, 128, 8.0};
    sl.w_freq_axis = Grid{1, 64, 4.0};
    evaluate_slice(sl, [](const Point& z, const Point& w) {
      return gabor_heat_closed(1.0, {1.0, 0.0}, z, w, 1);
    });
    const auto fit = fit_decay(sl, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::position, 3.0});
    const double eps = heat_epsilon(1.0, 1.0, 0.0);
    add_close(c, "heat.fit_decay.exponent", "best exponent in |x-y| among {1, 4/3, 2}", "decay fit",
              fit.exponent, 2.0, 0.0);
    GaborSlice id;
    id.fixed_z = {0.0, 0.0};
    id.w_pos_axis = Grid{1, 128, 8.0};
    id.w_freq_axis = Grid{1, 64, 4.0};
    evaluate_slice(id, [](const Point& z, const Point& w) {
      return gabor_heat_closed(0.0, {1.0, 0.0}, z, w, 1);
    });
    const auto fi = fit_decay(id, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::position, 3.0});
    add_close(c, "heat.fit_decay.identity", "identity slice: fitted rate pi/2 with p = 2", "decay fit",
              fi.exponent == 2.0 ? fi.rate : 0.0, 0.5 * pi, 0.05 * 0.5 * pi);
    add_le(c, "heat.fit_decay.rate", "fitted rate relative to eps(1,1,0)", "decay fit",
           std::abs(fit.rate - eps) / eps, 1e-6, "rate " + fmt(fit.rate));
  });
}

// ---------------------------------------------------------------- wave

void suite_wave(Ctx& c) {
  resolution_check(c, "wave");
  const Grid& g = c.g;
  const Window win = gaussian_window(g);
  const double t = 1.0;

  guard(c, "wave.overlap_closed", "I(u) quadrature against (1/2) erf(sqrt(pi)(t-|u|)_+)", [&] {
    double worst = 0.0, outside = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double u = -2.0 * t + i * 0.01;
      const cplx q = wave_overlap_density(t, u, 0.0);
      worst = std::max(worst, std::abs(q - wave_overlap_closed(t, u)));
      if (std::abs(u) > t) outside = std::max(outside, std::abs(q));
    }
    add_le(c, "wave.overlap_closed", "I(u) quadrature against (1/2) erf(sqrt(pi)(t-|u|)_+), |u| <= 2t",
           "d=1 overlap density", worst, 1e-9);
    add_le(c, "wave.overlap_support", "I(u) vanishes for |u| > t", "d=1 overlap density", outside, 0.0);
  });

  guard(c, "wave.modsq_vs_entry", "double pairing equals |single pairing|^2", [&] {
    double worst = 0.0;
    const PairingOrder small{12, 16};
    for (int d = 1; d <= 3; ++d)
      for (int i = 0; i < 8; ++i) {
        Point z(2 * d), w(2 * d);
        for (int k = 0; k < 2 * d; ++k) {
          z[k] = c.uniform(-1.5, 1.5);
          w[k] = c.uniform(-1.5, 1.5);
        }
        const double a = gabor_wave_modsq(t, d, z, w, small);
        const double b = std::norm(gabor_wave_entry(t, d, z, w, small));
        worst = std::max(worst, std::abs(a - b) / std::max(b, 1e-300));
      }
    add_le(c, "wave.modsq_vs_entry", "double pairing equals |single pairing|^2, d=1,2,3", "wave Gabor matrix",
           worst, 1e-10);
  });

  guard(c, "wave.modsq_vs_numeric", "|h|^2 against the numeric propagator, d=1", [&] {
    const auto T = wave_op(t);
    double worst = 0.0, peak = gabor_wave_modsq(t, 1, {0, 0}, {0, 0});
    for (int i = 0; i < 25; ++i) {
      const Point z{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1, 1)};
      const Point w{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1, 1)};
      const double a = std::norm(gabor_numeric(T, z, w, win)), b = gabor_wave_modsq(t, 1, z, w);
      worst = std::max(worst, std::abs(a - b) / std::max(b, 1e-3 * peak));
    }
    add_le(c, "wave.modsq_vs_numeric", "|h|^2 against the numeric propagator at 25 points (rel)",
           "wave Gabor matrix", worst, 1e-4);
  });

  for (int d = 1; d <= 3; ++d) {
    const std::string id = "wave.bound_d" + std::to_string(d);
    guard(c, id, "bound domination", [&] {
      double margin = std::numeric_limits<double>::infinity();
      const int count = 1000;
      for (int i = 0; i < count; ++i) {
        Point z(2 * d), w(2 * d);
        for (int k = 0; k < 2 * d; ++k) {
          z[k] = c.uniform(-2.5, 2.5);
          w[k] = c.uniform(-2.5, 2.5);
        }
        const double tt = c.uniform(0.2, 2.0);
        const double m = d == 1 ? std::sqrt(gabor_wave_modsq(tt, 1, z, w, {32, 1}))
                                : std::abs(gabor_wave_entry(tt, d, z, w, {24, 32}));
        const double b = gabor_wave_bound(tt, d, z, w);
        margin = std::min(margin, (b - m) / b);
      }
      add_ge(c, id, "min relative margin (bound - |h|)/bound over 1000 points", "wave Gabor bound",
             margin, 0.0);
    });
  }

  guard(c, "wave.bound_d3_numeric", "d=3 bound dominates the numeric Gabor matrix on a radial slice", [&] {
    const Grid g3 = make_grid(3, 64, 8.0);
    const Window w3 = gaussian_window(g3);
    const auto Tg = wave_op(t)(w3.field);
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 24; ++k) {
      const Point w{k * g3.spacing(), 0, 0, 0, 0, 0}, z(6, 0.0);
      const double m = std::abs(inner(Tg, tf_shift(w3.field, w)));
      margin = std::min(margin, gabor_wave_bound(t, 3, z, w) - m);
    }
    add_ge(c, "wave.bound_d3_numeric", "min margin bound - |h| along |x-y| in [0, 3]", "wave Gabor bound",
           margin, 0.0);
  });

  guard(c, "wave.bound_lightcone", "d=3 bound equals t on the light cone", [&] {
    add_close(c, "wave.bound_lightcone", "d=3 bound at |x-y| = t, xi = eta", "wave Gabor bound",
              gabor_wave_bound(1.5, 3, {1.5, 0, 0, 0.2, 0, 0}, {0, 0, 0, 0.2, 0, 0}), 1.5, 1e-15);
  });

  guard(c, "wave.kernel_values", "kernel_wave special values", [&] {
    double e = std::abs(kernel_wave(1, t, {0.0}, {0.3}) - std::sin(4 * pi * t * 0.3) / (4 * pi * 0.3));
    e = std::max(e, std::abs(kernel_wave(1, t, {0.4}, {0.0}) - (t - 0.4)));
    e = std::max(e, std::abs(kernel_wave(2, t, {0.5, 0.0}, {0.7, 0.0}) - 0.5 / pi));
    e = std::max(e, std::abs(kernel_wave(3, t, {0, 0, 0}, {0, 0, 0}) - 1.0 / (8 * pi * t)));
    add_le(c, "wave.kernel_values", "s=0 and xi->0 limits, J0(0) values", "wave kernel", e, 1e-14);
  });

  guard(c, "wave.kernel_support", "kernel_wave vanishes outside its support", [&] {
    double m = 0.0;
    for (double s : {1.0001, 1.5, 3.0}) m = std::max(m, std::abs(kernel_wave(1, t, {s}, {0.2})));
    for (double s : {2.0, 2.5}) {
      m = std::max(m, std::abs(kernel_wave(2, t, {s, 0.0}, {0.1, 0.2})));
      m = std::max(m, std::abs(kernel_wave(3, t, {0.0, s, 0.0}, {0.1, 0.2, 0.0})));
    }
    m = std::max(m, std::abs(kernel_wave(1, t, {t}, {0.37})));  // continuity at |s| = t
    add_le(c, "wave.kernel_support", "max |kappa| outside the support and at |s| = t", "wave kernel", m, 0.0);
  });

  guard(c, "wave.kernel_parity", "d=1 kernel parity in xi", [&] {
    double m = 0.0;
    for (double s : {0.0, 0.3, 0.8})
      for (double xi : {0.1, 0.45, 1.7})
        m = std::max(m, std::abs(kernel_wave(1, t, {s}, {-xi}) - kernel_wave(1, t, {s}, {xi})));
    add_le(c, "wave.kernel_parity", "kappa(s,-xi) - kappa(s,xi) (even in xi)", "wave kernel", m, 0.0);
  });

  guard(c, "wave.apply_kernel", "d=1 kernel action against W(T_t g)", [&] {
    const Grid gf = make_grid(1, 2 * g.n, g.extent);
    const Window wf = gaussian_window(gf);
    const auto W = cross_wigner(wf.field, wf.field);
    const auto u = wave_op(t)(wf.field);
    const auto Wu = cross_wigner(u, u);
    add_le(c, "wave.apply_kernel", "apply_kernel(kappa_t^(1), W g) vs W(T_t g), rel L2, grid n=2N",
           "Wigner kernel action", rel_l2_diff(apply_kernel(make_wave_kernel(1, t), W).values, Wu.values),
           1e-3);
  });

  guard(c, "wave.kernel_from_symbol", "sampled d=1 kernel converges to the closed form", [&] {
    auto sup = [&](const Grid& gg) {
      const auto sym = sample(gg.dual(), [&](const Point& xi) {
        return cplx(wave_symbol(WaveKind::sine, t, xi));
      }, true);
      const auto k = kernel_from_symbol(sym, gg, {SymbolRoute::symbol_wigner, 1.0});
      double m = 0.0;
      for (std::size_t i = 0; i < k.samples.pos.size(); ++i)
        for (std::size_t j = 0; j < k.samples.freq.size(); ++j)
          m = std::max(m, std::abs(k.samples.at(i, j).real() -
                                   kernel_wave(1, t, k.samples.pos.point(i), k.samples.freq.point(j))));
      return m;
    };
    const double e1 = sup(g), e2 = sup(make_grid(1, 2 * g.n, g.extent));
    const double order = std::log2(e1 / e2);
    add_ge(c, "wave.kernel_from_symbol.order", "observed order of the sup error under grid refinement",
           "kappa = W(sigma)(xi,-s)", order, 0.5,
           "sup error " + fmt(e1) + " at n=" + std::to_string(g.n) + ", " + fmt(e2) + " at n=" +
               std::to_string(2 * g.n));
    c.notes.push_back("wave d=1 kernel_from_symbol sup error: " + fmt(e1) + " (n=" + std::to_string(g.n) +
                      "), " + fmt(e2) + " (n=" + std::to_string(2 * g.n) +
                      "); the 1/|xi| symbol tail bounds the attainable accuracy");
    bool rejected = false;
    try {
      const auto sym = sample(g.dual(), [&](const Point& xi) {
        return cplx(wave_symbol(WaveKind::sine, t, xi));
      }, true);
      kernel_from_symbol(sym, g);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    add_ge(c, "wave.kernel_from_symbol.rejects", "default edge tolerance rejects the sine symbol",
           "under-resolution guard", rejected ? 1.0 : 0.0, 1.0);
  });

  guard(c, "wave.kernel_marginals", "s-marginals of the wave kernels against sigma(xi)^2", [&] {
    double e1 = 0.0, e3 = 0.0;
    for (double xn : {0.0, 0.3, 0.7}) {
      const double s = wave_symbol(WaveKind::sine, t, {xn});
      e1 = std::max(e1, std::abs(wave_kernel_marginal(1, t, xn) - s * s));
      e3 = std::max(e3, std::abs(wave_kernel_marginal(3, t, xn, WaveKernelVariant::sphere_d3) - s * s));
      c.notes.push_back("wave kernel marginal at |xi|=" + fmt(xn) + ": d=2 closed form " +
                        fmt(wave_kernel_marginal(2, t, xn)) + ", d=3 closed form " +
                        fmt(wave_kernel_marginal(3, t, xn)) + ", sigma^2 " + fmt(s * s));
    }
    add_le(c, "wave.kernel_marginal_d1", "int kappa^(1)(s,xi) ds = sigma(xi)^2", "wave kernel", e1, 1e-8);
    add_le(c, "wave.kernel_marginal_d3_sphere", "int kappa(s,xi) ds = sigma(xi)^2 for the sphere-measure form",
           "wave kernel", e3, 1e-8);
  });

  guard(c, "wave.kernel_d2_sampled_mass", "d=2 sampled kernel mass", [&] {
    const Grid g2 = make_grid(2, 64, 8.0);
    const auto sym = sample(g2.dual(), [&](const Point& xi) {
      return cplx(wave_symbol(WaveKind::sine, t, xi));
    }, true);
    const auto k = kernel_from_symbol(sym, g2, {SymbolRoute::symbol_wigner, 1.0});
    const std::size_t m0 = k.samples.freq.ravel({32, 32, 0});
    cplx s = 0.0;
    for (std::size_t i = 0; i < k.samples.pos.size(); ++i) s += k.samples.at(i, m0);
    s *= std::pow(k.samples.pos.spacing(), 2);
    const double closed = wave_kernel_marginal(2, t, 0.0);
    c.notes.push_back("d=2 kernel mass at xi=0: sampled " + fmt(s.real()) + ", closed form " + fmt(closed) +
                      ", sigma(0)^2 = " + fmt(t * t));
    add_close(c, "wave.kernel_d2_sampled_mass", "sampled d=2 kernel mass at xi=0 equals sigma(0)^2",
              "kappa = W(sigma)(xi,-s)", s.real(), t * t, 1e-6);
  });

  for (double tl : {1.0, 3.0}) {
    const std::string id = "wave.lacuna.t" + fmt(tl);
    guard(c, id, "lacuna report", [&] {
      const auto r = lacuna_report(tl, g);
      add_le(c, id + ".center", "Gabor center-to-peak ratio against e^{-pi t^2/2}", "lacuna",
             std::abs(r.center_ratio - r.center_ratio_closed), 1e-8, "ratio " + fmt(r.center_ratio));
      add_le(c, id + ".ghost_period", "ghost oscillation period against 1/(2t), in frequency bins", "ghost term",
             std::abs(r.ghost_period - r.ghost_period_expected) / r.frequency_bin, 1.0,
             "period " + fmt(r.ghost_period));
      add_ge(c, id + ".ghost_shape", "correlation with (1/2) cos(4 pi xi t) W(phi_eps)(0, xi)", "ghost term",
             r.ghost_correlation, 0.99);
      c.notes.push_back("ghost amplitude |W(E_eps)(0,0)| at t=" + fmt(tl) + ": " + fmt(r.ghost_amplitude));
    });
  }

  guard(c, "wave.lacuna_gabor_offcenter", "cosine propagator Gabor modulus at s=0, xi=eta", [&] {
    const Operator cosT = multiplier_op([&](const Point& xi) {
      return cplx(wave_symbol(WaveKind::cosine, t, xi));
    });
    const double gg = std::pow(norm2(win.field), 2);
    double worst = 0.0;
    for (double xi : {0.1, 0.2, 0.3}) {
      const double a = std::abs(gabor_numeric(cosT, {0.0, xi}, {0.0, xi}, win)) / gg;
      worst = std::max(worst, std::abs(a - std::exp(-0.5 * pi * t * t) * std::abs(std::cos(2 * pi * xi * t))));
    }
    add_le(c, "wave.lacuna_gabor_offcenter", "|h|/||g||^2 = e^{-pi t^2/2}|cos(2 pi xi t)| at s=0, xi=eta",
           "lacuna", worst, 1e-10);
  });

  guard(c, "wave.fit_decay", "decay fit of the d=1 wave slice", [&] {
    GaborSlice sl;
    sl.fixed_z = {0.0, 0.0};
    sl.w_pos_axis = Grid{1, 64, 8.0};
    sl.w_freq_axis = Grid{1, 64, 8.0};
    evaluate_slice(sl, [&](const Point& z, const Point& w) {
      return cplx(std::sqrt(gabor_wave_modsq(t, 1, z, w, {32, 1})));
    });
    const auto fp = fit_decay(sl, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::position, 3.5});
    // Farther out in |xi-eta| the xi+eta overlap factor has zeros and log|h| is no longer
    // a power law; the fit window stops before the first one.
    const auto ff = fit_decay(sl, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::frequency, 1.0});
    const auto fw = fit_decay(sl, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::frequency, 3.5});
    add_close(c, "wave.fit_decay.position", "best exponent along |x-y| <= 3.5", "decay fit", fp.exponent, 2.0, 0.0);
    add_close(c, "wave.fit_decay.frequency", "best exponent along |xi-eta| <= 1", "decay fit", ff.exponent, 2.0,
              0.0);
    c.notes.push_back("wave d=1 frequency-direction fit over |xi-eta| <= 3.5 selects p=" + fmt(fw.exponent) +
                      " (max misfit " + fmt(fw.residual) + ")");
  });
}

// ---------------------------------------------------------------- hermite

void suite_hermite(Ctx& c) {
  resolution_check(c, "hermite");
  const Grid& g = c.g;
  const Window win = gaussian_window(g);

  guard(c, "hermite.semigroup", "R_a R_b = R_{a+b}", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 900);
    const auto ab = hermite_apply({{0.4}}, hermite_apply({{0.7}}, f));
    const auto s = hermite_apply({{1.1}}, f);
    add_le(c, "hermite.semigroup", "R_0.4 R_0.7 f against R_1.1 f (rel L2)", "Hermite semigroup",
           rel_l2_diff(ab.values, s.values), 1e-8);
  });

  guard(c, "hermite.ground_state", "R_theta g = e^{-theta/2} g", [&] {
    const auto r = hermite_apply({{0.9}}, win.field);
    std::vector<cplx> want = win.field.values;
    for (auto& v : want) v *= std::exp(-0.45);
    add_le(c, "hermite.ground_state", "R_theta g = e^{-theta/2} g", "Hermite semigroup",
           max_abs_diff(r.values, want), 1e-12);
  });

  guard(c, "hermite.frft_fixed_point", "F_mu g = g", [&] {
    double worst = 0.0;
    for (double mu : {0.3, 1.1, 2.0, -0.7, 0.5 * pi, 3.0, pi})
      worst = std::max(worst, max_abs_diff(frft_apply(mu, win.field).values, win.field.values));
    add_le(c, "hermite.frft_fixed_point", "Gaussian fixed point of F_mu", "fractional Fourier transform",
           worst, 1e-8);
  });

  guard(c, "hermite.frft_quarter", "F_{pi/2} is the Fourier transform", [&] {
    const Grid s = make_grid(1, g.n, std::sqrt(static_cast<double>(g.n)));
    const auto f = random_smooth_field(s, c.cfg.seed + 901);
    add_le(c, "hermite.frft_quarter", "F_{pi/2} f against dft(f) (rel max)", "fractional Fourier transform",
           rel_max(frft_apply(0.5 * pi, f).values, dft(f, Direction::forward).values), 1e-8);
  });

  guard(c, "hermite.frft_group", "F_a F_b = F_{a+b}", [&] {
    const auto f = random_smooth_field(g, c.cfg.seed + 902);
    double worst = 0.0;
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.4, 0.9}, {1.2, 1.5}, {-0.6, 2.2}})
      worst = std::max(worst, rel_l2_diff(frft_apply(a, frft_apply(b, f)).values, frft_apply(a + b, f).values));
    add_le(c, "hermite.frft_group", "F_a F_b f against F_{a+b} f (rel L2)", "fractional Fourier transform",
           worst, 1e-8);
  });

  guard(c, "hermite.gabor", "Hermite Gabor matrix against the numeric propagator", [&] {
    const double th = 1.0;
    const Operator R = [&](const SampledField& f) { return hermite_apply({{th}}, f); };
    const Point z0{0.5, 0.3}, w0{c.on_grid(1.0), -0.4};
    const double measured = std::abs(gabor_numeric(R, z0, w0, win)) / gabor_hermite_mod({th}, z0, w0);
    const double analytic = hermite_normalization({th});
    add_le(c, "hermite.gabor.normalization", "measured normalization against (1 - e^{-2 theta})^{1/2}",
           "Hermite Gabor normalization", std::abs(measured - analytic) / analytic, 1e-8,
           "measured " + fmt(measured));
    c.notes.push_back("Hermite Gabor normalization at theta=1: measured " + fmt(measured) + ", analytic " +
                      fmt(analytic));
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const Point z{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1.5, 1.5)};
      const Point w{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1.5, 1.5)};
      const double a = std::abs(gabor_numeric(R, z, w, win)), b = measured * gabor_hermite_mod({th}, z, w);
      worst = std::max(worst, std::abs(a - b) / b);
    }
    add_le(c, "hermite.gabor.numeric", "normalized closed form against |numeric| at 25 points (rel)",
           "Hermite Gabor modulus", worst, 1e-5);
  });

  guard(c, "hermite.gabor.example", "d=1, theta=1, z=w=0", [&] {
    add_close(c, "hermite.gabor.example", "gabor_hermite_mod(1, 0, 0) = sinh(1)^{-1/2}/2", "Hermite Gabor modulus",
              gabor_hermite_mod({1.0}, {0, 0}, {0, 0}), 0.4612, 1e-4);
  });

  guard(c, "hermite.gabor.identity", "identity-axis normalization", [&] {
    const Operator I = [](const SampledField& f) { return f; };
    const Point z{0.5, 0.2}, w{c.on_grid(-0.25), 0.6};
    const double r = std::abs(gabor_numeric(I, z, w, win)) / gabor_hermite_mod({0.0}, z, w);
    add_close(c, "hermite.gabor.identity", "|<pi(z)g, pi(w)g>| / gabor_hermite_mod(0) equals sqrt(2)",
              "Hermite Gabor normalization", r, std::sqrt(2.0), 1e-10);
  });

  const double th = 0.7, mu = 1.3, tt = 1.0;

  guard(c, "complex_hermite.gabor", "complex Hermite Gabor modulus against the numeric propagator", [&] {
    const Operator C = [&](const SampledField& f) { return complex_hermite_apply({{th}, mu, tt}, f); };
    const double norm = hermite_normalization({th * tt});
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Point z{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1.5, 1.5)};
      const Point w{c.on_grid(c.uniform(-1.5, 1.5)), c.uniform(-1.5, 1.5)};
      const double a = std::abs(gabor_numeric(C, z, w, win));
      const double b = norm * gabor_complex_hermite_mod(th, mu, tt, z, w);
      worst = std::max(worst, std::abs(a - b) / b);
    }
    add_le(c, "complex_hermite.gabor", "normalized closed form against |numeric| at 10 points (rel)",
           "complex Hermite Gabor modulus", worst, 1e-5);
  });

  guard(c, "complex_hermite.mu0", "mu = 0 reduces to the Hermite form", [&] {
    const Point z{0.3, -0.8}, w{0.1, 0.4};
    add_le(c, "complex_hermite.mu0", "gabor_complex_hermite_mod(mu=0) - gabor_hermite_mod", "complex Hermite",
           std::abs(gabor_complex_hermite_mod(th, 0.0, tt, z, w) - gabor_hermite_mod({th * tt}, z, w)), 1e-16);
  });

  guard(c, "complex_hermite.peak", "argmax of w -> |h(z,w)| on a fine grid", [&] {
    const Point z{0.0, 1.0};
    const double h = 0.01;
    double best = -1.0;
    Point arg{0, 0};
    for (int i = -200; i <= 200; ++i)
      for (int j = -200; j <= 200; ++j) {
        const Point w{i * h, j * h};
        const double v = gabor_complex_hermite_mod(th, mu, tt, z, w);
        if (v > best) {
          best = v;
          arg = w;
        }
      }
    const Point sz = rotate_phase_space(mu * tt, z);
    const double damp = std::exp(-th * tt);
    const double dist = std::hypot(arg[0] - damp * sz[0], arg[1] - damp * sz[1]);
    const double ang = std::abs(std::remainder(std::atan2(arg[1], arg[0]) - std::atan2(sz[1], sz[0]), 2 * pi));
    add_le(c, "complex_hermite.peak_location", "argmax distance from e^{-theta t} S_{mu t} z in grid cells",
           "complex Hermite rotation", dist / h, 1.0);
    add_le(c, "complex_hermite.peak_angle", "argmax angle against the angle of S_{mu t} z (rad)",
           "complex Hermite rotation", ang, 2.0 * h / std::hypot(arg[0], arg[1]));
    c.notes.push_back("complex Hermite argmax (" + fmt(arg[0]) + ", " + fmt(arg[1]) + "); S_{mu t} z = (" +
                      fmt(sz[0]) + ", " + fmt(sz[1]) + "), distance " +
                      fmt(std::hypot(arg[0] - sz[0], arg[1] - sz[1])));
  });

  guard(c, "hermite.kernel", "Hermite Wigner kernels", [&] {
    const Grid gh = make_grid(1, 128, 12.0);
    const Window wh = gaussian_window(gh);
    const auto f = tf_shift(wh.field, {0.75, 0.5});
    const auto W = cross_wigner(f, f);
    const double t8 = 0.8;
    const auto Rf = hermite_apply({{t8}}, f);
    add_le(c, "hermite.kernel_action", "kernel action on W f against W(R_theta f), rel L2 (n=128, L=12)",
           "Hermite Wigner kernel",
           rel_l2_diff(apply_kernel(make_hermite_kernel({t8}), W).values, cross_wigner(Rf, Rf).values), 1e-4);
    const double cm = 1.3, ct = 0.5;
    const auto Cf = complex_hermite_apply({{t8}, cm, ct}, f);
    add_le(c, "complex_hermite.kernel_action", "kernel action on W f against W(R F f), rel L2",
           "complex Hermite Wigner kernel",
           rel_l2_diff(apply_kernel(make_complex_hermite_kernel(t8, cm, ct, 1), W).values,
                       cross_wigner(Cf, Cf).values),
           1e-4);
    const Point z{0.3, -0.2}, w{-0.1, 0.5};
    add_le(c, "hermite.kernel_symmetry", "k_W(z,w) = k_W(w,z)", "Hermite Wigner kernel",
           std::abs(kernel_hermite({t8}, z, w) - kernel_hermite({t8}, w, z)), 0.0);
    add_le(c, "complex_hermite.kernel_mu0", "complex Hermite kernel at mu=0 equals the Hermite kernel",
           "complex Hermite Wigner kernel",
           std::abs(kernel_complex_hermite(t8, 0.0, 1.0, z, w) - kernel_hermite({t8}, z, w)), 1e-15);
    add_close(c, "hermite.kernel_origin", "k_W(0,0) = sinh(1)^{-1}", "Hermite Wigner kernel",
              kernel_hermite({1.0}, {0, 0}, {0, 0}), 1.0 / std::sinh(1.0), 1e-15);
  });
}

// ---------------------------------------------------------------- metaplectic

void suite_metaplectic(Ctx& c) {
  resolution_check(c, "metaplectic");
  using Mat = Eigen::MatrixXcd;

  guard(c, "metaplectic.generators", "generators are symplectic", [&] {
    double worst = 0.0;
    for (int d = 1; d <= 2; ++d) {
      Mat E = Mat::Identity(d, d) * 1.5, Q = Mat::Identity(d, d) * 0.7;
      if (d == 2) {
        E(0, 1) = 0.3;
        Q(0, 1) = Q(1, 0) = -0.4;
      }
      for (const auto& s : {sp_J(d), sp_D(E), sp_V(Q), sp_R(std::vector<double>(d, 0.8)),
                            sp_Vi(std::vector<double>(d, 0.6)), sp_S(d, 1.3)})
        worst = std::max(worst, sp_is_symplectic(s).residual);
    }
    add_le(c, "metaplectic.generators", "max residual of S^T J S - J over the generators", "symplectic group",
           worst, 1e-10);
  });

  guard(c, "metaplectic.random_words", "50 random words of length <= 6", [&] {
    double worst = 0.0, tens = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int d = 1 + i % 2, len = 1 + i % 6;
      const auto a = random_word(d, len, c.cfg.seed + 1000 + i);
      worst = std::max(worst, sp_is_symplectic(a).residual);
      const auto b = random_word(d, len, c.cfg.seed + 2000 + i);
      tens = std::max(tens, sp_is_symplectic(sp_tensor(a, b)).residual);
    }
    add_le(c, "metaplectic.random_words", "max residual over 50 random words", "symplectic group", worst, 1e-10);
    add_le(c, "metaplectic.tensor_random", "max residual of tensors of random words", "tensor construction",
           tens, 1e-10);
  });

  guard(c, "metaplectic.factorization", "R_{theta t} S_{mu t} entries", [&] {
    const double th = 0.7, mu = 1.3, t = 1.0;
    const auto P = sp_compose(sp_R({th * t}), sp_S(1, mu * t));
    const cplx a(th * t, mu * t), I(0.0, 1.0);
    Mat want(2, 2);
    want << std::cosh(a), -I * std::sinh(a), I * std::sinh(a), std::cosh(a);
    add_le(c, "metaplectic.factorization", "R_{theta t} S_{mu t} against cosh/sinh((theta + i mu) t)",
           "complex Hermite factorization", (P.m - want).cwiseAbs().maxCoeff(), 1e-12);
  });

  guard(c, "metaplectic.algebra", "composition identities", [&] {
    const auto r = sp_compose(sp_R({0.4}), sp_R({0.7}));
    double e = (r.m - sp_R({1.1}).m).cwiseAbs().maxCoeff();
    const auto w = random_word(2, 5, c.cfg.seed + 3000);
    e = std::max(e, (sp_compose(w, sp_inverse(w)).m - Mat::Identity(4, 4)).cwiseAbs().maxCoeff());
    e = std::max(e, (sp_S(1, 0.5 * pi).m - sp_J(1).m).cwiseAbs().maxCoeff());
    e = std::max(e, (sp_R({0.0}).m - Mat::Identity(2, 2)).cwiseAbs().maxCoeff());
    add_le(c, "metaplectic.algebra", "R addition, S S^{-1} = I, S_{pi/2} = J, R_0 = I", "symplectic algebra", e,
           1e-12);
    Mat jj = Mat::Zero(4, 4);
    jj.topRightCorner(2, 2) = Mat::Identity(2, 2);
    jj.bottomLeftCorner(2, 2) = -Mat::Identity(2, 2);
    add_le(c, "metaplectic.tensor_layout", "J (x) J equals J in dimension 2", "tensor construction",
           (sp_tensor(sp_J(1), sp_J(1)).m - jj).cwiseAbs().maxCoeff(), 0.0);
    Mat d1(2, 2), d2(2, 2);
    d1 << 2, 0, 0, 0.5;
    d2 << 2, 0, 0, 2;
    add_ge(c, "metaplectic.membership", "diag(2,1/2) accepted and diag(2,2) rejected", "symplectic test",
           (sp_is_symplectic(d1).symplectic && !sp_is_symplectic(d2).symplectic) ? 1.0 : 0.0, 1.0);
  });

  guard(c, "metaplectic.covariance", "W(F_mu u) = W u o S_mu^{-1}", [&] {
    const Grid s = make_grid(1, c.cfg.grid_n, std::sqrt(static_cast<double>(c.cfg.grid_n)));
    const auto u = random_smooth_field(s, c.cfg.seed + 1100);
    const auto W = cross_wigner(u, u);
    const Grid& q = W.freq;
    const int r = static_cast<int>(std::lround(s.spacing() / q.spacing()));  // pos cell in freq cells
    double worst = 0.0;
    for (double mu : {0.5 * pi, pi}) {
      const auto v = frft_apply(mu, u);
      const auto Wv = cross_wigner(v, v);
      // Points (x, xi) with both coordinates multiples of dx map onto grid points.
      const double lim = 0.25 * s.extent;
      for (int ip = 0; ip < s.n; ++ip) {
        const double x = s.coord(ip);
        if (std::abs(x) > lim) continue;
        for (int iq = 0; iq < q.n; iq += r) {
          const double xi = q.coord(iq);
          if (std::abs(xi) > lim) continue;
          const Point src = rotate_phase_space(-mu, {x, xi});
          const int jp = static_cast<int>(std::lround((src[0] - s.coord(0)) / s.spacing()));
          const int jq = static_cast<int>(std::lround((src[1] - q.coord(0)) / q.spacing()));
          worst = std::max(worst, std::abs(Wv.at(ip, iq) - W.at(jp, jq)));
        }
      }
    }
    add_le(c, "metaplectic.covariance", "max |W(F_mu u) - W u o S_mu^{-1}| / max |W u|, mu in {pi/2, pi}",
           "metaplectic covariance", worst / max_abs(W.values), 1e-8);
  });

  guard(c, "metaplectic.hermite_intertwining", "W(R f) = D_{sqrt2} R_{(theta,theta)} D_{1/sqrt2} W f", [&] {
    const int n = 128;
    const double L = 8.0, th = 0.6;
    const Grid g1 = make_grid(1, n, L);
    const auto f = tf_shift(gaussian_window(g1).field, {0.5, -0.25});
    const auto W = cross_wigner(f, f);
    const auto Rf = hermite_apply({{th}}, f);
    const auto WR = cross_wigner(Rf, Rf);
    // W lives on spacing 1/16 in both variables; the dilation by 1/sqrt 2 relabels it onto
    // a 2-d grid of extent L sqrt 2.
    const Grid g2 = make_grid(2, n, L * std::sqrt(2.0));
    SampledField V(g2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) V.values[g2.ravel({i, j, 0})] = 0.5 * W.at(i, j);
    const auto RV = hermite_apply({{th, th}}, V);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(std::abs(2.0 * RV.values[g2.ravel({i, j, 0})]) - std::abs(WR.at(i, j))));
    add_le(c, "metaplectic.hermite_intertwining", "modulus deviation / max |W(R f)|", "Hermite intertwining",
           worst / max_abs(WR.values), 1e-7);
  });
}

using SuiteFn = void (*)(Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t = {
      {"transforms", suite_transforms},
      {"heat", suite_heat},
      {"wave", suite_wave},
      {"hermite", suite_hermite},
      {"metaplectic", suite_metaplectic}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"transforms", "heat", "wave", "hermite", "metaplectic", "all"};
  return names;
}

SampledField random_smooth_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cen(-1.5, 1.5), wid(0.7, 1.4), mod(-1.5, 1.5), amp(-1.0, 1.0);
  struct Bump {
    Point c, m;
    double w;
    cplx a;
  };
  std::vector<Bump> bumps(3);
  for (auto& b : bumps) {
    b.c.resize(g.dim);
    b.m.resize(g.dim);
    for (int a = 0; a < g.dim; ++a) {
      b.c[a] = cen(rng);
      b.m[a] = mod(rng);
    }
    b.w = wid(rng);
    b.a = cplx(amp(rng), amp(rng));
  }
  return sample(g, [&](const Point& x) {
    cplx s = 0.0;
    for (const auto& b : bumps) {
      double r2 = 0.0, ph = 0.0;
      for (int a = 0; a < g.dim; ++a) {
        r2 += (x[a] - b.c[a]) * (x[a] - b.c[a]);
        ph += b.m[a] * x[a];
      }
      s += b.a * std::exp(-pi * r2 / (b.w * b.w)) * std::polar(1.0, 2.0 * pi * ph);
    }
    return s;
  });
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown suite: " + name);
  SuiteReport rep;
  rep.suite = name;
  rep.config = cfg;
  for (const auto& [sname, fn] : suite_table()) {
    if (name != "all" && name != sname) continue;
    Ctx c{cfg, Grid{1, std::max(cfg.grid_n, 8), cfg.extent}, {}, {}, std::mt19937_64(cfg.seed)};
    try {
      c.g = make_grid(1, cfg.grid_n, cfg.extent);
    } catch (const std::exception& e) {
      rep.entries.push_back({sname + ".grid", "grid construction", "", std::numeric_limits<double>::quiet_NaN(),
                             0.0, 0.0, false, std::string("error: ") + e.what()});
      continue;
    }
    fn(c);
    for (auto& e : c.entries) rep.entries.push_back(std::move(e));
    for (auto& n : c.notes) rep.notes.push_back(sname + ": " + n);
  }
  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const CheckEntry& a, const CheckEntry& b) { return a.id < b.id; });
  rep.overall = !rep.entries.empty() &&
                std::all_of(rep.entries.begin(), rep.entries.end(), [](const CheckEntry& e) { return e.pass; });
  return rep;
}

nlohmann::json report_to_json(const SuiteReport& r) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"id", e.id},
                       {"description", e.description},
                       {"anchor", e.anchor},
                       {"measured", num(e.measured)},
                       {"expected", num(e.expected)},
                       {"tolerance", num(e.tolerance)},
                       {"pass", e.pass},
                       {"diagnostic", e.diagnostic}});
  return {{"suite", r.suite},
          {"config", {{"grid_n", r.config.grid_n}, {"extent", r.config.extent}, {"seed", r.config.seed}}},
          {"seed", r.config.seed},
          {"entries", entries},
          {"notes", r.notes},
          {"overall", r.overall}};
}

}  // namespace phasekit
