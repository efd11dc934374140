#include "phasekit/tf.hpp"

#include <cmath>

#include "fft.hpp"

namespace phasekit {

namespace {

inline int parity_sign(const std::array<int, 3>& k, int dim) {
  int s = 0;
  for (int a = 0; a < dim; ++a) s += k[a];
  return (s & 1) ? -1 : 1;
}

inline bool in_box(const std::array<int, 3>& k, int dim, int n) {
  for (int a = 0; a < dim; ++a)
    if (k[a] < 0 || k[a] >= n) return false;
  return true;
}

std::array<int, 3> on_grid_shift(const Grid& g, const Point& z) {
  std::array<int, 3> s{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double q = z[a] / g.spacing();
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
      throw std::invalid_argument("tf_shift: position part is not on the grid");
    s[a] = static_cast<int>(r);
  }
  return s;
}

void require_point(const Grid& g, const Point& z) {
  if (static_cast<int>(z.size()) != 2 * g.dim)
    throw std::invalid_argument("phase-space point must have 2d coordinates");
}

}  // namespace

Window gaussian_window(const Grid& g) {
  Window w;
  w.tag = Window::Tag::gaussian;
  w.field = sample(g, [](const Point& x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return cplx(std::exp(-pi * r2));
  });
  return w;
}

SampledField tf_shift(const SampledField& f, const Point& z) {
  const Grid& g = f.grid;
  require_point(g, z);
  const auto s = on_grid_shift(g, z);
  SampledField out(g, f.frequency_domain);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto k = g.unravel(i);
    std::array<int, 3> src{0, 0, 0};
    double phase = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      src[a] = ((k[a] - s[a]) % g.n + g.n) % g.n;
      phase += z[g.dim + a] * g.coord(k[a]);
    }
    out.values[i] = std::polar(1.0, 2.0 * pi * phase) * f.values[g.ravel(src)];
  }
  return out;
}

PhaseSpaceField stft(const SampledField& f, const Window& win, const Grid& freq_grid, Exec exec) {
  const Grid& g = f.grid;
  require_same_grid(g, win.field.grid, "stft");
  const bool fast = freq_grid == g.dual();
  if (freq_grid.dim != g.dim) throw std::invalid_argument("stft: frequency grid dimension");
  PhaseSpaceField out(g, freq_grid);
  const std::size_t N = g.size(), M = freq_grid.size();
  const double w = std::pow(g.spacing(), g.dim);
  const int half = g.n / 2;

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> h(N);
#pragma omp for schedule(static)
    for (std::size_t ip = 0; ip < N; ++ip) {
      const auto kx = g.unravel(ip);
      for (std::size_t j = 0; j < N; ++j) {
        auto kj = g.unravel(j);
        std::array<int, 3> kw{0, 0, 0};
        for (int a = 0; a < g.dim; ++a) kw[a] = kj[a] - kx[a] + half;
        cplx gv = in_box(kw, g.dim, g.n) ? win.field.values[g.ravel(kw)] : cplx(0.0);
        h[j] = f.values[j] * std::conj(gv);
      }
      if (fast) {
        for (std::size_t j = 0; j < N; ++j) h[j] *= double(parity_sign(g.unravel(j), g.dim));
        detail::fft_cube(h.data(), g.dim, g.n, -1);
        for (std::size_t m = 0; m < M; ++m)
          out.at(ip, m) = w * double(parity_sign(g.unravel(m), g.dim)) * h[m];
      } else {
        for (std::size_t m = 0; m < M; ++m) {
          Point xi = freq_grid.point(m);
          cplx s = 0.0;
          for (std::size_t j = 0; j < N; ++j) {
            Point y = g.point(j);
            double ph = 0.0;
            for (int a = 0; a < g.dim; ++a) ph += xi[a] * y[a];
            s += h[j] * std::polar(1.0, -2.0 * pi * ph);
          }
          out.at(ip, m) = w * s;
        }
      }
    }
  }
  return out;
}

PhaseSpaceField cross_wigner(const SampledField& f, const SampledField& gf, Exec exec) {
  const Grid& g = f.grid;
  require_same_grid(g, gf.grid, "cross_wigner");
  PhaseSpaceField out(g, g.half_dual());
  const std::size_t N = g.size();
  const double w = std::pow(2.0 * g.spacing(), g.dim);

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> a(N);
#pragma omp for schedule(static)
    for (std::size_t ip = 0; ip < N; ++ip) {
      const auto kx = g.unravel(ip);
      for (std::size_t jj = 0; jj < N; ++jj) {
        auto kj = g.unravel(jj);
        std::array<int, 3> kp{0, 0, 0}, km{0, 0, 0};
        int sgn = 0;
        for (int d = 0; d < g.dim; ++d) {
          int j = kj[d] < g.n / 2 ? kj[d] : kj[d] - g.n;
          kp[d] = kx[d] + j;
          km[d] = kx[d] - j;
          sgn += j;
        }
        if (in_box(kp, g.dim, g.n) && in_box(km, g.dim, g.n)) {
          cplx v = f.values[g.ravel(kp)] * std::conj(gf.values[g.ravel(km)]);
          a[jj] = (sgn & 1) ? -v : v;
        } else {
          a[jj] = 0.0;
        }
      }
      detail::fft_cube(a.data(), g.dim, g.n, -1);
      for (std::size_t m = 0; m < N; ++m) out.at(ip, m) = w * a[m];
    }
  }
  return out;
}

namespace reference {

PhaseSpaceField cross_wigner(const SampledField& f, const SampledField& gf) {
  const Grid& g = f.grid;
  require_same_grid(g, gf.grid, "cross_wigner");
  const Grid q = g.half_dual();
  PhaseSpaceField out(g, q);
  const double w = std::pow(2.0 * g.spacing(), g.dim);
  for (std::size_t ip = 0; ip < g.size(); ++ip) {
    const auto kx = g.unravel(ip);
    for (std::size_t m = 0; m < q.size(); ++m) {
      Point xi = q.point(m);
      cplx s = 0.0;
      for (std::size_t jj = 0; jj < g.size(); ++jj) {
        auto kj = g.unravel(jj);
        std::array<int, 3> kp{0, 0, 0}, km{0, 0, 0};
        double ph = 0.0;
        for (int d = 0; d < g.dim; ++d) {
          int j = kj[d] - g.n / 2;
          kp[d] = kx[d] + j;
          km[d] = kx[d] - j;
          ph += j * g.spacing() * xi[d];
        }
        if (!in_box(kp, g.dim, g.n) || !in_box(km, g.dim, g.n)) continue;
        s += f.values[g.ravel(kp)] * std::conj(gf.values[g.ravel(km)]) *
             std::polar(1.0, -4.0 * pi * ph);
      }
      out.at(ip, m) = w * s;
    }
  }
  return out;
}

PhaseSpaceField stft(const SampledField& f, const Window& win) {
  const Grid& g = f.grid;
  require_same_grid(g, win.field.grid, "stft");
  const Grid q = g.dual();
  PhaseSpaceField out(g, q);
  const double w = std::pow(g.spacing(), g.dim);
  for (std::size_t ip = 0; ip < g.size(); ++ip) {
    const auto kx = g.unravel(ip);
    for (std::size_t m = 0; m < q.size(); ++m) {
      Point xi = q.point(m);
      cplx s = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        auto kj = g.unravel(j);
        std::array<int, 3> kw{0, 0, 0};
        double ph = 0.0;
        for (int a = 0; a < g.dim; ++a) {
          kw[a] = kj[a] - kx[a] + g.n / 2;
          ph += xi[a] * g.coord(kj[a]);
        }
        if (!in_box(kw, g.dim, g.n)) continue;
        s += f.values[j] * std::conj(win.field.values[g.ravel(kw)]) *
             std::polar(1.0, -2.0 * pi * ph);
      }
      out.at(ip, m) = w * s;
    }
  }
  return out;
}

}  // namespace reference

}  // namespace phasekit
