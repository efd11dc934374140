#include <doctest.h>

#include "oracles.hpp"
#include "phasekit/gabor.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/tf.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;

TEST_CASE("heat reduced kernel is the Wigner distribution of the heat kernel") {
  for (auto gm : {ComplexDiffusion{1.0, 0.0}, ComplexDiffusion{1.0, 1.0}, ComplexDiffusion{0.3, -0.8}})
    for (double t : {0.1, 0.6}) {
      const auto k = make_heat_kernel(t, gm, 1);
      auto E = [&](double x) { return heat_kernel(t, gm, {x}); };
      for (double s : {0.0, 0.4, -1.1})
        for (double xi : {0.0, 0.3, -0.5}) {
          const cplx ref = oracle::wigner(E, E, s, xi, -12.0, 12.0);
          CHECK(std::abs(ref.imag()) < 1e-10);
          CHECK(k.normalization * k.eval({s}, {xi}) == doctest::Approx(ref.real()).epsilon(1e-8));
        }
    }
}

TEST_CASE("d = 1 wave kernel is the Wigner distribution of the fundamental solution") {
  const double t = 1.0;
  for (double s : {0.0, 0.25, -0.6, 0.95})
    for (double xi : {0.05, 0.4, -1.3}) {
      const double a = t - std::abs(s);
      // E = (1/2) 1_{[-t, t]}: the product E(s+u) E(s-u) is 1/4 on |u| <= t - |s|
      const cplx ref = 0.5 * oracle::integrate([&](double u) { return std::polar(1.0, -4.0 * oracle::pi * u * xi); }, -a, a);
      CHECK(kernel_wave(1, t, {s}, {xi}) == doctest::Approx(ref.real()).epsilon(1e-12));
    }
  CHECK(kernel_wave(1, t, {1.2}, {0.3}) == 0.0);
}

TEST_CASE("d = 3 sphere-measure kernel has marginal sigma^2") {
  for (double xn : {0.0, 0.2, 0.5}) {
    const double s = wave_symbol(WaveKind::sine, 1.0, {xn});
    CHECK(wave_kernel_marginal(3, 1.0, xn, WaveKernelVariant::sphere_d3) == doctest::Approx(s * s).epsilon(1e-8));
  }
  CHECK_THROWS_AS(wave_kernel_marginal(2, 1.0, 0.0, WaveKernelVariant::sphere_d3), std::invalid_argument);
}

TEST_CASE("Hermite kernels") {
  const Point z{0.3, -0.2}, w{-0.1, 0.5};
  const double th = 0.8;
  const double c = 1.0 / std::tanh(th), sh = std::sinh(th);
  const double ref = std::exp(-2.0 * oracle::pi * c * (0.09 + 0.04 + 0.01 + 0.25) + 4.0 * oracle::pi / sh * (-0.03 - 0.1)) / sh;
  CHECK(kernel_hermite({th}, z, w) == doctest::Approx(ref).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_hermite({0.0}, z, w), std::invalid_argument);
  CHECK(make_hermite_kernel({th, th}).normalization == 4.0);
  // cross term z . S_{mu t} w
  const double mu = 1.1, t = 0.7;
  const Point sw = rotate_phase_space(mu * t, w);
  const double c2 = 1.0 / std::tanh(th * t), s2 = std::sinh(th * t);
  const double ref2 = std::exp(-2.0 * oracle::pi * c2 * (0.13 + 0.26) + 4.0 * oracle::pi / s2 * (z[0] * sw[0] + z[1] * sw[1])) / s2;
  CHECK(kernel_complex_hermite(th, mu, t, z, w) == doctest::Approx(ref2).epsilon(1e-14));
}

TEST_CASE("kernel_from_symbol routes agree with each other and reject truncated symbols") {
  const Grid g = make_grid(1, 128, 12.0);
  const ComplexDiffusion gm{1.0, 0.5};
  const auto sym = sample(g.dual(), [&](const Point& xi) { return heat_symbol(0.2, gm, xi); }, true);
  const auto a = kernel_from_symbol(sym, g, {SymbolRoute::symbol_wigner});
  const auto b = kernel_from_symbol(sym, g, {SymbolRoute::kernel_wigner});
  // compare on shared (s, xi) points
  const auto hk = make_heat_kernel(0.2, gm, 1);
  for (double s : {0.0, 0.375, -0.75})
    for (double xi : {0.0, 1.0 / 6.0, -1.0 / 3.0}) {
      const double want = hk.normalization * hk.eval({s}, {xi});
      CHECK(a.eval({s}, {xi}) == doctest::Approx(want).epsilon(1e-9));
      CHECK(b.eval({s}, {xi}) == doctest::Approx(want).epsilon(1e-9));
    }
  CHECK_THROWS_AS(a.eval({0.01}, {0.0}), std::invalid_argument);
  const auto wave = sample(g.dual(), [](const Point& xi) { return cplx(wave_symbol(WaveKind::sine, 1.0, xi)); }, true);
  CHECK_THROWS_AS(kernel_from_symbol(wave, g), std::invalid_argument);
  CHECK_THROWS_AS(kernel_from_symbol(sym, make_grid(1, 64, 12.0)), std::invalid_argument);
}

TEST_CASE("apply_kernel: parallel, serial and reference paths agree") {
  const Grid g = make_grid(1, 64, 8.0);
  const auto f = random_smooth_field(g, 21);
  const auto W = cross_wigner(f, f);
  const auto sym = sample(g.dual(), [](const Point& xi) { return heat_symbol(0.2, {1.0, 0.0}, xi); }, true);
  for (const auto& k : {make_heat_kernel(0.3, {1.0, 0.5}, 1), make_wave_kernel(1, 1.0), make_hermite_kernel({0.6}),
                        make_complex_hermite_kernel(0.6, 1.3, 0.5, 1),
                        kernel_from_symbol(sym, g, {SymbolRoute::kernel_wigner})}) {
    const auto p = apply_kernel(k, W, Exec::parallel);
    const auto s = apply_kernel(k, W, Exec::serial);
    const auto r = reference::apply_kernel(k, W);
    CHECK(max_abs_diff(p.values, s.values) == 0.0);
    CHECK(max_abs_diff(p.values, r.values) < 1e-11 * max_abs(r.values));
  }
}

TEST_CASE("sampled and closed-form heat kernels act identically") {
  const Grid g = make_grid(1, 128, 16.0);
  const auto f = tf_shift(gaussian_window(g).field, {0.5, -0.25});
  const auto W = cross_wigner(f, f);
  const ComplexDiffusion gm{1.0, 0.0};
  const auto sym = sample(g.dual(), [&](const Point& xi) { return heat_symbol(0.3, gm, xi); }, true);
  const auto ks = kernel_from_symbol(sym, g, {SymbolRoute::kernel_wigner});
  const auto a = apply_kernel(ks, W), b = apply_kernel(make_heat_kernel(0.3, gm, 1), W);
  CHECK(rel_l2_diff(a.values, b.values) < 1e-8);
}

TEST_CASE("evolve_wigner_heat agrees with the kernel action") {
  const Grid g = make_grid(1, 128, 12.0);
  const auto f = random_smooth_field(g, 31);
  const auto W = cross_wigner(f, f);
  const auto a = evolve_wigner_heat(W, 0.2, 1.0, 0.7);
  const auto b = apply_kernel(make_heat_kernel(0.2, {1.0, 0.7}, 1), W);
  CHECK(rel_l2_diff(a.values, b.values) < 1e-4);
  CHECK(max_abs_diff(evolve_wigner_heat(W, 0.2, 1.0, 0.7, Exec::serial).values, a.values) == 0.0);
  CHECK_THROWS_AS(evolve_wigner_heat(W, 0.2, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("lacuna report guards its grid") {
  CHECK_THROWS_AS(lacuna_report(1.0, make_grid(1, 256, 8.0)), std::invalid_argument);  // t + 4 > L/2
  CHECK_THROWS_AS(lacuna_report(1.03, make_grid(1, 256, 16.0)), std::invalid_argument);  // off-grid t
  CHECK_THROWS_AS(lacuna_report(1.0, make_grid(2, 32, 16.0)), std::invalid_argument);
  const auto r = lacuna_report(1.0, make_grid(1, 256, 16.0));
  CHECK(r.center_ratio == doctest::Approx(std::exp(-0.5 * oracle::pi)).epsilon(1e-10));
  CHECK(r.xi.size() == r.ghost_slice.size());
}
