#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phasekit/gabor.hpp"
#include "phasekit/propagators.hpp"

using namespace phasekit;

TEST_CASE("heat Gabor closed form against the frequency-side quadrature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (auto gm : {ComplexDiffusion{1.0, 0.0}, ComplexDiffusion{1.0, 1.0}, ComplexDiffusion{0.1, 1.0}})
    for (double t : {0.05, 0.5, 2.0})
      for (int i = 0; i < 4; ++i) {
        const double x = u(rng), xi = u(rng), y = u(rng), eta = u(rng);
        const cplx ref = oracle::multiplier_gabor(
            [&](double om) { return std::exp(-4.0 * oracle::pi * oracle::pi * cplx(gm.alpha, gm.beta) * t * om * om); },
            x, xi, y, eta);
        const cplx v = gabor_heat_closed(t, gm, {x, xi}, {y, eta}, 1);
        CHECK(std::abs(v - ref) < 1e-10 * std::max(std::abs(ref), 1e-6));
      }
}

TEST_CASE("heat Gabor closed form factorizes over dimensions") {
  const ComplexDiffusion gm{0.7, -0.4};
  const Point z{0.2, -0.3, 0.5, 0.1}, w{-0.4, 0.6, 0.3, -0.2};
  const cplx v2 = gabor_heat_closed(0.8, gm, z, w, 2);
  const cplx v1 = gabor_heat_closed(0.8, gm, {z[0], z[2]}, {w[0], w[2]}, 1) *
                  gabor_heat_closed(0.8, gm, {z[1], z[3]}, {w[1], w[3]}, 1);
  CHECK(std::abs(v2 - v1) < 1e-15);
  CHECK_THROWS_AS(gabor_heat_closed(1.0, gm, {0.0}, {0.0, 0.0}, 1), std::invalid_argument);
}

TEST_CASE("heat epsilon") {
  CHECK(heat_epsilon(0.5 / oracle::pi, 1.0, 0.0) == doctest::Approx(0.25 * oracle::pi).epsilon(1e-14));
  CHECK(heat_epsilon(0.0, 1.0, 0.0) == 0.0);
  // direct evaluation of the printed radicand
  for (double t : {0.01, 0.3, 4.0})
    for (double b : {0.0, 0.5, 2.0}) {
      const double a = 1.0 + 2.0 * oracle::pi * t, bb = 2.0 * oracle::pi * b * t;
      const double direct = 0.25 * oracle::pi * (1.0 - std::sqrt(1.0 - 8.0 * oracle::pi * t / (a * a + bb * bb)));
      CHECK(heat_epsilon(t, 1.0, b) == doctest::Approx(direct).epsilon(1e-10));
    }
  const auto e = golden_section_max([](double t) { return heat_epsilon(t, 2.0, 0.0); }, 1e-3, 1.0);
  CHECK(e.arg == doctest::Approx(0.25 / oracle::pi).epsilon(1e-10));
}

TEST_CASE("heat bound dominates the closed form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const ComplexDiffusion gm{0.1 + std::abs(u(rng)) / 2.0, u(rng)};
    const double t = std::abs(u(rng));
    const Point z{u(rng), u(rng)}, w{u(rng), u(rng)};
    CHECK(gabor_heat_bound(t, gm, z, w, 1) >= std::abs(gabor_heat_closed(t, gm, z, w, 1)));
  }
}

TEST_CASE("wave Gabor entry against the frequency-side quadrature") {
  for (double t : {0.5, 1.0, 2.0})
    for (const auto& zw : std::vector<std::array<double, 4>>{{0, 0, 0, 0}, {0.3, 0.5, -0.4, 0.2}, {1.0, -0.7, 0.2, -0.1}}) {
      const cplx ref = oracle::multiplier_gabor(
          [&](double om) {
            const double a = 2.0 * oracle::pi * std::abs(om);
            return cplx(a == 0.0 ? t : std::sin(a * t) / a);
          },
          zw[0], zw[1], zw[2], zw[3]);
      const Point z{zw[0], zw[1]}, w{zw[2], zw[3]};
      CHECK(std::abs(gabor_wave_entry(t, 1, z, w) - ref) < 1e-10);
      CHECK(gabor_wave_modsq(t, 1, z, w) == doctest::Approx(std::norm(ref)).epsilon(1e-9));
    }
}

TEST_CASE("wave overlap density") {
  for (double t : {0.5, 1.0, 3.0})
    for (double u : {0.0, 0.3, 0.9, 1.4}) {
      // m(u + r/2) m(u - r/2) restricts r to |r| <= 2(t - |u|)
      const double h = std::max(0.0, 2.0 * (t - std::abs(u)));
      const cplx ref = h > 0.0 ? 0.25 * oracle::integrate([](double r) { return cplx(std::exp(-oracle::pi * r * r / 4.0)); }, -h, h)
                               : cplx(0.0);
      CHECK(std::abs(wave_overlap_density(t, u, 0.0) - ref) < 1e-13);
      CHECK(std::abs(wave_overlap_closed(t, u) - ref.real()) < 1e-13);
    }
}

TEST_CASE("wave bounds dominate in d = 1, 2, 3") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int d = 1; d <= 3; ++d)
    for (int i = 0; i < 150; ++i) {
      Point z(2 * d), w(2 * d);
      for (int k = 0; k < 2 * d; ++k) {
        z[k] = u(rng);
        w[k] = u(rng);
      }
      const double t = 0.2 + std::abs(u(rng)) / 1.5;
      CHECK(gabor_wave_bound(t, d, z, w) >= std::abs(gabor_wave_entry(t, d, z, w, {24, 32})));
    }
  CHECK(wave_bound_constant(1.0) == doctest::Approx(0.5 * std::erf(std::sqrt(oracle::pi)) * 4.0 * std::exp(4.0 * oracle::pi)));
}

TEST_CASE("Hermite Gabor modulus against the Hermite-function expansion") {
  for (double th : {0.5, 1.0, 2.0})
    for (const auto& zw : std::vector<std::array<double, 4>>{{0, 0, 0, 0}, {0.5, 0.3, 1.0, -0.4}, {-1.0, 0.8, 0.2, 0.6}}) {
      const cplx ref = oracle::hermite_diagonal_gabor([&](int n) { return cplx(std::exp(-th * (n + 0.5))); },
                                                       zw[0], zw[1], zw[2], zw[3]);
      const double v = hermite_normalization({th}) * gabor_hermite_mod({th}, {zw[0], zw[1]}, {zw[2], zw[3]});
      CHECK(v == doctest::Approx(std::abs(ref)).epsilon(1e-9));
    }
  CHECK(gabor_hermite_mod({1.0}, {0, 0}, {0, 0}) == doctest::Approx(0.5 / std::sqrt(std::sinh(1.0))));
  CHECK(hermite_normalization({1.0, 0.0}) == doctest::Approx(std::sqrt(1.0 - std::exp(-2.0)) * std::sqrt(2.0)));
}

TEST_CASE("complex Hermite Gabor modulus against the Hermite-function expansion") {
  const double th = 0.7, mu = 1.3;
  for (double t : {0.5, 1.0})
    for (const auto& zw : std::vector<std::array<double, 4>>{{0, 1, 0.3, 0.2}, {0.5, -0.4, -0.2, 0.7}}) {
      // R_{theta t} F_{mu t} has eigenvalues e^{-theta t (n + 1/2)} e^{-i n mu t}
      const cplx ref = oracle::hermite_diagonal_gabor(
          [&](int n) { return std::exp(-th * t * (n + 0.5)) * std::polar(1.0, -n * mu * t); }, zw[0], zw[1], zw[2], zw[3]);
      const double v = hermite_normalization({th * t}) * gabor_complex_hermite_mod(th, mu, t, {zw[0], zw[1]}, {zw[2], zw[3]});
      CHECK(v == doctest::Approx(std::abs(ref)).epsilon(1e-9));
    }
  CHECK_THROWS_AS(gabor_complex_hermite_mod(0.0, 1.0, 1.0, {0, 0}, {0, 0}), std::invalid_argument);
  // depends on z only through S_{mu t} z
  const Point z{0.4, -0.9}, w{0.1, 0.2};
  const Point back = rotate_phase_space(-0.5, rotate_phase_space(0.5, z));
  CHECK(gabor_complex_hermite_mod(th, mu, 1.0, back, w) == doctest::Approx(gabor_complex_hermite_mod(th, mu, 1.0, z, w)));
}

TEST_CASE("slices and decay fits") {
  GaborSlice sl;
  sl.fixed_z = {0.0, 0.0};
  sl.w_pos_axis = Grid{1, 64, 8.0};
  sl.w_freq_axis = Grid{1, 32, 4.0};
  const GaborEntry id = [](const Point& z, const Point& w) { return gabor_heat_closed(0.0, {1.0, 0.0}, z, w, 1); };
  evaluate_slice(sl, id, Exec::serial);
  auto serial = sl.values;
  evaluate_slice(sl, id, Exec::parallel);
  CHECK(serial == sl.values);
  CHECK(sl.values.size() == 64 * 32);
  const auto w = sl.w_at(3, 5);
  CHECK(w[0] == doctest::Approx(sl.w_pos_axis.coord(3)));
  CHECK(w[1] == doctest::Approx(sl.w_freq_axis.coord(5)));

  const auto fit = fit_decay(sl, {1.0, 4.0 / 3.0, 2.0}, {DecayDirection::position, 3.0});
  CHECK(fit.exponent == 2.0);
  CHECK(fit.rate == doctest::Approx(0.5 * oracle::pi).epsilon(1e-8));
  CHECK(fit.prefactor == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  const auto ff = fit_decay(sl, {1.0, 2.0}, {DecayDirection::frequency, 1.9});
  CHECK(ff.exponent == 2.0);
  CHECK(ff.rate == doctest::Approx(0.5 * oracle::pi).epsilon(1e-8));

  GaborSlice zero = sl;
  std::fill(zero.values.begin(), zero.values.end(), cplx(0.0));
  CHECK_THROWS_AS(fit_decay(zero, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(sl, {}), std::invalid_argument);
}

TEST_CASE("golden-section search") {
  const auto e = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 1.0);
  CHECK(e.arg == doctest::Approx(0.3).epsilon(1e-9));
}
