#include <doctest.h>

#include "oracles.hpp"
#include "phasekit/propagators.hpp"
#include "phasekit/tf.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;

namespace {

SampledField hermite_function_field(const Grid& g, int n) {
  return sample(g, [&](const Point& x) { return cplx(oracle::hermite_functions(n, x[0])[n]); });
}

}  // namespace

TEST_CASE("symbols and parameter validation") {
  CHECK(std::abs(heat_symbol(0.5, {1.0, 0.0}, {0.3}) - std::exp(-4.0 * oracle::pi * oracle::pi * 0.5 * 0.09)) < 1e-15);
  CHECK(wave_symbol(WaveKind::sine, 1.5, {0.0}) == 1.5);
  CHECK(wave_symbol(WaveKind::cosine, 1.0, {0.25}) == doctest::Approx(std::cos(0.5 * oracle::pi)));
  CHECK_THROWS_AS(ComplexDiffusion({-1.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ComplexDiffusion({0.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(heat_symbol(0.0, {1.0, 0.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("heat multiplier equals convolution with the complex heat kernel") {
  const Grid g = make_grid(1, 256, 16.0);
  const ComplexDiffusion gm{0.5, 0.7};
  const double t = 0.3;
  const auto f = sample(g, [](const Point& x) { return cplx(std::exp(-oracle::pi * x[0] * x[0])); });
  const auto u = apply_multiplier([&](const Point& xi) { return heat_symbol(t, gm, xi); }, f);
  for (int k : {100, 128, 150}) {
    const double x = g.coord(k);
    const cplx ref = oracle::integrate(
        [&](double y) { return heat_kernel(t, gm, {x - y}) * std::exp(-oracle::pi * y * y); }, -8.0, 8.0);
    CHECK(std::abs(u.values[k] - ref) < 1e-11);
  }
  // kernel against its own closed form
  const cplx gam(0.5, 0.7);
  CHECK(std::abs(heat_kernel(t, gm, {0.4}) - std::exp(-0.16 / (4.0 * gam * t)) / std::sqrt(4.0 * oracle::pi * gam * t)) < 1e-14);
}

TEST_CASE("wave measures have total mass t and pair against the sine symbol") {
  for (int d = 1; d <= 3; ++d) {
    const WaveMeasure m{d, 1.3};
    CHECK(wave_measure_pairing(m, [](const Point&) { return 1.0; }) == doctest::Approx(1.3).epsilon(1e-13));
    // Fourier transform of the measure equals the sine symbol
    for (double xn : {0.2, 0.7}) {
      const cplx ft = wave_measure_pairing_complex(
          m, [&](const Point& y) { return std::polar(1.0, -2.0 * oracle::pi * xn * y[0]); });
      CHECK(std::abs(ft - wave_symbol(WaveKind::sine, 1.3, {xn})) < 1e-10);
    }
  }
}

TEST_CASE("R_theta acts diagonally on Hermite functions") {
  const Grid g = make_grid(1, 256, 16.0);
  for (int n : {0, 1, 2, 5, 9}) {
    const auto h = hermite_function_field(g, n);
    const auto r = hermite_apply({{0.6}}, h);
    std::vector<cplx> want = h.values;
    for (auto& v : want) v *= std::exp(-0.6 * (n + 0.5));
    CHECK(max_abs_diff(r.values, want) < 1e-12);
  }
  CHECK_THROWS_AS(hermite_apply({{-0.1}}, hermite_function_field(g, 0)), std::invalid_argument);
}

TEST_CASE("fractional Fourier transform on Hermite functions") {
  const Grid g = make_grid(1, 256, 16.0);
  for (double mu : {0.4, 1.0, 0.5 * oracle::pi, 2.5, -1.2})
    for (int n : {0, 1, 3, 6}) {
      const auto h = hermite_function_field(g, n);
      const auto r = frft_apply(mu, h);
      std::vector<cplx> want = h.values;
      for (auto& v : want) v *= std::polar(1.0, -n * mu);
      CHECK(max_abs_diff(r.values, want) < 1e-9);
    }
}

TEST_CASE("complex Hermite propagator is R after F") {
  const Grid g = make_grid(1, 128, 12.0);
  const auto f = random_smooth_field(g, 11);
  const auto a = complex_hermite_apply({{0.7}, 1.3, 0.8}, f);
  const auto b = hermite_apply({{0.7 * 0.8}}, frft_apply(1.3 * 0.8, f));
  CHECK(max_abs_diff(a.values, b.values) < 1e-13);
  CHECK(max_abs_diff(complex_hermite_apply({{0.7}, 1.3, 0.8}, f, Exec::serial).values, a.values) == 0.0);
}

TEST_CASE("2-d Hermite semigroup acts per axis") {
  const Grid g = make_grid(2, 64, 8.0);
  const auto f = sample(g, [](const Point& x) {
    return cplx(oracle::hermite_functions(2, x[0])[2] * oracle::hermite_functions(1, x[1])[1]);
  });
  const auto r = hermite_apply({{0.5, 1.0}}, f);
  std::vector<cplx> want = f.values;
  for (auto& v : want) v *= std::exp(-0.5 * 2.5 - 1.0 * 1.5);
  CHECK(max_abs_diff(r.values, want) < 1e-10);
}
