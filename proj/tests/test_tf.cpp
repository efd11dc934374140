#include <doctest.h>

#include "oracles.hpp"
#include "phasekit/tf.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;

namespace {

// Two modulated Gaussians; continuous analytic form for the oracle.
cplx test_function(double x) {
  return std::polar(std::exp(-oracle::pi * (x - 0.5) * (x - 0.5)), 2.0 * oracle::pi * 0.8 * x) +
         cplx(0.3, -0.6) * std::exp(-oracle::pi * (x + 1.0) * (x + 1.0) / 1.5);
}

}  // namespace

TEST_CASE("tf_shift translates and modulates") {
  const Grid g = make_grid(1, 64, 8.0);
  const auto f = sample(g, [](const Point& x) { return test_function(x[0]); });
  const Point z{0.5, 0.3};
  const auto s = tf_shift(f, z);
  for (int k = 10; k < 50; ++k) {
    const double x = g.coord(k);
    CHECK(std::abs(s.values[k] - std::polar(1.0, 2.0 * oracle::pi * 0.3 * x) * test_function(x - 0.5)) < 1e-12);
  }
  CHECK_THROWS_AS(tf_shift(f, {0.01, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(tf_shift(f, {0.0}), std::invalid_argument);
}

TEST_CASE("cross_wigner matches the continuous Wigner integral") {
  const Grid g = make_grid(1, 128, 12.0);
  const auto f = sample(g, [](const Point& x) { return test_function(x[0]); });
  const auto W = cross_wigner(f, f);
  REQUIRE(W.freq == g.half_dual());
  double err = 0.0;
  for (int ip : {40, 60, 64, 70, 90})
    for (int iq : {20, 50, 64, 80, 100}) {
      const cplx ref = oracle::wigner(test_function, test_function, W.pos.coord(ip), W.freq.coord(iq));
      err = std::max(err, std::abs(W.at(ip, iq) - ref));
    }
  CHECK(err < 1e-10);
}

TEST_CASE("stft matches the continuous short-time Fourier transform") {
  const Grid g = make_grid(1, 128, 12.0);
  const auto f = sample(g, [](const Point& x) { return test_function(x[0]); });
  const auto win = gaussian_window(g);
  const auto V = stft(f, win, g.dual());
  double err = 0.0;
  for (int ip : {50, 64, 72})
    for (int iq : {40, 64, 75}) {
      const double x = V.pos.coord(ip), xi = V.freq.coord(iq);
      const cplx ref = oracle::integrate(
          [&](double y) {
            return test_function(y) * std::exp(-oracle::pi * (y - x) * (y - x)) * std::polar(1.0, -2.0 * oracle::pi * xi * y);
          },
          -10.0, 10.0);
      err = std::max(err, std::abs(V.at(ip, iq) - ref));
    }
  CHECK(err < 1e-12);
  // an off-FFT frequency grid takes the direct-sum path and agrees on shared points
  const Grid coarse{1, 32, 8.0};
  const auto Vc = stft(f, win, coarse);
  for (int ip : {50, 64})
    for (int jq : {0, 9, 16, 31}) {
      const double xi = coarse.coord(jq);
      const int iq = static_cast<int>(std::lround((xi - V.freq.coord(0)) / V.freq.spacing()));
      CHECK(std::abs(Vc.at(ip, jq) - V.at(ip, iq)) < 1e-12);
    }
}

TEST_CASE("2-d Wigner of a Gaussian") {
  const Grid g = make_grid(2, 64, 8.0);
  const auto win = gaussian_window(g);
  const auto W = cross_wigner(win.field, win.field);
  double err = 0.0;
  for (std::size_t ip = 0; ip < W.pos.size(); ip += 37)
    for (std::size_t iq = 0; iq < W.freq.size(); iq += 29) {
      const auto x = W.pos.point(ip), q = W.freq.point(iq);
      const double r2 = x[0] * x[0] + x[1] * x[1] + q[0] * q[0] + q[1] * q[1];
      err = std::max(err, std::abs(W.at(ip, iq) - 2.0 * std::exp(-2.0 * oracle::pi * r2)));
    }
  CHECK(err < 1e-10);
}

TEST_CASE("serial, parallel and reference transforms agree") {
  const Grid g = make_grid(1, 64, 8.0);
  const auto f = random_smooth_field(g, 1), h = random_smooth_field(g, 2);
  const auto a = cross_wigner(f, h, Exec::serial), b = cross_wigner(f, h, Exec::parallel);
  CHECK(max_abs_diff(a.values, b.values) == 0.0);
  CHECK(max_abs_diff(a.values, reference::cross_wigner(f, h).values) < 1e-12 * max_abs(a.values));
  const auto win = gaussian_window(g);
  const auto s = stft(f, win, g.dual(), Exec::serial), p = stft(f, win, g.dual(), Exec::parallel);
  CHECK(max_abs_diff(s.values, p.values) == 0.0);
  CHECK(max_abs_diff(s.values, reference::stft(f, win).values) < 1e-12 * max_abs(s.values));

  const Grid g2 = make_grid(2, 16, 6.0);
  const auto f2 = random_smooth_field(g2, 3);
  const auto w2 = cross_wigner(f2, f2);
  CHECK(max_abs_diff(w2.values, reference::cross_wigner(f2, f2).values) < 1e-12 * max_abs(w2.values));
}

TEST_CASE("random_smooth_field is seeded") {
  const Grid g = make_grid(1, 64, 8.0);
  CHECK(random_smooth_field(g, 5).values == random_smooth_field(g, 5).values);
  CHECK(random_smooth_field(g, 5).values != random_smooth_field(g, 6).values);
}
