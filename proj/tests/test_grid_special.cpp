#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phasekit/grid.hpp"
#include "phasekit/special.hpp"

using namespace phasekit;

TEST_CASE("grid construction and indexing") {
  CHECK_THROWS_AS(make_grid(0, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 48, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 64, -1.0), std::invalid_argument);

  const Grid g = make_grid(2, 16, 4.0);
  CHECK(g.size() == 256);
  CHECK(g.coord(0) == doctest::Approx(-2.0));
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.dual().spacing() == doctest::Approx(0.25));
  CHECK(g.half_dual().spacing() == doctest::Approx(0.125));
  for (std::size_t idx : {std::size_t(0), std::size_t(17), std::size_t(255)}) {
    const auto k = g.unravel(idx);
    CHECK(g.ravel(k) == idx);
  }
  // axis 0 is the slowest index
  const auto p = g.point(g.ravel({3, 5, 0}));
  CHECK(p[0] == doctest::Approx(g.coord(3)));
  CHECK(p[1] == doctest::Approx(g.coord(5)));
}

TEST_CASE("dft of a modulated Gaussian matches the continuous transform") {
  const Grid g = make_grid(1, 128, 12.0);
  const double x0 = 0.75, xi0 = -1.25;
  const auto f = sample(g, [&](const Point& x) {
    return std::polar(std::exp(-oracle::pi * (x[0] - x0) * (x[0] - x0)), 2.0 * oracle::pi * xi0 * x[0]);
  });
  const auto F = dft(f, Direction::forward);
  REQUIRE(F.grid == g.dual());
  double err = 0.0;
  for (std::size_t k = 0; k < F.values.size(); ++k) {
    const double om = F.grid.coord(static_cast<int>(k));
    const cplx ref = std::exp(cplx(-oracle::pi * (om - xi0) * (om - xi0), -2.0 * oracle::pi * (om - xi0) * x0));
    err = std::max(err, std::abs(F.values[k] - ref));
  }
  CHECK(err < 1e-12);
  const auto back = dft(F, Direction::inverse);
  CHECK(max_abs_diff(back.values, f.values) < 1e-13);
}

TEST_CASE("dft in 2-d separates over axes") {
  const Grid g = make_grid(2, 64, 8.0);
  const auto f = sample(g, [](const Point& x) {
    return cplx(std::exp(-oracle::pi * (x[0] * x[0] + 2.0 * x[1] * x[1])));
  });
  const auto F = dft(f, Direction::forward);
  double err = 0.0;
  for (std::size_t k = 0; k < F.values.size(); ++k) {
    const auto w = F.grid.point(k);
    const double ref = std::exp(-oracle::pi * w[0] * w[0]) * std::exp(-oracle::pi * w[1] * w[1] / 2.0) / std::sqrt(2.0);
    err = std::max(err, std::abs(F.values[k] - ref));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("inner products carry the Riemann weight") {
  const Grid g = make_grid(1, 256, 16.0);
  const auto f = sample(g, [](const Point& x) { return cplx(std::exp(-oracle::pi * x[0] * x[0])); });
  CHECK(norm2(f) * norm2(f) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(std::abs(inner(f, f) - std::pow(norm2(f), 2)) < 1e-15);
}

TEST_CASE("gaussian_integral against adaptive quadrature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const cplx rho(0.2 + std::abs(u(rng)) * 2.0, 2.0 * u(rng));
    const cplx c(u(rng), u(rng));
    const cplx ref = oracle::integrate_line(
        [&](double x) { return std::exp(-2.0 * oracle::pi * rho * x * x + 2.0 * oracle::pi * c * x); }, 1e-14);
    CHECK(std::abs(gaussian_integral(rho, {c}, 1) - ref) < 1e-9 * std::abs(ref));
  }
  // d = 2 factorizes
  const cplx rho(1.0, 0.5);
  const cplx v2 = gaussian_integral(rho, {cplx(0.3, 0.1), cplx(-0.2, 0.4)}, 2);
  const cplx v1 = gaussian_integral(rho, {cplx(0.3, 0.1)}, 1) * gaussian_integral(rho, {cplx(-0.2, 0.4)}, 1);
  CHECK(std::abs(v2 - v1) < 1e-14);
  CHECK(std::abs(gaussian_integral(cplx(0.5, 0.0), {}, 1) - 1.0) < 1e-15);
}

TEST_CASE("J0 against the Boost implementation and its zeros") {
  for (int i = 0; i <= 600; ++i) {
    const double z = 0.05 * i;
    CHECK(std::abs(bessel_j0(z) - oracle::bessel_j0(z)) < 1e-14);
    CHECK(std::abs(bessel_j0_series(z) - oracle::bessel_j0(z)) < 1e-12);
  }
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-15);
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(-3.0) == doctest::Approx(bessel_j0(3.0)).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto q = gauss_legendre(10, -1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], 19);
  CHECK(s == doctest::Approx((std::pow(2.0, 20) - 1.0) / 20.0).epsilon(1e-13));
}

TEST_CASE("erf") {
  CHECK(phasekit::erf(0.5) == doctest::Approx(0.5204998778130465).epsilon(1e-15));
  CHECK(phasekit::erf(-0.5) == doctest::Approx(-0.5204998778130465).epsilon(1e-15));
}
