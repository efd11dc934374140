#pragma once

// Independent reference values: adaptive quadrature of continuous integrals and
// Hermite-function expansions, sharing nothing with the library beyond types.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

inline cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-13) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 20, tol);
  const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 20, tol);
  return {re, im};
}

inline cplx integrate_line(const std::function<cplx(double)>& f, double tol = 1e-13) {
  const double inf = std::numeric_limits<double>::infinity();
  return integrate(f, -inf, inf, tol);
}

// <T pi(z) g, pi(w) g> for a Fourier multiplier sigma in d = 1, computed on the
// Fourier side with the exact transforms of the shifted Gaussians.
inline cplx multiplier_gabor(const std::function<cplx(double)>& sigma, double x, double xi, double y,
                             double eta) {
  auto f = [&](double om) {
    const cplx a = std::exp(cplx(-pi * (om - xi) * (om - xi), -2.0 * pi * (om - xi) * x));
    const cplx b = std::exp(cplx(-pi * (om - eta) * (om - eta), -2.0 * pi * (om - eta) * y));
    return sigma(om) * a * std::conj(b);
  };
  // Integrand is concentrated near xi and eta.
  const double lo = std::min(xi, eta) - 8.0, hi = std::max(xi, eta) + 8.0;
  return integrate(f, lo, hi);
}

// Continuous W(f,g)(x, xi) = 2 \int f(x+u) conj g(x-u) e^{-4 pi i u xi} du in d = 1.
inline cplx wigner(const std::function<cplx(double)>& f, const std::function<cplx(double)>& g, double x,
                   double xi, double lo = -10.0, double hi = 10.0) {
  return 2.0 * integrate([&](double u) { return f(x + u) * std::conj(g(x - u)) * std::polar(1.0, -4.0 * pi * u * xi); },
                         lo, hi);
}

// L2-normalized Hermite functions adapted to e^{-pi x^2}: phi_0 = 2^{1/4} e^{-pi x^2}.
inline std::vector<double> hermite_functions(int nmax, double x) {
  std::vector<double> h(nmax + 1);
  h[0] = std::pow(2.0, 0.25) * std::exp(-pi * x * x);
  if (nmax >= 1) h[1] = std::sqrt(2.0) * std::sqrt(2.0 * pi) * x * h[0];
  for (int n = 1; n < nmax; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * std::sqrt(2.0 * pi) * x * h[n] - std::sqrt(double(n) / (n + 1)) * h[n - 1];
  return h;
}

// Coefficients <pi(z) g, phi_n> for g = e^{-pi x^2}, by a trapezoid sum on a fine line.
inline std::vector<cplx> gabor_atom_coefficients(int nmax, double x0, double xi0) {
  std::vector<cplx> c(nmax + 1, 0.0);
  const double h = 1.0 / 128.0;
  for (double x = x0 - 12.0; x <= x0 + 12.0; x += h) {
    const cplx atom = std::polar(std::exp(-pi * (x - x0) * (x - x0)), 2.0 * pi * xi0 * x);
    const auto phi = hermite_functions(nmax, x);
    for (int n = 0; n <= nmax; ++n) c[n] += atom * phi[n] * h;
  }
  return c;
}

// <A pi(z) g, pi(w) g> for A diagonal in the Hermite basis with eigenvalues lambda(n).
inline cplx hermite_diagonal_gabor(const std::function<cplx(int)>& lambda, double x, double xi, double y,
                                   double eta, int nmax = 120) {
  const auto a = gabor_atom_coefficients(nmax, x, xi), b = gabor_atom_coefficients(nmax, y, eta);
  cplx s = 0.0;
  for (int n = 0; n <= nmax; ++n) s += lambda(n) * a[n] * std::conj(b[n]);
  return s;
}

inline double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }

}  // namespace oracle
