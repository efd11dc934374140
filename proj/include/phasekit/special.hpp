#pragma once

#include <complex>
#include <vector>

namespace phasekit {

// J0 to ~1e-15: power series in extended precision for |z| <= 12, the
// standard library's cylindrical Bessel routine beyond.
double bessel_j0(double z);

// Power series sum (-1)^m/(m!)^2 (z/2)^{2m} in quad precision; accurate for
// |z| <= 50 despite the cancellation.
double bessel_j0_series(double z);

double erf(double x);

// \int_{R^d} exp(-2 pi rho |xi|^2 + 2 pi c.xi) dxi = (2 rho)^{-d/2} exp(pi c.c / (2 rho)),
// principal branch, c.c = sum c_k^2 (no conjugation). Empty c means c = 0.
std::complex<double> gaussian_integral(std::complex<double> rho,
                                       const std::vector<std::complex<double>>& c, int d);

// Gauss-Legendre nodes and weights on [a, b].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n, double a, double b);

}  // namespace phasekit
