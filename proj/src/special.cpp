#include "phasekit/special.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "phasekit/grid.hpp"

namespace phasekit {

namespace {

template <class Real>
Real j0_power_series(Real z) {
  const Real q = -(z * z) / 4;
  Real term = 1, sum = 1;
  for (int m = 1; m < 400; ++m) {
    term *= q / (Real(m) * Real(m));
    sum += term;
    if (abs(term) < abs(sum) * std::numeric_limits<Real>::epsilon() * Real(1e-3)) break;
  }
  return sum;
}

}  // namespace

double bessel_j0(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("bessel_j0: non-finite argument");
  const double a = std::abs(z);
  if (a <= 12.0) return static_cast<double>(j0_power_series<long double>(a));
  return std::cyl_bessel_j(0.0, a);
}

double bessel_j0_series(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("bessel_j0_series: non-finite argument");
  using quad = boost::multiprecision::cpp_bin_float_quad;
  return static_cast<double>(j0_power_series<quad>(quad(z)));
}

double erf(double x) { return std::erf(x); }

std::complex<double> gaussian_integral(std::complex<double> rho,
                                       const std::vector<std::complex<double>>& c, int d) {
  if (!(rho.real() > 0.0)) throw std::invalid_argument("gaussian_integral: Re rho must be > 0");
  if (!c.empty() && static_cast<int>(c.size()) != d)
    throw std::invalid_argument("gaussian_integral: c has wrong length");
  std::complex<double> cc = 0.0;
  for (const auto& ck : c) cc += ck * ck;
  const std::complex<double> two_rho = 2.0 * rho;
  return std::exp(-0.5 * d * std::log(two_rho) + pi * cc / two_rho);
}

Quadrature gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  Quadrature ref;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
      // Boost returns the non-negative zeros of P_n.
      auto zeros = boost::math::legendre_p_zeros<double>(n);
      Quadrature q;
      for (double x : zeros) {
        double p = boost::math::legendre_p_prime(n, x);
        double w = 2.0 / ((1.0 - x * x) * p * p);
        q.nodes.push_back(x);
        q.weights.push_back(w);
        if (x != 0.0) {
          q.nodes.push_back(-x);
          q.weights.push_back(w);
        }
      }
      it = cache.emplace(n, std::move(q)).first;
    }
    ref = it->second;
  }
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    ref.nodes[i] = m + h * ref.nodes[i];
    ref.weights[i] *= h;
  }
  return ref;
}

}  // namespace phasekit
