#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "phasekit/grid.hpp"
#include "phasekit/parallel.hpp"
#include "phasekit/propagators.hpp"
#include "phasekit/tf.hpp"

namespace phasekit {

using Operator = std::function<SampledField(const SampledField&)>;

// h(z, w) = <T pi(z) g, pi(w) g> with the Riemann-weighted inner product.
cplx gabor_numeric(const Operator& apply_T, const Point& z, const Point& w, const Window& g);

// G_t(z,w) = (2 rho)^{-d/2} e^{-pi(|xi|^2+|eta|^2)} e^{2 pi i (xi.x - eta.y)} e^{(pi/(2 rho)) c.c},
// rho = 1 + 2 pi gamma t, c = (xi + eta) + i (y - x), for z = (x, xi), w = (y, eta).
cplx gabor_heat_closed(double t, const ComplexDiffusion& gamma, const Point& z, const Point& w,
                       int d);

// eps = (pi/4)(1 - sqrt(1 - 8 pi alpha t / ((1 + 2 pi alpha t)^2 + (2 pi beta t)^2))).
double heat_epsilon(double t, double alpha, double beta);

// 2^{-d/2} |rho|^{-d/2} exp(-(eps/2)(|xi|^2 + |eta|^2) - eps |x - y|^2).
double gabor_heat_bound(double t, const ComplexDiffusion& gamma, const Point& z, const Point& w,
                        int d);

// Sine wave propagator T_t = sin(2 pi |D| t)/(2 pi |D|), d <= 3. Complex
// entry by a single pairing with the fundamental-solution measure:
// h = 2^{-d/2} e^{-pi|xi-eta|^2/2} \int e^{-2 pi i xi.a} e^{pi i (xi-eta).(x+a+y)} e^{-pi|x-y+a|^2/2} dmu_t(a).
cplx gabor_wave_entry(double t, int d, const Point& z, const Point& w,
                      const PairingOrder& order = {});

// |h|^2 by the double pairing
// 2^{-d} e^{-pi|xi-eta|^2} \int\int e^{-pi|x-y+(a+a')/2|^2} e^{-pi|a-a'|^2/4} e^{-pi i (a-a').(xi+eta)} dmu dmu'.
double gabor_wave_modsq(double t, int d, const Point& z, const Point& w,
                        const PairingOrder& order = {});

// d = 1 overlap density I(u) = \int e^{-pi r^2/4} m(u + r/2) m(u - r/2) e^{-pi i r (xi+eta)} dr
// with m = (1/2) 1_{[-t,t]}, by Gauss-Legendre quadrature.
cplx wave_overlap_density(double t, double u, double freq_sum, int nodes = 64);
// Its closed form at xi + eta = 0: (1/2) erf(sqrt(pi) (t - |u|)_+).
double wave_overlap_closed(double t, double u);

// d = 1: sqrt(C_t) e^{-pi|x-y|^2/4} e^{-pi|xi-eta|^2/2}, C_t = sup I * 4t * e^{4 pi t^2};
// d = 2: t e^{-(pi/2)((|x-y|-t)_+)^2} e^{-pi|xi-eta|^2/2};
// d = 3: t e^{-(pi/2)(|x-y|-t)^2} e^{-pi|xi-eta|^2/2}.
double gabor_wave_bound(double t, int d, const Point& z, const Point& w);
double wave_bound_constant(double t);  // C_t of the d = 1 form

// 2^{-d} prod_{theta_j != 0} sinh(theta_j)^{-1/2}
//   exp(-(pi/4) sum (1 + e^{-theta_j}) |z_j - w_j|^2) exp(-(pi/4) sum (1 - e^{-theta_j}) |z_j + w_j|^2)
// with z_j = (x_j, xi_j); identity axes contribute exp(-(pi/2)|z_j - w_j|^2).
double gabor_hermite_mod(const std::vector<double>& theta, const Point& z, const Point& w);
// Ratio |<R_Theta pi(z) g, pi(w) g>| / gabor_hermite_mod: (1 - e^{-2 theta_j})^{1/2} per
// active axis and sqrt(2) per identity axis.
double hermite_normalization(const std::vector<double>& theta);

// gabor_hermite_mod at (S_{mu t} z, w) with all axes at theta t.
double gabor_complex_hermite_mod(double theta, double mu, double t, const Point& z,
                                 const Point& w);

// Phase-space rotation by mu acting on each (x_j, xi_j) pair.
Point rotate_phase_space(double mu, const Point& z);

struct GaborSlice {
  Point fixed_z;
  Point w_base;   // coordinates of w not swept by the two axes
  Grid w_pos_axis;   // 1-d, sweeps w_1
  Grid w_freq_axis;  // 1-d, sweeps eta_1
  bool modulus_only = true;
  std::vector<cplx> values;  // values[i_pos * n_freq + i_freq]
  std::string equation;
  std::map<std::string, double> params;

  std::size_t rows() const { return static_cast<std::size_t>(w_pos_axis.n); }
  std::size_t cols() const { return static_cast<std::size_t>(w_freq_axis.n); }
  Point w_at(std::size_t i, std::size_t j) const;
};

using GaborEntry = std::function<cplx(const Point& z, const Point& w)>;

// Fills slice.values with entry(z, w) over the swept axes, parallel over w.
// Modulus-only slices store |entry| with zero imaginary part.
void evaluate_slice(GaborSlice& slice, const GaborEntry& entry, Exec exec = Exec::parallel);

struct DecayFit {
  double prefactor = 0.0;  // C
  double rate = 0.0;       // eps
  double exponent = 0.0;   // p
  double residual = 0.0;   // max |log|h| - (log C - eps dist^p)|
};

enum class DecayDirection { position, frequency, radial };

struct DecayFitOptions {
  DecayDirection direction = DecayDirection::position;
  double max_dist = 3.0;
  double floor = 1e-300;  // samples at or below are ignored
};

// Least-squares fit of log|h| = log C - eps dist^p for each candidate p, where
// dist is measured from fixed_z along the chosen direction; returns the p with
// the smallest max-misfit.
DecayFit fit_decay(const GaborSlice& slice, const std::vector<double>& exponent_grid,
                   const DecayFitOptions& options = {});

// Golden-section search for the maximum of a unimodal function on [a, b].
struct Extremum {
  double arg;
  double value;
};
Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-13);

}  // namespace phasekit
