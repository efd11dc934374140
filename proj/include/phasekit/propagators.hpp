#pragma once

#include <functional>

#include "phasekit/grid.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {

// gamma = alpha + i beta with alpha >= 0 and gamma != 0.
struct ComplexDiffusion {
  double alpha = 1.0;
  double beta = 0.0;
  cplx gamma() const { return {alpha, beta}; }
  void validate() const;
};

enum class WaveKind { sine, cosine };

// Symbol == callable on dual-grid points xi.
using Symbol = std::function<cplx(const Point& xi)>;

// sigma = e^{-4 pi^2 gamma t |xi|^2}.
cplx heat_symbol(double t, const ComplexDiffusion& gamma, const Point& xi);
// sine: sin(2 pi |xi| t)/(2 pi |xi|) (value t at xi = 0); cosine: cos(2 pi |xi| t).
double wave_symbol(WaveKind kind, double t, const Point& xi);

// inverse-DFT(sigma * DFT(f)).
SampledField apply_multiplier(const Symbol& symbol, const SampledField& f);

// K_t(x) = (4 pi gamma t)^{-d/2} exp(-|x|^2/(4 gamma t)), principal branch.
cplx heat_kernel(double t, const ComplexDiffusion& gamma, const Point& x);

// Fundamental-solution measures of the wave equation; total mass t.
struct WaveMeasure {
  int dim = 1;
  double t = 1.0;
};

struct PairingOrder {
  int radial = 48;   // Gauss-Legendre nodes in the radial / polar variable
  int angular = 64;  // trapezoid nodes in the azimuth
};

// Quadrature nodes y_i and weights w_i with sum_i w_i f(y_i) ~ \int f dmu_t.
struct MeasureNodes {
  int dim = 1;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};
MeasureNodes wave_measure_nodes(const WaveMeasure& m, const PairingOrder& order = {});

double wave_measure_pairing(const WaveMeasure& m, const std::function<double(const Point&)>& test,
                            const PairingOrder& order = {});
cplx wave_measure_pairing_complex(const WaveMeasure& m,
                                  const std::function<cplx(const Point&)>& test,
                                  const PairingOrder& order = {});

struct HermiteParams {
  std::vector<double> theta;  // per-axis vartheta_j >= 0 (size 1 means isotropic)
  double mu = 0.0;
  double t = 1.0;
};

// R_Theta by dense quadrature, per axis:
// R u(x) = cosh^{-1/2} \int u^(eta) e^{-pi tanh (x^2+eta^2)} e^{2 pi i x eta / cosh} d eta.
SampledField hermite_apply(const HermiteParams& params, const SampledField& f,
                           Exec exec = Exec::parallel);

// Fractional Fourier transform with F_{pi/2} the Fourier transform and
// F_mu g = g for the Gaussian. Computed by chirp / Fourier-chirp / chirp
// factors on quarter-turn-bounded angles.
SampledField frft_apply(double mu, const SampledField& f);

// R_{theta t} F_{mu t}.
SampledField complex_hermite_apply(const HermiteParams& params, const SampledField& f,
                                   Exec exec = Exec::parallel);

}  // namespace phasekit
