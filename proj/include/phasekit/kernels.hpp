#pragma once

#include <string>
#include <vector>

#include "phasekit/grid.hpp"
#include "phasekit/parallel.hpp"
#include "phasekit/propagators.hpp"

namespace phasekit {

// Reduced Wigner kernel: k_W(x, xi, y, eta) = delta(xi - eta) kappa(x - y, xi). The
// hermite forms are full Gaussian kernels k_W(z, w) with no delta factor.
enum class KernelForm {
  sampled,
  heat,
  wave_d1,
  wave_d2,
  wave_d3,
  hermite,
  complex_hermite,
  cosine_d1_distributional
};

struct ReducedKernel {
  KernelForm form = KernelForm::sampled;
  int dim = 1;
  double t = 0.0;
  ComplexDiffusion gamma;
  std::vector<double> theta;
  double mu = 0.0;
  // eval() times normalization is the kernel that intertwines the discrete
  // Wigner distributions; the closed forms are kept as written.
  double normalization = 1.0;
  PhaseSpaceField samples;  // sampled form: pos grid carries s, freq grid carries xi
  std::string equation;

  // kappa(s, xi) for regular and sampled forms (sampled: on-grid arguments only).
  double eval(const Point& s, const Point& xi) const;
  // k_W(z, w) for the hermite forms, z and w in R^{2d}.
  double eval_full(const Point& z, const Point& w) const;
  bool is_full() const { return form == KernelForm::hermite || form == KernelForm::complex_hermite; }
};

enum class SymbolRoute {
  symbol_wigner,  // kappa(s, xi) = W(sigma)(xi, -s): s spacing dx/2, xi spacing 1/L
  kernel_wigner,  // kappa(s, xi) = W(E)(s, xi), E = F^{-1} sigma: grids of cross_wigner
};

struct SymbolKernelOptions {
  SymbolRoute route = SymbolRoute::symbol_wigner;
  double edge_tol = 1e-6;  // max edge magnitude relative to peak before rejection
};

// `symbol` holds samples of sigma on grid.dual().
ReducedKernel kernel_from_symbol(const SampledField& symbol, const Grid& grid,
                                 const SymbolKernelOptions& options = {});

// (8 pi t |gamma|^2/alpha)^{d/2} exp(-a|s|^2) exp(-b|xi - k s|^2) with
// a = alpha/(2t|gamma|^2), b = 8 pi^2 t |gamma|^2/alpha, k = beta/(4 pi t |gamma|^2).
double kernel_heat(double t, const ComplexDiffusion& gamma, const Point& s, const Point& xi);
double heat_kernel_shear(double t, const ComplexDiffusion& gamma);  // k above
ReducedKernel make_heat_kernel(double t, const ComplexDiffusion& gamma, int d);

// d = 1: 1_{|s|<=t} sin(4 pi (t - |s|) xi)/(4 pi xi);
// d = 2: (1/(2 pi)) 1_{|s|<2t} J0(4 pi r(s) |xi_perp|);
// d = 3: (r(s)/(8 pi t^2)) 1_{|s|<2t} J0(4 pi r(s) |xi_perp|), r(s) = sqrt(t^2 - |s|^2/4),
// with xi_perp := xi at s = 0.
double kernel_wave(int d, double t, const Point& s, const Point& xi);
// d = 3 kernel of W(E) for E the normalized sphere measure:
// (1/(2 pi |s|)) 1_{|s|<t} J0(4 pi sqrt(t^2 - |s|^2) |xi_perp|).
double kernel_wave_d3_sphere(double t, const Point& s, const Point& xi);
ReducedKernel make_wave_kernel(int d, double t);

// \int kappa(s, xi) ds for |xi| = xi_norm. For W(E) kernels this equals sigma(xi)^2.
enum class WaveKernelVariant { closed_form, sphere_d3 };
double wave_kernel_marginal(int d, double t, double xi_norm,
                            WaveKernelVariant variant = WaveKernelVariant::closed_form,
                            int nodes = 400);

// prod_{theta_j != 0} sinh(theta_j)^{-1} exp(-(2 pi/tanh theta_j)(x_j^2+xi_j^2+y_j^2+eta_j^2))
//   exp((4 pi/sinh theta_j)(x_j y_j + xi_j eta_j)).
double kernel_hermite(const std::vector<double>& theta, const Point& z, const Point& w);
ReducedKernel make_hermite_kernel(const std::vector<double>& theta);

// sinh(theta t)^{-d} exp(-(2 pi/tanh(theta t))(|z|^2+|w|^2)) exp((4 pi/sinh(theta t)) z.S_{mu t} w).
double kernel_complex_hermite(double theta, double mu, double t, const Point& z, const Point& w);
ReducedKernel make_complex_hermite_kernel(double theta, double mu, double t, int d);

// W_out(x, xi) = \int kappa(x - y, xi) W_in(y, xi) dy per frequency slice (zero-padded
// FFT convolution); hermite forms use a dense quadrature over phase space.
PhaseSpaceField apply_kernel(const ReducedKernel& kernel, const PhaseSpaceField& W_in,
                             Exec exec = Exec::parallel);

namespace reference {
PhaseSpaceField apply_kernel(const ReducedKernel& kernel, const PhaseSpaceField& W_in);
}

// (2 pi alpha t)^{-d/2} (\int W0(x - 4 pi beta t xi - y, xi) e^{-|y|^2/(2 alpha t)} dy) e^{-8 pi^2 alpha t |xi|^2},
// applied spectrally per frequency slice (periodic in x).
PhaseSpaceField evolve_wigner_heat(const PhaseSpaceField& W0, double t, double alpha, double beta,
                                   Exec exec = Exec::parallel);

struct LacunaOptions {
  double mollifier = 0.25;  // width of phi_eps(x) = eps^{-1} e^{-pi x^2/eps^2}
};

struct LacunaReport {
  double t = 0.0;
  // Gabor matrix of the cosine propagator at s = 0, xi = eta = 0, over ||g||^2
  double center_ratio = 0.0;
  double center_ratio_closed = 0.0;  // e^{-pi t^2/2}
  // W(E_eps)(0, xi) against (1/2) cos(4 pi xi t) W(phi_eps)(0, xi)
  double ghost_correlation = 0.0;
  double ghost_period = 0.0;
  double ghost_period_expected = 0.0;  // 1/(2t)
  double frequency_bin = 0.0;          // spacing of the xi grid
  double ghost_amplitude = 0.0;        // |W(E_eps)(0, 0)|
  std::vector<double> xi;              // xi grid of the s = 0 slice
  std::vector<double> ghost_slice;     // Re W(E_eps)(0, xi)
};

LacunaReport lacuna_report(double t, const Grid& grid, const LacunaOptions& options = {});

}  // namespace phasekit
