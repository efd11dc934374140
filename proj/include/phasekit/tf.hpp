#pragma once

#include "phasekit/grid.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {

struct Window {
  enum class Tag { gaussian, custom };
  SampledField field;
  Tag tag = Tag::custom;
};

// g(x) = e^{-pi |x|^2}.
Window gaussian_window(const Grid& g);

// pi(z) f(t) = e^{2 pi i xi0.t} f(t - x0), z = (x0_1..x0_d, xi0_1..xi0_d).
// The translation is a periodic index shift, so x0 must be on-grid.
SampledField tf_shift(const SampledField& f, const Point& z);

// V_g f(x, xi) = \int f(y) conj g(y - x) e^{-2 pi i xi.y} dy at on-grid x.
// freq_grid equal to f.grid.dual() uses the FFT; any other grid is summed
// directly.
PhaseSpaceField stft(const SampledField& f, const Window& g, const Grid& freq_grid,
                     Exec exec = Exec::parallel);

// W(f,g)(x, xi) = 2^d \int f(x+u) conj g(x-u) e^{-4 pi i u.xi} du with samples
// outside the box treated as zero; frequency grid is grid.half_dual().
PhaseSpaceField cross_wigner(const SampledField& f, const SampledField& g,
                             Exec exec = Exec::parallel);

namespace reference {
// Direct O(n^{2d}) sums of the same Riemann sums; used to test the fast paths.
PhaseSpaceField cross_wigner(const SampledField& f, const SampledField& g);
PhaseSpaceField stft(const SampledField& f, const Window& g);
}  // namespace reference

}  // namespace phasekit
