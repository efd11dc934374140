#pragma once

#include "phasekit/grid.hpp"

namespace phasekit::detail {

// In-place unnormalized DFT of a rank-`dim` cube with `n` points per axis;
// sign = -1 is e^{-2 pi i k m / n}. Safe to call concurrently.
void fft_cube(cplx* data, int dim, int n, int sign);

}  // namespace phasekit::detail
