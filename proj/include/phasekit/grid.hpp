#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace phasekit {

using cplx = std::complex<double>;
using Point = std::vector<double>;

inline constexpr double pi = 3.14159265358979323846;

// Uniform isotropic grid covering [-L/2, L/2)^d with n points per axis.
struct Grid {
  int dim = 1;
  int n = 8;
  double extent = 1.0;

  double spacing() const { return extent / n; }
  double dual_spacing() const { return 1.0 / extent; }
  std::size_t size() const;
  double coord(int k) const { return -0.5 * extent + k * spacing(); }
  // Frequency grid of the DFT: spacing 1/L, covering [-n/(2L), n/(2L)).
  Grid dual() const { return Grid{dim, n, n / extent}; }
  // Frequency grid of the Wigner transform: spacing 1/(2L).
  Grid half_dual() const { return Grid{dim, n, n / (2.0 * extent)}; }

  std::array<int, 3> unravel(std::size_t idx) const;
  std::size_t ravel(const std::array<int, 3>& k) const;
  Point point(std::size_t idx) const;

  bool operator==(const Grid& o) const;
};

Grid make_grid(int d, int n, double L);

struct SampledField {
  Grid grid;
  std::vector<cplx> values;
  bool frequency_domain = false;

  SampledField() = default;
  explicit SampledField(const Grid& g, bool freq = false)
      : grid(g), values(g.size(), cplx(0.0)), frequency_domain(freq) {}
};

// Samples of a function on a 2d-dimensional position x frequency grid;
// values[pos_index * freq.size() + freq_index].
struct PhaseSpaceField {
  Grid pos;
  Grid freq;
  std::vector<cplx> values;

  PhaseSpaceField() = default;
  PhaseSpaceField(const Grid& p, const Grid& f)
      : pos(p), freq(f), values(p.size() * f.size(), cplx(0.0)) {}
  cplx& at(std::size_t ip, std::size_t iq) { return values[ip * freq.size() + iq]; }
  const cplx& at(std::size_t ip, std::size_t iq) const {
    return values[ip * freq.size() + iq];
  }
};

enum class Direction { forward, inverse };

// f^(xi) = \int f(x) e^{-2 pi i x.xi} dx as a Riemann sum on the centered grid.
SampledField dft(const SampledField& field, Direction dir);

SampledField sample(const Grid& g, const std::function<cplx(const Point&)>& fn,
                    bool freq = false);

// Discrete L2 quantities with the Riemann weight spacing^d.
double norm2(const SampledField& f);
cplx inner(const SampledField& f, const SampledField& g);
double max_abs(const std::vector<cplx>& v);
double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);
double rel_l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);

bool is_power_of_two(int n);
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace phasekit
