#include "phasekit/grid.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"

namespace phasekit {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

std::array<int, 3> Grid::unravel(std::size_t idx) const {
  std::array<int, 3> k{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    k[a] = static_cast<int>(idx % n);
    idx /= n;
  }
  return k;
}

std::size_t Grid::ravel(const std::array<int, 3>& k) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a) idx = idx * n + k[a];
  return idx;
}

Point Grid::point(std::size_t idx) const {
  auto k = unravel(idx);
  Point p(dim);
  for (int a = 0; a < dim; ++a) p[a] = coord(k[a]);
  return p;
}

bool Grid::operator==(const Grid& o) const {
  return dim == o.dim && n == o.n &&
         std::abs(extent - o.extent) <= 1e-12 * std::max(extent, o.extent);
}

Grid make_grid(int d, int n, double L) {
  if (d < 1 || d > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!is_power_of_two(n) || n < 8)
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("extent must be positive");
  return Grid{d, n, L};
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

namespace {

// (-1)^{k_1+...+k_d} for a flat index.
inline double checker(const Grid& g, std::size_t idx) {
  auto k = g.unravel(idx);
  int s = 0;
  for (int a = 0; a < g.dim; ++a) s += k[a];
  return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

SampledField dft(const SampledField& field, Direction dir) {
  const Grid& g = field.grid;
  if (field.values.size() != g.size()) throw std::invalid_argument("dft: malformed field");
  // With n/2 even, e^{-2 pi i x_k xi_m} = (-1)^{k+m} e^{-2 pi i k m / n}.
  SampledField out(g.dual(), !field.frequency_domain);
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = checker(g, i) * field.values[i];
  detail::fft_cube(out.values.data(), g.dim, g.n, dir == Direction::forward ? -1 : 1);
  const double w = std::pow(g.spacing(), g.dim);
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] *= w * checker(g, i);
  return out;
}

SampledField sample(const Grid& g, const std::function<cplx(const Point&)>& fn, bool freq) {
  SampledField f(g, freq);
  for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = fn(g.point(i));
  return f;
}

double norm2(const SampledField& f) { return std::sqrt(std::real(inner(f, f))); }

cplx inner(const SampledField& f, const SampledField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
  return s * std::pow(f.grid.spacing(), f.grid.dim);
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace phasekit
