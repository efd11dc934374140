#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "phasekit/grid.hpp"

namespace phasekit {

// 2d x 2d complex matrix acting on phase-space points (x, xi), with blocks
// [[A, B], [C, D]].
struct SymplecticMatrix {
  int dim = 1;
  Eigen::MatrixXcd m;

  Eigen::MatrixXcd A() const { return m.topLeftCorner(dim, dim); }
  Eigen::MatrixXcd B() const { return m.topRightCorner(dim, dim); }
  Eigen::MatrixXcd C() const { return m.bottomLeftCorner(dim, dim); }
  Eigen::MatrixXcd D() const { return m.bottomRightCorner(dim, dim); }
  // Applies a real matrix to a real phase-space point (imaginary parts must vanish).
  Point apply(const Point& z) const;
};

SymplecticMatrix sp_identity(int d);
SymplecticMatrix sp_J(int d);
SymplecticMatrix sp_D(const Eigen::MatrixXcd& E);            // diag(E^{-1}, E^T)
SymplecticMatrix sp_V(const Eigen::MatrixXcd& Q);            // [[I,0],[Q,I]], Q symmetric
SymplecticMatrix sp_R(const std::vector<double>& theta);     // per-axis Hormander rotation
SymplecticMatrix sp_Vi(const std::vector<double>& alpha);    // [[I,0],[i diag(alpha), I]]
SymplecticMatrix sp_S(int d, double mu);                     // [[cos I, sin I],[-sin I, cos I]]

SymplecticMatrix sp_compose(const SymplecticMatrix& a, const SymplecticMatrix& b);
SymplecticMatrix sp_inverse(const SymplecticMatrix& a);
// Interleaved block layout acting on (x1, x2, xi1, xi2).
SymplecticMatrix sp_tensor(const SymplecticMatrix& a, const SymplecticMatrix& b);

struct SymplecticCheck {
  bool symplectic;
  double residual;  // max |(S^T J S - J)_{ij}|, plain transpose
};
SymplecticCheck sp_is_symplectic(const Eigen::MatrixXcd& s);
inline SymplecticCheck sp_is_symplectic(const SymplecticMatrix& s) { return sp_is_symplectic(s.m); }

enum class GeneratorKind { J, D_E, V_Q, R_theta, V_ialpha, S_mu };

struct GeneratorParams {
  int dim = 1;
  Eigen::MatrixXcd E;          // D_E
  Eigen::MatrixXcd Q;          // V_Q
  std::vector<double> values;  // theta (R_theta) or alpha (V_ialpha)
  double mu = 0.0;             // S_mu
};

SymplecticMatrix build_generator(GeneratorKind kind, const GeneratorParams& params);
GeneratorKind parse_generator_kind(const std::string& name);

// Seeded product of `length` generators with random parameters; the names of
// the factors are appended to `trace` when given.
SymplecticMatrix random_word(int d, int length, std::uint64_t seed,
                             std::vector<std::string>* trace = nullptr);

// Element Ŝ1 R_Theta Ŝ2 of the Hormander semigroup kept in factored form.
struct HormanderWord {
  SymplecticMatrix s1;
  std::vector<double> theta;
  SymplecticMatrix s2;
  SymplecticMatrix matrix() const { return sp_compose(s1, sp_compose(sp_R(theta), s2)); }
};

}  // namespace phasekit
