#include "phasekit/metaplectic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace phasekit {

namespace {

using Mat = Eigen::MatrixXcd;
const cplx I(0.0, 1.0);

SymplecticMatrix blocks(int d, const Mat& a, const Mat& b, const Mat& c, const Mat& dd) {
  SymplecticMatrix s{d, Mat(2 * d, 2 * d)};
  s.m << a, b, c, dd;
  return s;
}

}  // namespace

Point SymplecticMatrix::apply(const Point& z) const {
  if (static_cast<int>(z.size()) != 2 * dim) throw std::invalid_argument("apply: point size");
  Point out(2 * dim, 0.0);
  for (int i = 0; i < 2 * dim; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < 2 * dim; ++j) s += m(i, j) * z[j];
    if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s)))
      throw std::invalid_argument("apply: complex image of a real point");
    out[i] = s.real();
  }
  return out;
}

SymplecticMatrix sp_identity(int d) { return {d, Mat::Identity(2 * d, 2 * d)}; }

SymplecticMatrix sp_J(int d) {
  const Mat Z = Mat::Zero(d, d), Id = Mat::Identity(d, d);
  return blocks(d, Z, Id, -Id, Z);
}

SymplecticMatrix sp_D(const Eigen::MatrixXcd& E) {
  const int d = static_cast<int>(E.rows());
  if (E.cols() != d) throw std::invalid_argument("D_E: E must be square");
  Eigen::FullPivLU<Mat> lu(E);
  if (!lu.isInvertible()) throw std::invalid_argument("D_E: E must be invertible");
  const Mat Z = Mat::Zero(d, d);
  return blocks(d, lu.inverse(), Z, Z, E.transpose());
}

SymplecticMatrix sp_V(const Eigen::MatrixXcd& Q) {
  const int d = static_cast<int>(Q.rows());
  if (Q.cols() != d) throw std::invalid_argument("V_Q: Q must be square");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("V_Q: Q must be symmetric");
  const Mat Z = Mat::Zero(d, d), Id = Mat::Identity(d, d);
  return blocks(d, Id, Z, Q, Id);
}

SymplecticMatrix sp_R(const std::vector<double>& theta) {
  const int d = static_cast<int>(theta.size());
  if (d < 1) throw std::invalid_argument("R_theta: empty parameter");
  Mat c = Mat::Zero(d, d), s = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    if (!(theta[j] >= 0.0)) throw std::invalid_argument("R_theta: theta must be >= 0");
    c(j, j) = std::cosh(theta[j]);
    s(j, j) = std::sinh(theta[j]);
  }
  return blocks(d, c, -I * s, I * s, c);
}

SymplecticMatrix sp_Vi(const std::vector<double>& alpha) {
  const int d = static_cast<int>(alpha.size());
  if (d < 1) throw std::invalid_argument("V_ialpha: empty parameter");
  Mat q = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    if (!(alpha[j] >= 0.0)) throw std::invalid_argument("V_ialpha: alpha must be >= 0");
    q(j, j) = I * alpha[j];
  }
  const Mat Z = Mat::Zero(d, d), Id = Mat::Identity(d, d);
  return blocks(d, Id, Z, q, Id);
}

SymplecticMatrix sp_S(int d, double mu) {
  const Mat Id = Mat::Identity(d, d);
  return blocks(d, std::cos(mu) * Id, std::sin(mu) * Id, -std::sin(mu) * Id, std::cos(mu) * Id);
}

SymplecticMatrix sp_compose(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("sp_compose: dimension mismatch");
  return {a.dim, a.m * b.m};
}

SymplecticMatrix sp_inverse(const SymplecticMatrix& a) {
  // S^{-1} = -J S^T J for symplectic S; fall back to LU for anything else.
  return {a.dim, a.m.inverse()};
}

SymplecticMatrix sp_tensor(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("sp_tensor: dimension mismatch");
  const int d = a.dim;
  const Mat Z = Mat::Zero(d, d);
  Mat A(2 * d, 2 * d), B(2 * d, 2 * d), C(2 * d, 2 * d), D(2 * d, 2 * d);
  A << a.A(), Z, Z, b.A();
  B << a.B(), Z, Z, b.B();
  C << a.C(), Z, Z, b.C();
  D << a.D(), Z, Z, b.D();
  return blocks(2 * d, A, B, C, D);
}

SymplecticCheck sp_is_symplectic(const Eigen::MatrixXcd& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0)
    throw std::invalid_argument("is_symplectic: need a square 2d x 2d matrix");
  const int d = static_cast<int>(s.rows() / 2);
  const Mat J = sp_J(d).m;
  const double r = (s.transpose() * J * s - J).cwiseAbs().maxCoeff();
  return {r <= 1e-10, r};
}

SymplecticMatrix build_generator(GeneratorKind kind, const GeneratorParams& p) {
  switch (kind) {
    case GeneratorKind::J: return sp_J(p.dim);
    case GeneratorKind::D_E: return sp_D(p.E);
    case GeneratorKind::V_Q: return sp_V(p.Q);
    case GeneratorKind::R_theta: return sp_R(p.values);
    case GeneratorKind::V_ialpha: return sp_Vi(p.values);
    case GeneratorKind::S_mu: return sp_S(p.dim, p.mu);
  }
  throw std::invalid_argument("build_generator: unknown kind");
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "J") return GeneratorKind::J;
  if (name == "D_E") return GeneratorKind::D_E;
  if (name == "V_Q") return GeneratorKind::V_Q;
  if (name == "R_theta") return GeneratorKind::R_theta;
  if (name == "V_ialpha") return GeneratorKind::V_ialpha;
  if (name == "S_mu") return GeneratorKind::S_mu;
  throw std::invalid_argument("unknown generator kind: " + name);
}

SymplecticMatrix random_word(int d, int length, std::uint64_t seed, std::vector<std::string>* trace) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.0, 1.5);
  std::uniform_int_distribution<int> pick(0, 5);
  SymplecticMatrix w = sp_identity(d);
  static const char* names[] = {"J", "D_E", "V_Q", "R_theta", "V_ialpha", "S_mu"};
  for (int i = 0; i < length; ++i) {
    const int k = pick(rng);
    GeneratorParams p;
    p.dim = d;
    switch (k) {
      case 1: {
        Mat E(d, d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) E(a, b) = u(rng);
        E += 2.0 * Mat::Identity(d, d);
        p.E = E;
        break;
      }
      case 2: {
        Mat Q(d, d);
        for (int a = 0; a < d; ++a)
          for (int b = a; b < d; ++b) Q(a, b) = Q(b, a) = u(rng);
        p.Q = Q;
        break;
      }
      case 3:
      case 4:
        for (int a = 0; a < d; ++a) p.values.push_back(pos(rng));
        break;
      case 5: p.mu = 3.0 * u(rng); break;
      default: break;
    }
    if (trace) trace->push_back(names[k]);
    w = sp_compose(w, build_generator(static_cast<GeneratorKind>(k), p));
  }
  return w;
}

}  // namespace phasekit
