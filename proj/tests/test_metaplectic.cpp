#include <doctest.h>

#include <cmath>

#include "phasekit/metaplectic.hpp"

using namespace phasekit;
using Mat = Eigen::MatrixXcd;

namespace {

// Independent symplectic form check with the explicit J.
double residual(const Mat& s) {
  const int d = static_cast<int>(s.rows() / 2);
  Mat J = Mat::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d) = Mat::Identity(d, d);
  J.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return (s.transpose() * J * s - J).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("generators are symplectic") {
  for (int d = 1; d <= 3; ++d) {
    Mat E = Mat::Identity(d, d) * 2.0;
    E(0, d - 1) += 0.5;
    Mat Q = Mat::Identity(d, d) * -0.3;
    Q(0, d - 1) = Q(d - 1, 0) = 0.8;
    std::vector<double> th(d, 0.9), al(d, 1.1);
    for (const auto& s : {sp_J(d), sp_D(E), sp_V(Q), sp_R(th), sp_Vi(al), sp_S(d, 0.4), sp_identity(d)}) {
      CHECK(residual(s.m) < 1e-12);
      CHECK(sp_is_symplectic(s).symplectic);
    }
  }
}

TEST_CASE("R_theta and S_mu entries") {
  const auto r = sp_R({0.8});
  CHECK(std::abs(r.m(0, 0) - std::cosh(0.8)) < 1e-15);
  CHECK(std::abs(r.m(0, 1) - cplx(0.0, -std::sinh(0.8))) < 1e-15);
  CHECK(std::abs(r.m(1, 0) - cplx(0.0, std::sinh(0.8))) < 1e-15);
  const auto s = sp_S(1, 0.3);
  CHECK(std::abs(s.m(0, 1) - std::sin(0.3)) < 1e-15);
  CHECK(std::abs(s.m(1, 0) + std::sin(0.3)) < 1e-15);
  CHECK((sp_R({0.0}).m - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("membership test rejects non-symplectic matrices") {
  Mat a(2, 2), b(2, 2);
  a << 2, 0, 0, 0.5;
  b << 2, 0, 0, 2;
  CHECK(sp_is_symplectic(a).symplectic);
  CHECK_FALSE(sp_is_symplectic(b).symplectic);
  CHECK(sp_is_symplectic(b).residual == doctest::Approx(3.0));
  CHECK_THROWS_AS(sp_V(Mat::Identity(1, 2)), std::invalid_argument);
}

TEST_CASE("random words, inverses and tensors") {
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3, len = 1 + i % 6;
    std::vector<std::string> trace;
    const auto w = random_word(d, len, 100 + i, &trace);
    CHECK(trace.size() == static_cast<std::size_t>(len));
    CHECK(residual(w.m) < 1e-10);
    CHECK((sp_compose(w, sp_inverse(w)).m - Mat::Identity(2 * d, 2 * d)).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto a = random_word(1, 4, 1), b = random_word(1, 3, 2);
  CHECK(residual(sp_tensor(a, b).m) < 1e-10);
  // same seed, same word
  CHECK((random_word(2, 5, 9).m - random_word(2, 5, 9).m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor uses the interleaved (x1, x2, xi1, xi2) layout") {
  const auto t = sp_tensor(sp_S(1, 0.3), sp_R({0.5}));
  CHECK(t.dim == 2);
  CHECK(std::abs(t.m(0, 2) - std::sin(0.3)) < 1e-15);
  CHECK(std::abs(t.m(1, 3) - cplx(0.0, -std::sinh(0.5))) < 1e-15);
  CHECK(std::abs(t.m(0, 1)) == 0.0);
}

TEST_CASE("complex Hermite factorization") {
  for (double th : {0.3, 0.7})
    for (double mu : {-1.0, 1.3})
      for (double t : {0.5, 2.0}) {
        const auto p = sp_compose(sp_R({th * t}), sp_S(1, mu * t));
        const cplx a(th * t, mu * t), I(0.0, 1.0);
        CHECK(std::abs(p.m(0, 0) - std::cosh(a)) < 1e-12 * std::abs(std::cosh(a)));
        CHECK(std::abs(p.m(0, 1) + I * std::sinh(a)) < 1e-12 * std::abs(std::cosh(a)));
        CHECK(std::abs(p.m(1, 0) - I * std::sinh(a)) < 1e-12 * std::abs(std::cosh(a)));
        CHECK(std::abs(p.m(1, 1) - std::cosh(a)) < 1e-12 * std::abs(std::cosh(a)));
      }
}

TEST_CASE("generator construction by name") {
  CHECK(parse_generator_kind("S_mu") == GeneratorKind::S_mu);
  CHECK_THROWS_AS(parse_generator_kind("nope"), std::invalid_argument);
  GeneratorParams p;
  p.dim = 1;
  p.mu = 0.5 * 3.14159265358979323846;
  CHECK((build_generator(GeneratorKind::S_mu, p).m - sp_J(1).m).cwiseAbs().maxCoeff() < 1e-15);
  const HormanderWord h{sp_S(1, 0.2), {0.4}, sp_S(1, -0.2)};
  CHECK(residual(h.matrix().m) < 1e-12);
  const Point z = sp_S(1, 0.5 * 3.14159265358979323846).apply({1.0, 0.0});
  CHECK(std::abs(z[0]) < 1e-15);
  CHECK(z[1] == doctest::Approx(-1.0));
}
