#include <doctest.h>

#include "homsolve/basis.hpp"

#include <cmath>

using namespace homsolve;

namespace {

Vector seeded_coeffs(int M, unsigned long long seed) {
  Vector v(M);
  unsigned long long s = seed;
  for (int i = 0; i < M; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
  }
  return v;
}

}  // namespace

TEST_CASE("normalizer and frequency at n = 1, M = 1") {
  const EvenBasis b = build_basis(1.0, 1);
  CHECK(b.omega()[0] == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  CHECK(b.nu()[0] == doctest::Approx(0.53702927214631508).epsilon(1e-14));
}

TEST_CASE("basis functions vanish at the endpoints and are even") {
  const EvenBasis b = build_basis(3.0, 6);
  for (int l = 1; l <= 6; ++l) {
    CHECK(std::abs(b.eval(l, 3.0)) < 1e-14);
    CHECK(std::abs(b.eval(l, -3.0)) < 1e-14);
    CHECK(b.eval(l, 0.7) == b.eval(l, -0.7));
  }
}

TEST_CASE("gram matrix is the identity to 1e-10") {
  for (double n : {1.0, 5.0}) {
    for (int M : {4, 8, 32}) {
      const EvenBasis b = build_basis(n, M);
      INFO("n=", n, " M=", M, " Q=", b.quad().nodes.size());
      CHECK(b.gram_deviation() <= 1e-10);
    }
  }
}

TEST_CASE("n=1 M=8 gram holds at the explicit order of the examples") {
  const EvenBasis b(1.0, 8, composite_gauss_legendre(-1.0, 1.0, 64));
  CHECK(b.gram_deviation() < 1e-10);
}

TEST_CASE("synthesis of the zero vector is zero; of e1 it is nu1 at the origin") {
  const EvenBasis b = build_basis(1.0, 4);
  ArrayX t = symmetric_grid(1.0, 21), u, du;
  b.synthesize(Vector::Zero(4), t, u, du);
  CHECK(u.abs().maxCoeff() == 0.0);
  b.synthesize(Vector::Unit(4, 0), t, u, du);
  CHECK(u[10] == doctest::Approx(0.53702927214631508).epsilon(1e-14));
  // evenness is structural
  for (int i = 0; i < 10; ++i) CHECK(u[i] == u[20 - i]);
}

TEST_CASE("parseval: quadrature Sobolev norm equals the coefficient norm") {
  for (int M : {4, 16, 32}) {
    const EvenBasis b = build_basis(2.5, M);
    const Vector xi = seeded_coeffs(M, 77 + M);
    ArrayX u, du;
    b.synthesize_at_nodes(xi, u, du);
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < b.quad().nodes.size(); ++i)
      norm2 += b.quad().weights[i] * (u[i] * u[i] + du[i] * du[i]);
    CHECK(std::sqrt(norm2) == doctest::Approx(xi.norm()).epsilon(1e-8));
    CHECK(GalerkinCoeffs{xi}.norm_W12() == xi.norm());
  }
}

TEST_CASE("coefficient projection is idempotent and norm-nonincreasing") {
  const GalerkinCoeffs c{seeded_coeffs(16, 5)};
  const GalerkinCoeffs p8 = project_coeffs(c, 8);
  CHECK(p8.xi.size() == 8);
  CHECK(p8.norm_W12() <= c.norm_W12());
  const GalerkinCoeffs p8p8 = project_coeffs(project_coeffs(c, 8), 8);
  CHECK((p8p8.xi - p8.xi).norm() == 0.0);
  // padding back does not change the norm
  CHECK(project_coeffs(p8, 16).norm_W12() == p8.norm_W12());
}

TEST_CASE("second-derivative synthesis matches a finite difference") {
  const EvenBasis b = build_basis(2.0, 6);
  const Vector xi = seeded_coeffs(6, 3);
  ArrayX t(3), u, du, ddu;
  t << -0.9, 0.1, 1.3;
  b.synthesize(xi, t, u, du, ddu);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    ArrayX tp(3), up, dup;
    tp << t[i] - h, t[i], t[i] + h;
    b.synthesize(xi, tp, up, dup);
    const double fd = (up[0] - 2.0 * up[1] + up[2]) / (h * h);
    CHECK(ddu[i] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(build_basis(-1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_basis(1.0, 0), ConfigError);
}
