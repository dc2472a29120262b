#include <doctest.h>

#include "homsolve/quadrature.hpp"

#include <cmath>

using namespace homsolve;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const QuadratureRule r = gauss_legendre(8);
  CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-14));
  // degree 15 is the exactness limit of an 8-point rule
  const double v = r.integrate([](double x) { return std::pow(x, 14); });
  CHECK(v == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("composite rule covers [a,b] and integrates oscillations") {
  const QuadratureRule r = composite_gauss_legendre(-5.0, 5.0, 200);
  CHECK(r.nodes.size() >= 200);
  CHECK(r.weights.sum() == doctest::Approx(10.0).epsilon(1e-13));
  const double v = r.integrate([](double x) { return std::cos(3.0 * x); });
  CHECK(v == doctest::Approx(2.0 * std::sin(15.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature hits tight tolerances") {
  const double v =
      integrate_adaptive([](double x) { return std::exp(-x * x); }, -12.0, 12.0, 1e-13);
  CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 2.0, 1e-12) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-13));
  // reversed orientation flips the sign
  CHECK(integrate_adaptive([](double x) { return x * x; }, 2.0, 0.0, 1e-12) ==
        doctest::Approx(-8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature reports non-convergence") {
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12,
                                     "antiderivative failure", 20),
                  NumericsError);
}

TEST_CASE("symmetric grid mirrors exactly") {
  const ArrayX t = symmetric_grid(3.0, 101);
  CHECK(t.size() == 101);
  CHECK(t[0] == -3.0);
  CHECK(t[100] == 3.0);
  CHECK(t[50] == 0.0);
  for (int i = 0; i < 50; ++i) CHECK(t[i] == -t[100 - i]);
}
