#include <doctest.h>

#include "homsolve/constants.hpp"

#include <cmath>

using namespace homsolve;

TEST_CASE("embedding constant bounds the sup norm of random syntheses") {
  const double C = embedding_constant();
  CHECK(C == doctest::Approx(0.70710678118654752).epsilon(1e-15));
  const EvenBasis b = build_basis(1.0, 8);
  unsigned long long s = 9001;
  for (int rep = 0; rep < 100; ++rep) {
    Vector xi(8);
    for (int i = 0; i < 8; ++i) {
      s ^= s << 13; s ^= s >> 7; s ^= s << 17;
      xi[i] = 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
    }
    ArrayX t = symmetric_grid(1.0, 501), u, du;
    b.synthesize(xi, t, u, du);
    CHECK(u.abs().maxCoeff() <= C * xi.norm() * (1.0 + 1e-12));
  }
  // the first basis function: |e1|_inf = nu1 <= C * 1
  CHECK(0.53702927214631508 <= C);
}

TEST_CASE("delta1 formula and its half-coercivity guarantee") {
  const double C = embedding_constant();
  const double d1 = delta1(0.5, C, 1.0, 3.0, 3.0);
  CHECK(d1 == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-14));
  // grid search for the largest r with gamma r^2 - C^{p-2} r^p - C1 max r^theta > gamma r^2/2
  auto coercive = [C](double r) {
    return 0.5 * r * r - C * r * r * r - 1.0 * C * r * r * r > 0.25 * r * r;
  };
  double largest = 0.0;
  for (int i = 1; i <= 100000; ++i) {
    const double r = 0.5 * i / 100000.0;
    if (coercive(r)) largest = r;
  }
  CHECK(largest == doctest::Approx(d1).epsilon(1e-4));
  for (double f : {0.1, 0.5, 0.9, 0.999})
    CHECK(coercive(f * d1));
  // theta=3, C<1: both branches coincide at p=3, C1=1
  CHECK(delta1(0.5, C, 1.0, 3.0, 3.0) ==
        doctest::Approx(0.5 / (4.0 * C)).epsilon(1e-14));
  // gamma -> 0 forces delta1 -> 0
  CHECK(delta1(1e-12, C, 1.0, 3.0, 3.0) < 1e-10);
}

TEST_CASE("lambda_star formula, boundary identity and homogeneity") {
  const double d1 = std::sqrt(2.0) / 8.0;
  const double r = 0.5 * d1;
  const double Ls = lambda_star(r, 0.5, 0.9712, d1, 1.5);
  CHECK(Ls == doctest::Approx(0.027057262125904633).epsilon(1e-10));
  // rho1 > 0 strictly below Lambda*, zero at the boundary
  CHECK(rho1(r, 0.5, 0.5 * Ls, 0.9712, d1, 1.5) > 0.0);
  CHECK(rho1(r, 0.5, Ls, 0.9712, d1, 1.5) ==
        doctest::Approx(0.0).epsilon(1e-18).scale(1.0));
  // doubling C2 halves Lambda*
  CHECK(lambda_star(r, 0.5, 2.0 * 0.9712, d1, 1.5) ==
        doctest::Approx(0.5 * Ls).epsilon(1e-14));
}

TEST_CASE("k_star matches the closed-form inversion and the direct inequality") {
  const double d1 = std::sqrt(2.0) / 8.0;
  const long long k = k_star(1e-3, 1.0, 5.0, d1, std::sqrt(10.0));
  CHECK(k == 1119);
  const double coef = (1.0 * std::sqrt(10.0) + std::sqrt(10.0)) * d1;
  CHECK(1e-3 > coef / static_cast<double>(k));
  CHECK_FALSE(1e-3 > coef / static_cast<double>(k - 1));
  // huge rho1 -> k* = 1
  CHECK(k_star(1e9, 1.0, 5.0, d1, std::sqrt(10.0)) == 1);
  // quadrupling n doubles the threshold
  const long long k4 = k_star(1e-3, 1.0, 20.0, d1, std::sqrt(40.0));
  CHECK(k4 == doctest::Approx(2 * k).epsilon(2e-3));
  CHECK_THROWS_WITH_AS(k_star(-1.0, 1.0, 5.0, d1, std::sqrt(10.0)),
                       doctest::Contains("lambda too large"), NumericsError);
}

TEST_CASE("first eigenpair on (-n, n)") {
  CHECK(eigen_pair(1.0).lambda1 == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-15));
  CHECK(eigen_pair(5.0).lambda1 == doctest::Approx(0.098696044010893586).epsilon(1e-12));
  const EigenPair e = eigen_pair(5.0);
  CHECK(std::abs(e.phi1(5.0)) < 1e-14);
  CHECK(std::abs(e.phi1(-5.0)) < 1e-14);
  // the pair satisfies phi'' + lambda1 phi = 0 to roundoff on a grid
  const ArrayX t = symmetric_grid(5.0, 1001);
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    CHECK(std::abs(e.phi1_second(t[i]) + e.lambda1 * e.phi1(t[i])) <= 1e-12);
    CHECK(e.phi1(t[i]) >= -1e-15);
  }
}

TEST_CASE("tau matches the closed form (binding case phi1 = 1)") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.02;
  const double l1 = M_PI * M_PI / 100.0;
  const double expected = std::pow(0.02 * std::exp(-25.0) / (1.0 + 0.5 * l1), 2.0);
  CHECK(expected == doctest::Approx(7.0064301986812086e-26).epsilon(1e-10));
  CHECK(tau_subsolution_scale(inst, 5.0) == doctest::Approx(expected).epsilon(1e-9));
  // lambda -> 0 drives tau -> 0
  inst.lambda = 1e-30;
  CHECK(tau_subsolution_scale(inst, 5.0) < 1e-55);
  // q -> 2^- with argument < 1 drives tau -> 0
  ProblemInstance q2 = default_instance();
  q2.q = 1.999;
  q2.lambda = 0.02;
  CHECK(tau_subsolution_scale(q2, 5.0) < 1e-100);
  ProblemInstance zero = make_instance("arctan", "zero", "signed_power", 1.5, 3.0,
                                       3.0, 0.01, 0.5);
  CHECK_THROWS_WITH_AS(tau_subsolution_scale(zero, 5.0),
                       doctest::Contains("weight vanishes"), NumericsError);
}

TEST_CASE("r_tilde formula and saturation") {
  CHECK(r_tilde(0.02, 0.088388, 0.9712, 0.5, 1.5) ==
        doctest::Approx(0.045185002497202396).epsilon(1e-10));
  CHECK(r_tilde(0.0, 0.088388, 0.9712, 0.5, 1.5) == 0.0);
  CHECK(r_tilde(1e9, 0.088388, 0.9712, 0.5, 1.5) == 0.088388);
}

TEST_CASE("Q-minimizer against a dense grid") {
  const QMin qm = q_min_and_threshold(1.0, 1.5, 3.0);
  CHECK(qm.m == doctest::Approx(0.62996052494743658).epsilon(1e-12));
  CHECK(qm.C_Lambda == doctest::Approx(1.8898815748423097).epsilon(1e-12));
  auto Q = [](double s) { return (1.0 * std::pow(s, 0.5) + s * s) / s; };
  for (int i = 1; i <= 100000; ++i) {
    const double s = 10.0 * qm.m * i / 100000.0;
    CHECK(qm.C_Lambda <= Q(s) + 1e-10);
  }
  CHECK(Q(1e-6) > 100.0);  // blow-up toward 0+
  // monotone in Lambda
  CHECK(q_min_and_threshold(2.0, 1.5, 3.0).m > qm.m);
  CHECK(q_min_and_threshold(2.0, 1.5, 3.0).C_Lambda > qm.C_Lambda);
}

TEST_CASE("nonexistence threshold by bisection against the closed form") {
  // constant diffusion: A(C r_tilde) = 0.5 exactly, target = 0.5 pi^2/4 + 0.25 + 1
  ProblemInstance inst =
      make_instance("constant", "gaussian", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5);
  const double lambda0 = nonexistence_threshold(inst, 1.0, 0.05);
  const double target = 0.5 * (M_PI * M_PI / 4.0) + 0.25 + 1.0;
  const double a_R = std::exp(-1.0);
  auto C_of = [&](double lam) {
    return q_min_and_threshold(lam * a_R, 1.5, 3.0).C_Lambda;
  };
  CHECK(C_of(lambda0) >= target - 1e-9);
  CHECK(C_of(lambda0 * (1.0 - 1e-6)) < target);
  // monotonicity spot check
  CHECK(C_of(2.0) > C_of(1.0));
  // r_tilde = 0 still well defined
  CHECK(nonexistence_threshold(inst, 1.0, 0.0) > 0.0);
  ProblemInstance zero =
      make_instance("constant", "zero", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5);
  CHECK_THROWS_WITH_AS(nonexistence_threshold(zero, 1.0, 0.05),
                       doctest::Contains("threshold undefined"), NumericsError);
}

TEST_CASE("sampled Lipschitz constant of the catalog diffusions") {
  const ProblemInstance inst = default_instance();
  // max A' = (1-gamma)/pi at t = 0
  CHECK(lipschitz_of_A(inst, 20.0, 20001) ==
        doctest::Approx(0.5 / M_PI).epsilon(1e-4));
  ProblemInstance c =
      make_instance("constant", "gaussian", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5);
  CHECK(lipschitz_of_A(c) == 0.0);
}

TEST_CASE("full constants report on the catalog instance") {
  ProblemInstance inst = default_instance();
  ConstantsReport rep = compute_constants(inst, 5.0);
  CHECK(rep.C1 == doctest::Approx(7.0 / 3.0).epsilon(1e-9));
  CHECK(rep.C2 == doctest::Approx(0.97025577234908261).epsilon(1e-10));
  CHECK(rep.delta1 == doctest::Approx(0.075761440841415806).epsilon(1e-9));
  CHECK(rep.r == doctest::Approx(0.5 * rep.delta1).epsilon(1e-15));
  CHECK(rep.Lambda_star == doctest::Approx(0.017730373932684138).epsilon(1e-8));
  CHECK(rep.lambda1 == doctest::Approx(0.098696044010893586).epsilon(1e-12));
  CHECK(rep.psi_norm == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(rep.sigma1 == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-12));
  CHECK(rep.lambda0 > 0.0);
  CHECK(rep.nonexistence_threshold_ok);  // lambda = 0.01 << lambda0
  CHECK(rep.L >= 2.0 * 2.0 * rep.C1);
  CHECK(rep.rho1 > 0.0);
  CHECK(rep.k_star > 0);
  // 0 < r_tilde <= r and r_tilde -> 0 with lambda
  CHECK(rep.r_tilde > 0.0);
  CHECK(rep.r_tilde <= rep.r);
  ProblemInstance small = inst;
  small.lambda = inst.lambda / 100.0;
  CHECK(compute_constants(small, 5.0).r_tilde < rep.r_tilde);
}

TEST_CASE("certificate passes for certified parameters and reports witnesses") {
  ProblemInstance inst = default_instance();
  const ConstantsReport c0 = compute_constants(inst, 2.0);
  inst.lambda = 0.5 * c0.Lambda_star;
  const ConstantsReport c = compute_constants(inst, 2.0);
  const EvenBasis basis = build_basis(2.0, 4);
  const StraussApproximant fk(inst.g, 2 * c.k_star, inst.theta);
  const CertificateReport rep = sphere_sign_certificate(
      inst, basis, fk, c.r, 200, 0.5 / static_cast<double>(c.k_star));
  CHECK(rep.pass);
  CHECK(rep.min_value > 0.0);
  CHECK(rep.samples == 200);
  CHECK(rep.worst_direction.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("certificate at the origin is exactly zero") {
  // <F(0), 0> = 0 regardless of the instance
  ProblemInstance inst = default_instance();
  const EvenBasis basis = build_basis(2.0, 4);
  const StraussApproximant fk(inst.g, 100, inst.theta);
  AssemblyOptions opts;
  opts.forcing_scale = 0.01;
  const Vector zero = Vector::Zero(4);
  CHECK(assemble_F(inst, basis, fk, zero, opts).dot(zero) == 0.0);
}
