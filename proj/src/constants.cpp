#include "homsolve/constants.hpp"

#include <cmath>

namespace homsolve {

double delta1(double gamma, double C, double C1, double p, double theta) {
  if (p <= 2.0 || theta <= 2.0 || gamma <= 0.0 || C1 <= 0.0)
    throw ConfigError("delta1: need p > 2, theta > 2, gamma > 0, C1 > 0");
  const double b1 = std::pow(gamma / (4.0 * std::pow(C, p - 2.0)), 1.0 / (p - 2.0));
  const double b2 = std::pow(
      gamma / (4.0 * C1 * std::max(std::pow(C, theta - 2.0), C)), 1.0 / (theta - 2.0));
  return std::min(b1, b2);
}

double lambda_star(double r, double gamma, double C2, double d1, double q) {
  return r * r * gamma / (2.0 * C2 * std::pow(d1, q));
}

double rho1(double r, double gamma, double lambda, double C2, double d1, double q) {
  return 0.5 * gamma * r * r - lambda * C2 * std::pow(d1, q);
}

long long k_star(double rho1_value, double C1, double n, double d1, double psi_norm) {
  if (!(rho1_value > 0.0)) throw NumericsError("lambda too large for certificate");
  const double coef = (C1 * std::sqrt(2.0 * n) + psi_norm) * d1;
  const double threshold = coef / rho1_value;
  if (!(threshold < 9e17)) throw NumericsError("lambda too large for certificate");
  long long k = static_cast<long long>(std::floor(threshold)) + 1;
  // direct verification guards against floating-point edge cases
  while (!(rho1_value > coef / static_cast<double>(k))) ++k;
  while (k > 1 && rho1_value > coef / static_cast<double>(k - 1)) --k;
  return k;
}

EigenPair eigen_pair(double n) {
  if (n <= 0.0) throw ConfigError("eigen_pair: n must be positive");
  EigenPair e;
  e.n = n;
  e.lambda1 = M_PI * M_PI / (4.0 * n * n);
  return e;
}

double weight_min(const ProblemInstance& inst, double n, Eigen::Index samples) {
  const ArrayX t = symmetric_grid(n, samples);
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < samples; ++i) lo = std::min(lo, inst.a1.value(t[i]));
  return lo;
}

double tau_subsolution_scale(const ProblemInstance& inst, double n,
                             Eigen::Index samples) {
  const double a_min = weight_min(inst, n, samples);
  if (!(a_min > 0.0)) throw NumericsError("weight vanishes on interval");
  const double l1 = eigen_pair(n).lambda1;
  return std::pow(inst.lambda * a_min / (1.0 + inst.gamma * l1), 1.0 / (2.0 - inst.q));
}

double r_tilde(double lambda, double r, double C2, double gamma, double q) {
  return std::min(r, std::sqrt(lambda) * std::sqrt(2.0 * C2 * std::pow(r, q) / gamma));
}

QMin q_min_and_threshold(double Lambda, double q, double p) {
  if (!(Lambda > 0.0)) throw ConfigError("q_min_and_threshold: Lambda must be positive");
  QMin out;
  out.m = std::pow(Lambda * (2.0 - q) / (p - 2.0), 1.0 / (p - q));
  out.C_Lambda =
      (Lambda * std::pow(out.m, q - 1.0) + std::pow(out.m, p - 1.0)) / out.m;
  return out;
}

double nonexistence_threshold(const ProblemInstance& inst, double R,
                              double r_tilde_value, Eigen::Index samples) {
  if (R <= 0.0) throw ConfigError("nonexistence_threshold: R must be positive");
  const double a_R = weight_min(inst, R, samples);
  if (!(a_R > 0.0)) throw NumericsError("threshold undefined");
  const double sigma1 = eigen_pair(R).lambda1;
  const double delta = 0.5;
  const double A_at = inst.A(embedding_constant() * r_tilde_value);
  const double target = A_at * sigma1 + A_at * delta + 1.0;

  auto C_of_lambda = [&](double lam) {
    return q_min_and_threshold(lam * a_R, inst.q, inst.p).C_Lambda;
  };
  double hi = 1.0;
  while (C_of_lambda(hi) < target) {
    hi *= 2.0;
    if (hi > 1e300) throw NumericsError("threshold undefined");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (C_of_lambda(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double lipschitz_of_A(const ProblemInstance& inst, double radius,
                      Eigen::Index samples) {
  const ArrayX t = symmetric_grid(radius, samples);
  double worst = 0.0;
  double prev = inst.A(t[0]);
  for (Eigen::Index i = 1; i < samples; ++i) {
    const double cur = inst.A(t[i]);
    worst = std::max(worst, std::abs(cur - prev) / (t[i] - t[i - 1]));
    prev = cur;
  }
  return worst;
}

double lieberman_L(const ProblemInstance& inst, double C, double r, double n,
                   double C1, double A_lip) {
  const double Cr = C * r;
  const double edge = std::max(std::abs(inst.a1.value(-n)), std::abs(inst.a1.value(n)));
  const double t1 = Cr + inst.lambda * edge * std::pow(Cr, inst.q - 1.0) +
                    std::pow(Cr, inst.p - 1.0) + 1.0;
  return 2.0 * std::max({t1, 2.0 * C1, inst.A(Cr), A_lip});
}

namespace {

// xorshift + Box-Muller; avoids the implementation-defined std distributions
struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed ? seed : 1) {}
  double uniform() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

}  // namespace

CertificateReport sphere_sign_certificate(const ProblemInstance& inst,
                                          const EvenBasis& basis,
                                          const StraussApproximant& fk, double r,
                                          int samples, double forcing_scale,
                                          unsigned long long seed) {
  CertificateReport rep;
  rep.samples = samples;
  rep.min_value = std::numeric_limits<double>::infinity();
  AssemblyOptions opts;
  opts.forcing_scale = forcing_scale;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Vector xi(basis.M());
    for (int j = 0; j < basis.M(); ++j) xi[j] = rng.normal();
    if (xi.norm() == 0.0) xi[0] = 1.0;
    xi *= r / xi.norm();
    const double v = assemble_F(inst, basis, fk, xi, opts).dot(xi);
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.worst_direction = xi / r;
    }
  }
  rep.pass = rep.min_value > 0.0;
  return rep;
}

ConstantsReport compute_constants(const ProblemInstance& inst, double n, double R,
                                  double lstar_radius, long long k_ref) {
  ConstantsReport rep;
  rep.n = n;
  rep.R = R;
  rep.strauss_k_ref = k_ref;
  rep.C = embedding_constant();
  StraussApproximant fk(inst.g, k_ref, inst.theta);
  rep.C1 = growth_constant(fk, inst.theta, 20.0, 4096);
  rep.C2 = lstar_norm_a1(inst, lstar_radius);
  rep.delta1 = delta1(inst.gamma, rep.C, rep.C1, inst.p, inst.theta);
  rep.r = 0.5 * rep.delta1;
  rep.Lambda_star = lambda_star(rep.r, inst.gamma, rep.C2, rep.delta1, inst.q);
  rep.rho1 = rho1(rep.r, inst.gamma, inst.lambda, rep.C2, rep.delta1, inst.q);
  rep.psi_norm = std::sqrt(2.0 * n);
  if (rep.rho1 > 0.0) {
    try {
      rep.k_star = k_star(rep.rho1, rep.C1, n, rep.delta1, rep.psi_norm);
    } catch (const NumericsError&) {
      rep.k_star = 0;
    }
  }
  rep.lambda1 = eigen_pair(n).lambda1;
  rep.a_tilde = weight_min(inst, n);
  rep.tau = rep.a_tilde > 0.0 ? tau_subsolution_scale(inst, n) : 0.0;
  rep.r_tilde = r_tilde(inst.lambda, rep.r, rep.C2, inst.gamma, inst.q);
  rep.a_tilde_R = weight_min(inst, R);
  rep.sigma1 = eigen_pair(R).lambda1;
  rep.Lambda = inst.lambda * rep.a_tilde_R;
  if (rep.Lambda > 0.0) {
    const QMin qm = q_min_and_threshold(rep.Lambda, inst.q, inst.p);
    rep.m = qm.m;
    rep.C_Lambda = qm.C_Lambda;
  }
  if (rep.a_tilde_R > 0.0) {
    rep.lambda0 = nonexistence_threshold(inst, R, rep.r);
    rep.nonexistence_threshold_ok = inst.lambda < rep.lambda0;
  }
  rep.A_tilde = lipschitz_of_A(inst);
  rep.L = lieberman_L(inst, rep.C, rep.r, n, rep.C1, rep.A_tilde);
  return rep;
}

}  // namespace homsolve
