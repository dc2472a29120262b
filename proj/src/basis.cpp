#include "homsolve/basis.hpp"

#include <cmath>

namespace homsolve {

GalerkinCoeffs project_coeffs(const GalerkinCoeffs& c, Eigen::Index M) {
  GalerkinCoeffs out;
  out.xi = Vector::Zero(M);
  const Eigen::Index m = std::min(M, c.xi.size());
  out.xi.head(m) = c.xi.head(m);
  return out;
}

EvenBasis::EvenBasis(double n, int M, QuadratureRule quad)
    : n_(n), M_(M), quad_(std::move(quad)) {
  omega_.resize(M);
  nu_.resize(M);
  for (int l = 1; l <= M; ++l) {
    omega_[l - 1] = (2.0 * l - 1.0) * M_PI / (2.0 * n);
    nu_[l - 1] = 1.0 / std::sqrt(n * (1.0 + omega_[l - 1] * omega_[l - 1]));
  }
  const Eigen::Index Q = quad_.nodes.size();
  E_.resize(Q, M);
  D_.resize(Q, M);
  for (int l = 0; l < M; ++l)
    for (Eigen::Index i = 0; i < Q; ++i) {
      E_(i, l) = nu_[l] * std::cos(omega_[l] * quad_.nodes[i]);
      D_(i, l) = -nu_[l] * omega_[l] * std::sin(omega_[l] * quad_.nodes[i]);
    }
}

double EvenBasis::eval(int l, double t) const {
  return nu_[l - 1] * std::cos(omega_[l - 1] * t);
}

double EvenBasis::eval_deriv(int l, double t) const {
  return -nu_[l - 1] * omega_[l - 1] * std::sin(omega_[l - 1] * t);
}

double EvenBasis::eval_second(int l, double t) const {
  return -nu_[l - 1] * omega_[l - 1] * omega_[l - 1] * std::cos(omega_[l - 1] * t);
}

void EvenBasis::synthesize(const Vector& xi, const ArrayX& t, ArrayX& u,
                           ArrayX& du) const {
  u = ArrayX::Zero(t.size());
  du = ArrayX::Zero(t.size());
  for (int l = 0; l < M_; ++l) {
    const double c = xi[l] * nu_[l];
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double ph = omega_[l] * t[i];
      u[i] += c * std::cos(ph);
      du[i] -= c * omega_[l] * std::sin(ph);
    }
  }
}

void EvenBasis::synthesize(const Vector& xi, const ArrayX& t, ArrayX& u, ArrayX& du,
                           ArrayX& ddu) const {
  synthesize(xi, t, u, du);
  ddu = ArrayX::Zero(t.size());
  for (int l = 0; l < M_; ++l) {
    const double c = xi[l] * nu_[l] * omega_[l] * omega_[l];
    for (Eigen::Index i = 0; i < t.size(); ++i) ddu[i] -= c * std::cos(omega_[l] * t[i]);
  }
}

void EvenBasis::synthesize_at_nodes(const Vector& xi, ArrayX& u, ArrayX& du) const {
  u = (E_ * xi).array();
  du = (D_ * xi).array();
}

double EvenBasis::gram_deviation() const {
  const Matrix W = quad_.weights.matrix().asDiagonal();
  Matrix G = E_.transpose() * W * E_ + D_.transpose() * W * D_;
  G -= Matrix::Identity(M_, M_);
  return G.cwiseAbs().maxCoeff();
}

EvenBasis build_basis(double n, int M, int Q) {
  if (n <= 0.0 || M < 1) throw ConfigError("build_basis: need n > 0 and M >= 1");
  int q = Q > 0 ? Q : std::max(2 * M + 8, 64);
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 8; ++attempt) {
    EvenBasis b(n, M, composite_gauss_legendre(-n, n, q));
    const double dev = b.gram_deviation();
    best = std::min(best, dev);
    if (dev <= 1e-10) return b;
    q *= 2;
  }
  if (best <= 1e-8) {
    // accept the last acceptable size rather than over-refining
    EvenBasis b(n, M, composite_gauss_legendre(-n, n, q / 2));
    if (b.gram_deviation() <= 1e-8) return b;
  }
  throw NumericsError("quadrature order insufficient");
}

}  // namespace homsolve
