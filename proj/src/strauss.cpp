#include "homsolve/strauss.hpp"

#include "homsolve/quadrature.hpp"

#include <cmath>
#include <vector>

namespace homsolve {

double antiderivative(const ScalarFn& g, double s, double abs_tol) {
  if (s == 0.0) return 0.0;
  return integrate_adaptive(g, 0.0, s, abs_tol, "antiderivative failure");
}

StraussApproximant::StraussApproximant(ScalarFn g, long long k, double theta,
                                       double quad_tol)
    : g_(std::move(g)), k_(k), kd_(static_cast<double>(k)), quad_tol_(quad_tol) {
  if (k < 1) throw ConfigError("StraussApproximant: k must be >= 1");
  const double inv = 1.0 / kd_;
  clamp_pos_ = kd_ * g_integral(kd_, kd_ + inv);
  clamp_neg_ = -kd_ * g_integral(-kd_, -kd_ - inv);
  slope_pos_ = kd_ * kd_ * g_integral(inv, 2.0 * inv);
  slope_neg_ = kd_ * kd_ * g_integral(-inv, -2.0 * inv);
  lipschitz_cached_ = lipschitz_estimate(*this, std::min(kd_ + 1.0, 64.0), 4096);
  growth_constant_ = homsolve::growth_constant(*this, theta, 20.0, 2048);
}

double StraussApproximant::g_integral(double a, double b) const {
  // G(b) - G(a) computed directly as \int_a^b g to avoid cancellation.
  return integrate_adaptive(g_, a, b, quad_tol_, "antiderivative failure");
}

double StraussApproximant::eval(double s) const {
  const double inv = 1.0 / kd_;
  if (s <= -kd_) return clamp_neg_;
  if (s < -inv) return -kd_ * g_integral(s, s - inv);
  if (s < 0.0) return slope_neg_ * s;
  if (s <= inv) return slope_pos_ * s;
  if (s <= kd_) return kd_ * g_integral(s, s + inv);
  return clamp_pos_;
}

double uniform_error(const StraussApproximant& fk, const ScalarFn& g, double m,
                     Eigen::Index samples) {
  const ArrayX s = symmetric_grid(m, samples);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < samples; ++i)
    worst = std::max(worst, std::abs(fk.eval(s[i]) - g(s[i])));
  return worst;
}

double lipschitz_estimate(const StraussApproximant& fk, double radius,
                          Eigen::Index samples) {
  const ArrayX s = symmetric_grid(radius, samples);
  double worst = 0.0;
  double prev = fk.eval(s[0]);
  for (Eigen::Index i = 1; i < samples; ++i) {
    const double cur = fk.eval(s[i]);
    worst = std::max(worst, std::abs(cur - prev) / (s[i] - s[i - 1]));
    prev = cur;
  }
  return worst;
}

double growth_constant(const StraussApproximant& fk, double theta, double radius,
                       Eigen::Index samples) {
  const double kd = static_cast<double>(fk.k());
  const double inv = 1.0 / kd;
  std::vector<double> pts;
  pts.reserve(2 * samples + 4);
  const double lo = std::log(0.1 * inv);
  const double hi = std::log(std::max(radius, kd + 1.0));
  for (Eigen::Index i = 0; i < samples; ++i) {
    const double s = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(samples - 1));
    pts.push_back(s);
    pts.push_back(-s);
  }
  pts.push_back(inv);
  pts.push_back(-inv);
  pts.push_back(kd);
  pts.push_back(-kd);
  double sup = 1.0;
  for (double s : pts) {
    const double sf = s * fk.eval(s);
    const double a = std::abs(s);
    if (a >= inv) sup = std::max(sup, sf / std::pow(a, theta));
    if (a <= inv && a > 0.0) sup = std::max(sup, sf / (a * a));
  }
  return sup;
}

}  // namespace homsolve
