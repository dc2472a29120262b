#include "homsolve/quadrature.hpp"

#include <cmath>

namespace homsolve {

ArrayX symmetric_grid(double radius, Eigen::Index points) {
  ArrayX t(points);
  const Eigen::Index half = points / 2;
  const double h = 2.0 * radius / static_cast<double>(points - 1);
  for (Eigen::Index i = 0; i < half; ++i) {
    const double v = radius - static_cast<double>(i) * h;
    t[i] = -v;
    t[points - 1 - i] = v;
  }
  if (points % 2 == 1) t[half] = 0.0;
  return t;
}

QuadratureRule gauss_legendre(int order) {
  // Newton iteration on the Legendre recurrence; nodes come in +/- pairs.
  QuadratureRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double z1 = 0.0, pp = 0.0;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 1e-15);
    r.nodes[i] = -z;
    r.nodes[order - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[order - 1 - i] = r.weights[i];
  }
  return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, int min_nodes,
                                        int panel_order) {
  const int panels = (min_nodes + panel_order - 1) / panel_order;
  const QuadratureRule base = gauss_legendre(panel_order);
  QuadratureRule r;
  r.nodes.resize(static_cast<Eigen::Index>(panels) * panel_order);
  r.weights.resize(r.nodes.size());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < panel_order; ++i) {
      r.nodes[p * panel_order + i] = mid + 0.5 * h * base.nodes[i];
      r.weights[p * panel_order + i] = 0.5 * h * base.weights[i];
    }
  }
  return r;
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174891};
constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double k = 0.0;
  for (int i = 0; i < 7; ++i) k += kWgk[i] * (fv[i] + fv[14 - i]);
  k += kWgk[7] * fv[7];
  double g = kWg[3] * fv[7];
  for (int i = 0; i < 3; ++i) g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  return {h * k, std::abs(h * (k - g))};
}

double adapt(const ScalarFn& f, double a, double b, double tol,
             const char* diagnostic, int depth) {
  const GkResult r = gk15(f, a, b);
  if (!std::isfinite(r.value))
    throw NumericsError(std::string(diagnostic) + ": non-finite integrand");
  // the roundoff floor: no subdivision can beat eps * |value|
  const double floor_tol =
      32.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  if (r.error <= std::max(tol, floor_tol) || b - a < 1e-300) return r.value;
  if (depth <= 0) throw NumericsError(diagnostic);
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, diagnostic, depth - 1) +
         adapt(f, c, b, 0.5 * tol, diagnostic, depth - 1);
}

}  // namespace

double integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol,
                          const char* diagnostic, int max_depth) {
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  return sign * adapt(f, lo, hi, abs_tol, diagnostic, max_depth);
}

}  // namespace homsolve
