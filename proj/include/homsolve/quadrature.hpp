#pragma once

#include "homsolve/common.hpp"

namespace homsolve {

/// Nodes and weights of a quadrature rule on some interval.
struct QuadratureRule {
  ArrayX nodes;
  ArrayX weights;

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule on [a, b] with at least `min_nodes` nodes,
/// assembled from equal panels of `panel_order` points each.
QuadratureRule composite_gauss_legendre(double a, double b, int min_nodes,
                                        int panel_order = 16);

/// Adaptive Gauss(7)/Kronrod(15) quadrature of f over [a, b] to absolute
/// tolerance `abs_tol`. Throws NumericsError(diagnostic) when the recursion
/// depth is exhausted before the tolerance is met.
double integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol,
                          const char* diagnostic = "quadrature non-convergence",
                          int max_depth = 48);

}  // namespace homsolve
