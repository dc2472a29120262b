#include "homsolve/problem.hpp"

#include "homsolve/quadrature.hpp"

#include <cmath>

namespace homsolve {

ScalarFn catalog_A_arctan(double gamma) {
  return [gamma](double t) { return gamma + (1.0 - gamma) * (0.5 + std::atan(t) / M_PI); };
}

ScalarFn catalog_dA_arctan(double gamma) {
  return [gamma](double t) { return (1.0 - gamma) / (M_PI * (1.0 + t * t)); };
}

ScalarFn catalog_A_constant(double gamma) {
  return [gamma](double) { return gamma; };
}

Weight catalog_weight_gaussian() {
  Weight w;
  w.name = "gaussian";
  w.value = [](double t) { return std::exp(-t * t); };
  // int_R^inf e^{-s t^2} dt <= e^{-s R^2}/(2 s R), doubled for both tails
  w.tail_bound = [](double R, double s) {
    if (R <= 0.0) return std::numeric_limits<double>::infinity();
    return std::exp(-s * R * R) / (s * R);
  };
  return w;
}

Weight catalog_weight_laplace() {
  Weight w;
  w.name = "laplace";
  w.value = [](double t) { return std::exp(-std::abs(t)); };
  w.tail_bound = [](double R, double s) { return 2.0 * std::exp(-s * R) / s; };
  return w;
}

Weight catalog_weight_zero() {
  Weight w;
  w.name = "zero";
  w.value = [](double) { return 0.0; };
  w.tail_bound = [](double, double) { return 0.0; };
  return w;
}

ScalarFn catalog_g_signed_power(double theta) {
  return [theta](double s) {
    if (s == 0.0) return 0.0;
    return (s > 0.0 ? 1.0 : -1.0) * std::pow(std::abs(s), theta - 1.0);
  };
}

ScalarFn catalog_g_zero() {
  return [](double) { return 0.0; };
}

ProblemInstance default_instance() {
  return make_instance("arctan", "gaussian", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5);
}

ProblemInstance make_instance(const std::string& A_kind, const std::string& a1_kind,
                              const std::string& g_kind, double q, double p,
                              double theta, double lambda, double gamma) {
  ProblemInstance inst;
  inst.q = q;
  inst.p = p;
  inst.theta = theta;
  inst.lambda = lambda;
  inst.gamma = gamma;
  if (A_kind == "arctan") {
    inst.A = catalog_A_arctan(gamma);
    inst.dA = catalog_dA_arctan(gamma);
  } else if (A_kind == "constant") {
    inst.A = catalog_A_constant(gamma);
    inst.dA = [](double) { return 0.0; };
  } else {
    throw ConfigError("unknown diffusion kind: " + A_kind);
  }
  if (a1_kind == "gaussian") {
    inst.a1 = catalog_weight_gaussian();
  } else if (a1_kind == "laplace") {
    inst.a1 = catalog_weight_laplace();
  } else if (a1_kind == "zero") {
    inst.a1 = catalog_weight_zero();
  } else {
    throw ConfigError("unknown weight kind: " + a1_kind);
  }
  if (g_kind == "signed_power") {
    inst.g = catalog_g_signed_power(theta);
  } else if (g_kind == "zero") {
    inst.g = catalog_g_zero();
  } else {
    throw ConfigError("unknown derivative nonlinearity kind: " + g_kind);
  }
  inst.name = A_kind + "+" + a1_kind + "+" + g_kind;
  return inst;
}

std::vector<ProblemInstance> catalog_instances() {
  std::vector<ProblemInstance> v;
  v.push_back(make_instance("arctan", "gaussian", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5));
  v.push_back(make_instance("arctan", "gaussian", "signed_power", 1.5, 3.0, 2.5, 0.01, 0.5));
  v.push_back(make_instance("constant", "laplace", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5));
  v.push_back(make_instance("constant", "gaussian", "zero", 1.5, 3.0, 3.0, 0.01, 0.5));
  return v;
}

namespace {

double checked(const ScalarFn& f, double t, const char* what) {
  const double v = f(t);
  if (!std::isfinite(v))
    throw NumericsError(std::string("instance evaluation error: ") + what + " at t=" +
                        std::to_string(t));
  return v;
}

}  // namespace

HypothesisReport validate_hypotheses(const ProblemInstance& inst, double grid_radius,
                                     Eigen::Index grid_points) {
  if (grid_points < 2 || grid_radius <= 0.0)
    throw ConfigError("validate_hypotheses: need grid_points >= 2 and grid_radius > 0");
  HypothesisReport rep;
  const ArrayX t = symmetric_grid(grid_radius, grid_points);

  auto push = [&rep](HypothesisCheck c) {
    rep.all_pass = rep.all_pass && c.pass;
    rep.checks.push_back(std::move(c));
  };

  {
    HypothesisCheck c{"H1/H3 exponent ranges", true, 0.0, 0.0, 0, ""};
    c.pass = inst.q > 1.0 && inst.q < 2.0 && inst.p > 2.0 && inst.theta > 2.0 &&
             inst.theta <= 3.0 && inst.gamma > 0.0 && inst.gamma < 1.0;
    if (!c.pass) c.detail = "require 1<q<2<p, 2<theta<=3, 0<gamma<1";
    push(c);
  }

  ArrayX a1v(grid_points), Av(grid_points);
  for (Eigen::Index i = 0; i < grid_points; ++i) {
    a1v[i] = checked(inst.a1.value, t[i], "a1");
    Av[i] = checked(inst.A, t[i], "A");
  }

  {
    HypothesisCheck c{"a1 even", true, 0.0, 0.0, 0, ""};
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid_points / 2; ++i) {
      const double d = std::abs(a1v[i] - a1v[grid_points - 1 - i]);
      if (d > worst) {
        worst = d;
        c.worst_point = t[i];
      }
    }
    c.worst_value = -worst;
    c.pass = worst == 0.0;
    push(c);
  }
  {
    HypothesisCheck c{"a1 positive", true, a1v[0], t[0], 0, ""};
    for (Eigen::Index i = 0; i < grid_points; ++i) {
      if (a1v[i] < c.worst_value) {
        c.worst_value = a1v[i];
        c.worst_point = t[i];
      }
      if (a1v[i] == 0.0) ++c.ties;
    }
    c.pass = c.worst_value > 0.0;
    push(c);
  }
  {
    HypothesisCheck c{"A bounded below by gamma", true, Av[0] - inst.gamma, t[0], 0, ""};
    for (Eigen::Index i = 0; i < grid_points; ++i) {
      const double m = Av[i] - inst.gamma;
      if (m < c.worst_value) {
        c.worst_value = m;
        c.worst_point = t[i];
      }
      if (m == 0.0) ++c.ties;
    }
    c.pass = c.worst_value >= 0.0;
    push(c);
  }
  {
    HypothesisCheck c{"A nondecreasing", true, 0.0, 0.0, 0, ""};
    double worst = 0.0;
    for (Eigen::Index i = 0; i + 1 < grid_points; ++i) {
      const double m = Av[i + 1] - Av[i];
      if (m < worst) {
        worst = m;
        c.worst_point = t[i];
      }
      if (m == 0.0) ++c.ties;
    }
    c.worst_value = worst;
    c.pass = worst >= 0.0;
    push(c);
  }
  {
    HypothesisCheck c{"A' analytic vs finite difference", true, 0.0, 0.0, 0, ""};
    const double h = 1e-6;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid_points; ++i) {
      const double fd =
          (checked(inst.A, t[i] + h, "A") - checked(inst.A, t[i] - h, "A")) / (2.0 * h);
      const double an = checked(inst.dA, t[i], "A'");
      const double rel = std::abs(an - fd) / std::max(1.0, std::abs(fd));
      if (rel > worst) {
        worst = rel;
        c.worst_point = t[i];
      }
    }
    c.worst_value = worst;
    c.pass = worst <= 1e-4;
    push(c);
  }
  {
    HypothesisCheck sign{"s g(s) nonnegative", true, 0.0, 0.0, 0, ""};
    HypothesisCheck grow{"s g(s) bounded by |s|^theta", true, 0.0, 0.0, 0, ""};
    double worst_sign = std::numeric_limits<double>::infinity();
    double worst_grow = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < grid_points; ++i) {
      const double s = t[i];
      const double sg = s * checked(inst.g, s, "g");
      const double env = std::pow(std::abs(s), inst.theta);
      // equality at floating-point resolution counts as a tie, not a violation
      const double fp_tie = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(env));
      if (sg < worst_sign) {
        worst_sign = sg;
        sign.worst_point = s;
      }
      if (env - sg < worst_grow) {
        worst_grow = env - sg;
        grow.worst_point = s;
      }
      if (std::abs(sg) <= fp_tie) ++sign.ties;
      if (std::abs(env - sg) <= fp_tie) ++grow.ties;
    }
    const double fp_tie_sign =
        16.0 * std::numeric_limits<double>::epsilon() *
        std::max(1.0, std::pow(grid_radius, inst.theta));
    sign.worst_value = worst_sign;
    sign.pass = worst_sign >= -fp_tie_sign;
    grow.worst_value = worst_grow;
    grow.pass = worst_grow >= -fp_tie_sign;
    push(sign);
    push(grow);
  }
  return rep;
}

double lstar_tail_bound(const ProblemInstance& inst, double truncation_radius) {
  return inst.a1.tail_bound(truncation_radius, inst.lstar_exponent());
}

double lstar_norm_a1(const ProblemInstance& inst, double truncation_radius,
                     double tail_tol, double quad_tol) {
  const double s = inst.lstar_exponent();
  const double tail = lstar_tail_bound(inst, truncation_radius);
  if (!(tail <= tail_tol)) throw NumericsError("truncation insufficient");
  const auto& a1 = inst.a1.value;
  const double body = integrate_adaptive(
      [&a1, s](double t) { return std::pow(std::abs(a1(t)), s); }, -truncation_radius,
      truncation_radius, quad_tol, "lstar quadrature failure");
  return std::pow(body, 1.0 / s);
}

}  // namespace homsolve
