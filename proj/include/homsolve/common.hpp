#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>

namespace homsolve {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ArrayX = Eigen::ArrayXd;

/// Scalar function handle used for the data functions A, A', a1, g.
using ScalarFn = std::function<double(double)>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent run configuration (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// A numerical procedure failed to meet its stated tolerance.
struct NumericsError : Error {
  using Error::Error;
};

/// The nonlinear solver or a continuation schedule gave up (CLI exit code 3).
struct SolverStall : Error {
  using Error::Error;
};

inline ArrayX apply(const ScalarFn& f, const ArrayX& x) {
  ArrayX y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return y;
}

/// Uniform grid on [-radius, radius] built by mirroring, so t[i] == -t[N-1-i]
/// exactly in floating point.
ArrayX symmetric_grid(double radius, Eigen::Index points);

}  // namespace homsolve
