#pragma once

#include <functional>

namespace relaysec {

// E1(t) for t > 0.
double expint_e1(double t);
// Ei(x) for x < 0, i.e. -E1(-x).
double expint_ei(double x);
// e^t Ei(-t) for t > 0, evaluated without forming e^t.
double exp_scaled_ei(double t);

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  int evaluations = 0;
};

namespace detail {
// the two E1 branches, exposed so they can be compared where both converge
double e1_series(double t);
double scaled_e1_fraction(double t);
}  // namespace detail

// Adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace relaysec
