#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace sinhreg {

/// Result of an adaptive quadrature.
struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Normalized sinc, sin(pi x) / (pi x), with sinc(0) = 1.
double sinc(double x);

/// sin(pi x) with exact argument reduction, so sin_pi(k) == 0 for integer k.
double sin_pi(double x);

/// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// exp(-|x|) * I1(x), the exponentially scaled modified Bessel function of
/// order one. Used for the analytic continuation of the sinh window transform.
double bessel_i1_scaled(double x);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_subintervals = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature with bisection of the
/// worst panel. `b` may be +infinity; the tail is mapped by x = a + t/(1-t).
/// The tolerance applies to the reducible part of the error estimate; the
/// returned estimate still includes the 50*eps rounding floor of each panel.
/// Throws ConvergenceError when the subinterval budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol);

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options);

}  // namespace sinhreg
