#pragma once

#include <functional>

namespace abc::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  ///< Kronrod-vs-Gauss error estimate
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|) or max_intervals is hit.
Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol = 0.0, int max_intervals = 2000);

}  // namespace abc::quad
