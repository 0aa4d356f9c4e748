#pragma once

#include <functional>

namespace specenc::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (G7/K15) on a finite interval.  Bisects the
// interval with the largest error estimate until
//   sum(err) <= max(abs_tol, rel_tol * |sum(value)|).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                     int max_intervals = 4000);

// Integral over (0, inf) via the substitution x = u/(1-u), du weight 1/(1-u)^2.
QuadResult integrate_half_line(const std::function<double(double)>& f,
                               double abs_tol = 1e-12, double rel_tol = 1e-10,
                               int max_intervals = 4000);

}  // namespace specenc::quad
