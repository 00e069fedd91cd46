#pragma once

#include <functional>

namespace nakprod {

struct QuadratureResult {
    double value;
    double error_estimate;
    int evaluations;
};

/// Adaptive Gauss-Kronrod (G7, K15) on a finite interval.
/// Stops when the K15-G7 error estimate meets abs_tol + rel_tol*|I|.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 0.0,
                           int max_segments = 2000);

/// Integral over [a, inf) via the rational substitution x = a + u/(1-u).
QuadratureResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                  double rel_tol = 1e-10, double abs_tol = 0.0,
                                  int max_segments = 2000);

} // namespace nakprod
