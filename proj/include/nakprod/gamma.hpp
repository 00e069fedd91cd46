#pragma once

#include <complex>

namespace nakprod {

/// log|Gamma(x)| together with the sign of Gamma(x), for real x off the poles.
struct SignedLogGamma {
    double log_abs;
    int sign; // +1 or -1
};

/// Principal-branch log-gamma for complex z (relative accuracy ~1e-13 for
/// |z| <= 100). Throws PoleError on the non-positive integers.
std::complex<double> log_gamma(std::complex<double> z);

/// Real-axis variant; throws PoleError on non-positive integers.
SignedLogGamma signed_log_gamma(double x);

/// Gamma(x) for real x (via signed_log_gamma; overflow saturates to +-inf).
double gamma_fn(double x);

/// Pochhammer symbol (x)_n = Gamma(x+n)/Gamma(x) for real x, n.
double pochhammer(double x, double n);

/// log|(x)_n| with sign, for building large products in log space.
SignedLogGamma log_pochhammer(double x, double n);

/// Gaussian tail probability Q(x) = P(Z > x), Z standard normal.
double gaussian_q(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x)/Gamma(a), a > 0.
double gamma_p(double a, double x);

/// sin(pi*x) with argument reduction (exact at integers).
double sin_pi(double x);

} // namespace nakprod
