#pragma once

namespace nakprod {

/// Modified Bessel function of the second kind K_nu(x), x > 0.
/// Symmetric in nu; relative accuracy ~1e-14 for |nu| <= 20, 0 < x <= 50.
/// Throws OverflowError instead of returning a saturated or silently wrong
/// value when the result exceeds double range (x -> 0 with large nu).
double bessel_k(double nu, double x);

} // namespace nakprod
