#include "nakprod/bessel.hpp"
#include "nakprod/errors.hpp"

#include <cmath>

namespace nakprod {

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
    nu = std::fabs(nu); // K_{-nu} = K_nu
    // Small-argument growth check: K_nu(x) ~ Gamma(nu)/2 * (2/x)^nu for nu > 0,
    // ~ -ln(x/2) for nu = 0. Refuse to return a value past double range.
    if (nu > 0.0) {
        const double log_est = std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
        if (log_est > 708.0)
            throw OverflowError("bessel_k: result overflows double range (nu=" +
                                std::to_string(nu) + ", x=" + std::to_string(x) + ")");
    }
    const double v = std::cyl_bessel_k(nu, x);
    if (!std::isfinite(v))
        throw OverflowError("bessel_k: non-finite result for nu=" + std::to_string(nu) +
                            ", x=" + std::to_string(x));
    return v;
}

} // namespace nakprod
