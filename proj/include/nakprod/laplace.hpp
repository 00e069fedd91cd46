#pragma once

#include <complex>
#include <functional>

namespace nakprod {

/// Complex-valued Laplace transform F(s).
using LaplaceTransform = std::function<std::complex<double>(std::complex<double>)>;

enum class InvLaplaceMethod {
    Talbot,        // fixed Talbot contour (Abate-Valko); F must be analytic off (-inf, 0]
    BromwichEuler, // Abate-Whitt Euler summation; evaluates F only at Re(s) > 0
};

struct InvLaplaceConfig {
    int method_order = 32;    // contour nodes / expansion terms (>= 16)
    double scale_hint = 1.0;  // multiplies the contour's time scale
    InvLaplaceMethod method = InvLaplaceMethod::Talbot;
    bool check_convergence = true; // re-run at a higher order and compare
    double tolerance = 1e-6;       // agreement required between the two orders
};

/// Numerical inverse Laplace transform f(t) for t > 0.
/// Throws ConvergenceError when the two-order refinement check disagrees
/// beyond cfg.tolerance.
double inverse_laplace(const LaplaceTransform& F, double t, const InvLaplaceConfig& cfg = {});

} // namespace nakprod
