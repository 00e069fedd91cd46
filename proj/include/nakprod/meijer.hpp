#pragma once

#include <complex>
#include <span>

namespace nakprod {

/// Controls the vertical-line Mellin-Barnes quadrature.
struct MellinBarnesConfig {
    int node_count = 129;            // initial trapezoid nodes (>= 32)
    double contour_shift = std::numeric_limits<double>::quiet_NaN(); // NaN = auto
    double truncation_height = 0.0;  // imaginary-axis cutoff, 0 = auto
    double rel_tolerance = 1e-9;     // successive-refinement agreement target
    int max_refinements = 10;
    double min_pole_separation = 1e-3;
};

/// G^{2,L}_{L,2}[x | a_1..a_L ; 0, 1/2] with a_l = 1 - m_l, all m_l > 0.
/// This is the (and only the) Meijer-G class appearing in the product-Nakagami
/// MGF; the contour integrand is Gamma(-s)Gamma(1/2-s) prod_l Gamma(m_l+s) x^s.
double meijer_g_2L_L2(std::span<const double> a_top, double x,
                      const MellinBarnesConfig& cfg = {});

/// Same class continued to complex x (principal branch, |arg x| strictly
/// inside the convergence sector (L+2)*pi/2). Needed to evaluate the MGF at
/// complex Laplace nodes.
std::complex<double> meijer_g_2L_L2(std::span<const double> a_top, std::complex<double> x,
                                    const MellinBarnesConfig& cfg = {});

/// G^{2,0}_{0,2}[x | - ; b_1, b_2], the product-pair PDF class; closed form is
/// 2 x^{(b1+b2)/2} K_{b1-b2}(2 sqrt(x)), used to validate the contour kernel.
double meijer_g_20_02(double b1, double b2, double x, const MellinBarnesConfig& cfg = {});

} // namespace nakprod
