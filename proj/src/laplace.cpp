#include "nakprod/laplace.hpp"
#include "nakprod/errors.hpp"

#include <cmath>
#include <vector>

namespace nakprod {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

using cplx = std::complex<double>;

// Fixed Talbot contour s(theta) = r*theta*(cot(theta) + i), r = 2M/(5t)
// (Abate & Valko). Midpoint-free trapezoid over theta = k*pi/M.
double talbot(const LaplaceTransform& F, double t, int M, double scale) {
    const double r = scale * 2.0 * M / (5.0 * t);
    double acc = 0.5 * std::exp(r * t) * F(cplx(r, 0.0)).real();
    for (int k = 1; k < M; ++k) {
        const double theta = k * kPi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const cplx s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const cplx amp = std::exp(s * t) * F(s) * cplx(1.0, sigma);
        acc += amp.real();
    }
    return acc * r / M;
}

// Abate-Whitt Euler algorithm: Bromwich-line trapezoid accelerated by
// binomial averaging of the alternating partial sums. Only uses Re(s) > 0.
double bromwich_euler(const LaplaceTransform& F, double t, int M, double scale) {
    const double A = M * std::log(10.0) / 3.0; // discretization (aliasing) parameter
    const double re = A / (2.0 * t) * scale;
    // partial sums of (-1)^k Re F((A/2 + i k pi)/t)
    std::vector<double> partial(2 * M + 1);
    double run = 0.5 * F(cplx(re, 0.0)).real();
    partial[0] = run;
    for (int k = 1; k <= 2 * M; ++k) {
        const cplx s(re, k * kPi / t);
        run += (k % 2 == 0 ? 1.0 : -1.0) * F(s).real();
        partial[k] = run;
    }
    // Euler transform: binomially weighted average of the last M+1 partial sums
    double avg = 0.0;
    double binom = std::pow(2.0, -M); // C(M,0)/2^M
    for (int j = 0; j <= M; ++j) {
        avg += binom * partial[M + j];
        binom *= static_cast<double>(M - j) / (j + 1);
    }
    return avg * std::exp(re * t) / t;
}

double run_method(const LaplaceTransform& F, double t, const InvLaplaceConfig& cfg, int order) {
    switch (cfg.method) {
        case InvLaplaceMethod::Talbot:
            return talbot(F, t, order, cfg.scale_hint);
        case InvLaplaceMethod::BromwichEuler:
            return bromwich_euler(F, t, order, cfg.scale_hint);
    }
    throw DomainError("inverse_laplace: unknown method");
}

} // namespace

double inverse_laplace(const LaplaceTransform& F, double t, const InvLaplaceConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("inverse_laplace: t must be positive");
    if (cfg.method_order < 16) throw DomainError("inverse_laplace: method_order must be >= 16");
    const double v1 = run_method(F, t, cfg, cfg.method_order);
    if (!cfg.check_convergence) return v1;
    const int order2 = cfg.method_order + std::max(6, cfg.method_order / 3);
    const double v2 = run_method(F, t, cfg, order2);
    const double scale = std::max({std::fabs(v1), std::fabs(v2), 1e-300});
    if (std::fabs(v1 - v2) > cfg.tolerance * scale)
        throw ConvergenceError("inverse_laplace: refinements disagree (" + std::to_string(v1) +
                               " vs " + std::to_string(v2) + " at t=" + std::to_string(t) + ")");
    return v2;
}

} // namespace nakprod
