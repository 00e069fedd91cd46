#include "nakprod/meijer.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace nakprod {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 6.28318530717958647692528676656;

using cplx = std::complex<double>;

// Integrand of 1/(2*pi*i) * Int Gamma(b1-s)Gamma(b2-s) prod_j Gamma(c_j+s) x^s ds
// along s = shift + i*t, evaluated in log space.
struct MbIntegrand {
    double b1, b2;
    std::span<const double> c;
    cplx log_x;
    double shift;

    cplx operator()(double t) const {
        const cplx s(shift, t);
        cplx lg = log_gamma(b1 - s) + log_gamma(b2 - s);
        for (double cj : c) lg += log_gamma(cj + s);
        lg += s * log_x;
        return std::exp(lg);
    }
};

struct TrapezoidState {
    double height;   // integrate t in [-height, height] (or [0, height] if symmetric)
    int intervals;   // current number of intervals of width h = span/intervals
    cplx sum;        // trapezoid accumulator: h * sum
    double max_mag;  // largest |integrand| seen (for tail checks)
};

// Trapezoid sums over [-T, T] with interleaved refinement: halving h only
// evaluates the new midpoints. Conjugate symmetry halves the work for real x.
struct TrapezoidSums {
    const MbIntegrand& f;
    double T;
    int n;          // current interval count (even)
    bool symmetric; // x real and positive
    cplx node_sum;  // weighted sum of f over the current nodes
    double max_mag = 0.0;

    TrapezoidSums(const MbIntegrand& fn, double height, int n0, bool sym)
        : f(fn), T(height), n(n0), symmetric(sym), node_sum(0.0, 0.0) {
        const double h = 2.0 * T / n;
        if (symmetric) {
            double racc = eval(0.0).real();
            for (int k = 1; 2 * k <= n; ++k)
                racc += (2 * k == n ? 1.0 : 2.0) * eval(k * h).real();
            node_sum = cplx(racc, 0.0);
        } else {
            for (int k = 0; k <= n; ++k) {
                const double w = (k == 0 || k == n) ? 0.5 : 1.0;
                node_sum += w * eval(-T + k * h);
            }
        }
    }

    cplx eval(double t) {
        const cplx v = f(t);
        max_mag = std::max(max_mag, std::abs(v));
        return v;
    }

    cplx value() const { return node_sum * (2.0 * T / n); }

    void refine() {
        const double h = 2.0 * T / n; // spacing before refinement
        if (symmetric) {
            double racc = 0.0;
            for (int k = 0; 2 * k < n; ++k) racc += 2.0 * eval((k + 0.5) * h).real();
            node_sum += cplx(racc, 0.0);
        } else {
            cplx acc(0.0, 0.0);
            for (int k = 0; k < n; ++k) acc += eval(-T + (k + 0.5) * h);
            node_sum += acc;
        }
        n *= 2;
    }
};

cplx mellin_barnes(double b1, double b2, std::span<const double> c, cplx x,
                   const MellinBarnesConfig& cfg) {
    if (!(std::abs(x) > 0.0) || !std::isfinite(std::abs(x)))
        throw DomainError("mellin_barnes: x must be finite and non-zero");
    if (cfg.node_count < 32) throw DomainError("mellin_barnes: node_count must be >= 32");

    const double right_edge = std::min(b1, b2); // right pole families start here
    double left_edge = -std::numeric_limits<double>::infinity();
    for (double cj : c) left_edge = std::max(left_edge, -cj);

    double shift = cfg.contour_shift;
    if (std::isnan(shift))
        shift = std::isinf(left_edge) ? right_edge - 0.75 : 0.5 * (left_edge + right_edge);

    // The contour must run strictly between the two pole families.
    const double sep_right = right_edge - shift;
    const double sep_left = std::isinf(left_edge) ? sep_right : shift - left_edge;
    if (sep_right < cfg.min_pole_separation || sep_left < cfg.min_pole_separation)
        throw ContourError("mellin_barnes: contour shift " + std::to_string(shift) +
                           " does not separate pole families (gaps " +
                           std::to_string(sep_left) + ", " + std::to_string(sep_right) + ")");

    const cplx log_x = std::log(x);
    const double arg_x = std::arg(x);
    const int gamma_count = 2 + static_cast<int>(c.size());
    const double decay = gamma_count * kPi / 2.0 - std::fabs(arg_x);
    if (decay < 0.2)
        throw ContourError("mellin_barnes: |arg x| = " + std::to_string(std::fabs(arg_x)) +
                           " too close to the convergence sector boundary");

    const bool symmetric = (x.imag() == 0.0 && x.real() > 0.0);

    double T = cfg.truncation_height > 0.0
                   ? cfg.truncation_height
                   : std::max(10.0, (40.0 + std::fabs(shift * std::log(std::abs(x)))) / decay);

    for (int grow = 0; grow < 6; ++grow) {
        MbIntegrand f{b1, b2, c, log_x, shift};
        double max_mag = 0.0;
        int n = std::max(cfg.node_count - 1, static_cast<int>(std::ceil(2.0 * T / 0.25)));
        n += n % 2; // even interval count so refinement reuses nodes cleanly
        cplx prev = trapezoid_full(f, T, n, symmetric, max_mag);
        bool converged = false;
        cplx result = prev;
        for (int r = 0; r < cfg.max_refinements; ++r) {
            n *= 2;
            double mm = max_mag;
            cplx cur = trapezoid_full(f, T, n, symmetric, mm);
            max_mag = mm;
            const double scale = std::max(std::abs(cur), 1e-300);
            if (std::abs(cur - prev) <= cfg.rel_tolerance * scale) {
                result = cur;
                converged = true;
                break;
            }
            prev = cur;
        }
        if (!converged)
            throw ConvergenceError("mellin_barnes: no convergence after " +
                                   std::to_string(cfg.max_refinements) + " refinements");
        // Tail check: the integrand at +-T must be negligible against the peak.
        const double tail = std::max(std::abs(f(T)), std::abs(f(-T)));
        if (tail <= 1e-13 * std::max(max_mag, 1e-300))
            return result / kTwoPi;
        T *= 1.6;
    }
    throw ConvergenceError("mellin_barnes: truncation height did not stabilize");
}

std::vector<double> shifts_from_top(std::span<const double> a_top) {
    std::vector<double> m(a_top.size());
    for (std::size_t l = 0; l < a_top.size(); ++l) {
        m[l] = 1.0 - a_top[l];
        if (!(m[l] > 0.0))
            throw DomainError("meijer_g_2L_L2: requires a_l = 1 - m_l with m_l > 0");
    }
    return m;
}

} // namespace

std::complex<double> meijer_g_2L_L2(std::span<const double> a_top, std::complex<double> x,
                                    const MellinBarnesConfig& cfg) {
    const std::vector<double> m = shifts_from_top(a_top);
    return mellin_barnes(0.0, 0.5, m, x, cfg);
}

double meijer_g_2L_L2(std::span<const double> a_top, double x, const MellinBarnesConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("meijer_g_2L_L2: x must be positive");
    const cplx g = meijer_g_2L_L2(a_top, cplx(x, 0.0), cfg);
    return g.real();
}

double meijer_g_20_02(double b1, double b2, double x, const MellinBarnesConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("meijer_g_20_02: x must be positive");
    const cplx g = mellin_barnes(b1, b2, {}, cplx(x, 0.0), cfg);
    return g.real();
}

} // namespace nakprod
