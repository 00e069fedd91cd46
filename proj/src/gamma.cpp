#include "nakprod/gamma.hpp"
#include "nakprod/errors.hpp"

#include <cmath>
#include <limits>

namespace nakprod {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLnPi = 1.14472988584940017414342735135;
constexpr double kHalfLn2Pi = 0.91893853320467274178032973641; // ln(2*pi)/2

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos core, valid for Re(z) >= 0.5.
std::complex<double> log_gamma_core(std::complex<double> z) {
    std::complex<double> sum = kLanczosC[0];
    for (int k = 1; k < 15; ++k)
        sum += kLanczosC[k] / (z + static_cast<double>(k - 1));
    const std::complex<double> base = z + (kLanczosG - 0.5);
    return (z - 0.5) * std::log(base) - base + kHalfLn2Pi + std::log(sum);
}

// log(sin(pi*z)) on the branch that makes the reflection formula agree with
// the principal loggamma (Hare's method: expand around the dominant
// exponential for Im(z) > 0, conjugate otherwise).
std::complex<double> log_sin_pi(std::complex<double> z) {
    if (z.imag() == 0.0) {
        double s = sin_pi(z.real());
        if (s >= 0.0) return {std::log(s), 0.0};
        return {std::log(-s), kPi}; // limit from Im -> 0+
    }
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const std::complex<double> i(0.0, 1.0);
    // sin(pi z) = e^{-i pi z} * i/2 * (1 - e^{2 i pi z}), |e^{2 i pi z}| < 1 here
    return -i * kPi * z + std::log(0.5 * i * (1.0 - std::exp(2.0 * i * kPi * z)));
}

} // namespace

double sin_pi(double x) {
    const double r = std::remainder(x, 2.0); // r in [-1, 1]
    // restrict to [-0.5, 0.5] where sin is well conditioned
    if (r > 0.5) return std::sin(kPi * (1.0 - r));
    if (r < -0.5) return -std::sin(kPi * (1.0 + r));
    return std::sin(kPi * r);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: log Gamma(z) = ln(pi) - log sin(pi z) - log Gamma(1 - z)
    return kLnPi - log_sin_pi(z) - log_gamma_core(1.0 - z);
}

SignedLogGamma signed_log_gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("signed_log_gamma: pole at non-positive integer " + std::to_string(x));
    if (x > 0.0) return {std::lgamma(x), +1};
    // Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)), and Gamma(1-x) > 0 here
    const double s = sin_pi(x);
    return {kLnPi - std::log(std::fabs(s)) - std::lgamma(1.0 - x), s > 0.0 ? +1 : -1};
}

double gamma_fn(double x) {
    const SignedLogGamma g = signed_log_gamma(x);
    return g.sign * std::exp(g.log_abs);
}

SignedLogGamma log_pochhammer(double x, double n) {
    if (n == 0.0) return {0.0, +1};
    const SignedLogGamma num = signed_log_gamma(x + n);
    const SignedLogGamma den = signed_log_gamma(x);
    return {num.log_abs - den.log_abs, num.sign * den.sign};
}

double pochhammer(double x, double n) {
    const SignedLogGamma p = log_pochhammer(x, n);
    return p.sign * std::exp(p.log_abs);
}

double gaussian_q(double x) {
    return 0.5 * std::erfc(x * 0.70710678118654752440);
}

double gamma_p(double a, double x) {
    if (a <= 0.0) throw DomainError("gamma_p: a must be positive");
    if (x < 0.0) throw DomainError("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    const double lga = std::lgamma(a);
    if (x < a + 1.0) {
        // series for the lower function
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < 10000; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16)
                return sum * std::exp(-x + a * std::log(x) - lga);
        }
        throw ConvergenceError("gamma_p: series did not converge");
    }
    // continued fraction for the upper function (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int k = 1; k < 10000; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return 1.0 - std::exp(-x + a * std::log(x) - lga) * h;
    }
    throw ConvergenceError("gamma_p: continued fraction did not converge");
}

} // namespace nakprod
