#include "nakprod/nakagami.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"

#include <array>
#include <cmath>

namespace nakprod {

namespace {
constexpr double kInvSqrtPi = 0.56418958354775628694807945156; // 1/sqrt(pi)
}

NakagamiParams::NakagamiParams(double shape, double rate) : m(shape), omega(rate) {
    if (!(m > 0.0)) throw DomainError("NakagamiParams: m must be positive");
    if (!(omega > 0.0)) throw DomainError("NakagamiParams: omega must be positive");
}

double pdf(const NakagamiParams& p, double x) {
    if (x <= 0.0) return 0.0; // unit step
    const double lg = std::log(2.0) + p.m * std::log(p.omega) - std::lgamma(p.m) +
                      (2.0 * p.m - 1.0) * std::log(x) - p.omega * x * x;
    return std::exp(lg);
}

double moment(const NakagamiParams& p, double k) {
    if (!(p.m + k / 2.0 > 0.0)) throw DomainError("moment: requires m + k/2 > 0");
    return pochhammer(p.m, k / 2.0) * std::pow(p.omega, -k / 2.0);
}

std::complex<double> mgf_exact(const NakagamiParams& p, std::complex<double> s,
                               const MellinBarnesConfig& cfg) {
    if (s == std::complex<double>(0.0, 0.0)) return 1.0;
    if (s.real() < 0.0)
        throw DomainError("mgf_exact: complex s requires Re(s) >= 0 (branch cut)");
    const std::array<double, 1> a_top = {1.0 - p.m};
    const std::complex<double> x = s * s / (4.0 * p.omega);
    return kInvSqrtPi / std::tgamma(p.m) * meijer_g_2L_L2(a_top, x, cfg);
}

double mgf_exact(const NakagamiParams& p, double s, const MellinBarnesConfig& cfg) {
    if (s < 0.0) throw DomainError("mgf_exact: s must be non-negative");
    if (s == 0.0) return 1.0;
    return mgf_exact(p, std::complex<double>(s, 0.0), cfg).real();
}

double mgf_upper(const NakagamiParams& p, double s) {
    if (!(s > 0.0)) throw DomainError("mgf_upper: s must be positive");
    return 2.0 * pochhammer(p.m, p.m) * std::pow(p.omega, p.m) * std::pow(s, -2.0 * p.m);
}

double sample(const NakagamiParams& p, std::mt19937_64& rng) {
    std::gamma_distribution<double> g(p.m, 1.0 / p.omega);
    return std::sqrt(g(rng));
}

} // namespace nakprod
