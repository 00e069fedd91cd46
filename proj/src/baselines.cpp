#include "nakprod/baselines.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"
#include "nakprod/quadrature.hpp"

#include <cmath>

namespace nakprod {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993;

double normal_cdf(double z) { return 1.0 - gaussian_q(z); }

} // namespace

double CltApprox::pdf(double h) const {
    if (h < 0.0) return 0.0;
    const double z = (h - mu) / sigma;
    const double mass = 1.0 - normal_cdf(-mu / sigma); // P(H >= 0) before truncation
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z) / mass;
}

double CltApprox::cdf(double h) const {
    if (h <= 0.0) return 0.0;
    const double below0 = normal_cdf(-mu / sigma);
    return (normal_cdf((h - mu) / sigma) - below0) / (1.0 - below0);
}

double GammaApprox::pdf(double h) const {
    if (h <= 0.0) return 0.0;
    const double lg = (shape - 1.0) * std::log(h) - h / scale - std::lgamma(shape) -
                      shape * std::log(scale);
    return std::exp(lg);
}

double GammaApprox::cdf(double h) const {
    if (h <= 0.0) return 0.0;
    return gamma_p(shape, h / scale);
}

CltApprox fit_clt(const SumProductModel& model) {
    return {model.mean(), std::sqrt(model.variance())};
}

GammaApprox fit_gamma(const SumProductModel& model) {
    const double mu = model.mean();
    const double var = model.variance();
    if (!(var > 0.0)) throw DomainError("fit_gamma: degenerate variance");
    return {mu * mu / var, var / mu};
}

namespace {

// direct-link amplitude adds independently: means and variances both add
std::pair<double, double> irs_moments(const IrsModel& model) {
    const SumProductModel reflected = model.reflected_sumprod();
    double mu = reflected.mean();
    double var = reflected.variance();
    if (model.has_direct()) {
        const NakagamiParams& d = *model.direct;
        const double m1 = moment(d, 1.0);
        mu += m1;
        var += moment(d, 2.0) - m1 * m1;
    }
    return {mu, var};
}

} // namespace

CltApprox fit_clt(const IrsModel& model) {
    const auto [mu, var] = irs_moments(model);
    return {mu, std::sqrt(var)};
}

GammaApprox fit_gamma(const IrsModel& model) {
    const auto [mu, var] = irs_moments(model);
    if (!(var > 0.0)) throw DomainError("fit_gamma: degenerate variance");
    return {mu * mu / var, var / mu};
}

namespace {

struct Dist {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    double upper; // effective support cutoff for quadrature
};

Dist as_dist(const BaselineApprox& approx) {
    if (const auto* c = std::get_if<CltApprox>(&approx)) {
        const CltApprox v = *c;
        return {[v](double h) { return v.pdf(h); }, [v](double h) { return v.cdf(h); },
                v.mu + 12.0 * v.sigma};
    }
    const GammaApprox v = std::get<GammaApprox>(approx);
    const double mu = v.shape * v.scale;
    const double sd = std::sqrt(v.shape) * v.scale;
    return {[v](double h) { return v.pdf(h); }, [v](double h) { return v.cdf(h); },
            mu + 20.0 * sd};
}

} // namespace

double baseline_outage(const BaselineApprox& approx, double gamma_th, double rho) {
    if (!(gamma_th > 0.0 && rho > 0.0))
        throw DomainError("baseline_outage: gamma_th and rho must be positive");
    return as_dist(approx).cdf(std::sqrt(gamma_th / rho));
}

double baseline_aser(const BaselineApprox& approx, const ModulationSpec& mod, double rho) {
    if (!(rho > 0.0)) throw DomainError("baseline_aser: rho must be positive");
    const Dist d = as_dist(approx);
    const double c = std::sqrt(2.0 * mod.g * rho);
    auto integrand = [&](double h) { return gaussian_q(c * h) * d.pdf(h); };
    // Q(c h) is negligible past h ~ 9/c; cap the range accordingly
    const double hmax = std::min(d.upper, 9.0 / c + 1e-6);
    const double v = mod.alpha * integrate(integrand, 0.0, hmax, 1e-9, 1e-14).value;
    return std::min(v, 1.0);
}

double baseline_snr_pdf(const BaselineApprox& approx, double x, double rho) {
    if (!(x > 0.0 && rho > 0.0))
        throw DomainError("baseline_snr_pdf: x and rho must be positive");
    const double h = std::sqrt(x / rho);
    return as_dist(approx).pdf(h) / (2.0 * rho * h);
}

} // namespace nakprod
