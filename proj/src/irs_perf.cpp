#include "nakprod/irs_perf.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"
#include "nakprod/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace nakprod {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kQuarterInvSqrtPi = 0.14104739588693907173701986289; // 1/(4 sqrt(pi))
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

void require(bool cond, const char* msg) {
    if (!cond) throw DomainError(msg);
}

} // namespace

IrsModel::IrsModel(int n, NakagamiParams si_params, NakagamiParams id_params,
                   std::optional<NakagamiParams> direct_params, int m)
    : elements_n(n), antennas_m(m), si(si_params), id(id_params),
      direct(std::move(direct_params)) {
    require(elements_n >= 1, "IrsModel: element count must be positive");
    require(antennas_m >= 1, "IrsModel: antenna count must be positive");
    if (si.m < id.m)
        throw DomainError("IrsModel: requires m_SI >= m_ID (ordering convention)");
}

DoubleIidModel IrsModel::reflected_double() const {
    return DoubleIidModel(id.m, si.m, id.omega, si.omega, effective_elements());
}

SumProductModel IrsModel::reflected_sumprod() const {
    return SumProductModel::iid({si, id}, effective_elements());
}

ModulationSpec ModulationSpec::bfsk() { return {"bfsk", 1.0, 0.5, std::nullopt}; }
ModulationSpec ModulationSpec::bpsk() { return {"bpsk", 1.0, 1.0, std::nullopt}; }
ModulationSpec ModulationSpec::qpsk() { return {"qpsk", 2.0, 0.5, 4}; }

ModulationSpec ModulationSpec::mpam(int m) {
    require(m >= 2, "mpam: M >= 2");
    return {"mpam", 2.0 * (m - 1) / m, 3.0 / (static_cast<double>(m) * m - 1.0), m};
}

ModulationSpec ModulationSpec::mpsk(int m) {
    require(m >= 2, "mpsk: M >= 2");
    const double sp = std::sin(kPi / m);
    return {"mpsk", 2.0, sp * sp, m};
}

ModulationSpec ModulationSpec::mqam_rect(int m) {
    require(m >= 4, "mqam_rect: M >= 4");
    const double rm = std::sqrt(static_cast<double>(m));
    return {"mqam_rect", 4.0 * (rm - 1.0) / rm, 1.5 / (m - 1.0), m};
}

ModulationSpec ModulationSpec::mqam_nonrect(int m) {
    require(m >= 4, "mqam_nonrect: M >= 4");
    return {"mqam_nonrect", 4.0, 1.5 / (m - 1.0), m};
}

ModulationSpec ModulationSpec::by_name(const std::string& name, std::optional<int> m) {
    if (name == "bfsk") return bfsk();
    if (name == "bpsk") return bpsk();
    if (name == "qpsk" || name == "4qam") return qpsk();
    if (!m.has_value())
        throw DomainError("ModulationSpec: '" + name + "' needs a constellation size");
    if (name == "mpam") return mpam(*m);
    if (name == "mpsk") return mpsk(*m);
    if (name == "mqam_rect") return mqam_rect(*m);
    if (name == "mqam_nonrect") return mqam_nonrect(*m);
    throw DomainError("ModulationSpec: unknown modulation '" + name + "'");
}

bool method_available(const IrsModel& model, MetricMethod method) {
    if (method == MetricMethod::ExactSeries) return !model.has_direct();
    return true;
}

namespace {

void check_method(const IrsModel& model, MetricMethod method) {
    if (!method_available(model, method))
        throw MethodError("method not available for this model (series path requires "
                          "the reflected-only L=2 i.i.d. channel)");
}

} // namespace

AsymptoticForm channel_asymptotic_form(const IrsModel& model) {
    AsymptoticForm f = asymptotic_form(model.reflected_sumprod());
    if (model.has_direct()) {
        const NakagamiParams& d = *model.direct;
        // envelope of the single-Nakagami MGF: 2 (m)_m omega^m s^{-2m}
        f.gain *= 2.0 * pochhammer(d.m, d.m) * std::pow(d.omega, d.m);
        f.exponent += d.m;
    }
    return f;
}

std::complex<double> channel_mgf_exact(const IrsModel& model, std::complex<double> s,
                                       const MellinBarnesConfig& cfg) {
    std::complex<double> v = mgf_exact(model.reflected_sumprod(), s, cfg);
    if (model.has_direct()) v *= mgf_exact(*model.direct, s, cfg);
    return v;
}

namespace {

// CDF of the end-to-end amplitude via inversion of M(s)/s.
double channel_cdf(const IrsModel& model, double h, const EvalConfig& cfg) {
    auto F = [&](std::complex<double> s) {
        return channel_mgf_exact(model, s, cfg.mellin_barnes) / s;
    };
    return inverse_laplace(F, h, cfg.inversion);
}

double channel_pdf(const IrsModel& model, double h, const EvalConfig& cfg) {
    auto F = [&](std::complex<double> s) {
        return channel_mgf_exact(model, s, cfg.mellin_barnes);
    };
    return inverse_laplace(F, h, cfg.inversion);
}

// Quadrature integrands re-invert at every node; the two-order agreement
// check would double that cost, so inner loops run with it off (the outer
// results stay covered by the validated single-point paths).
EvalConfig inner_loop_config(const EvalConfig& cfg) {
    EvalConfig inner = cfg;
    inner.inversion.check_convergence = false;
    return inner;
}

// gamma-domain closed forms shared by every envelope metric: for an amplitude
// envelope M_H(s) ~ g s^{-2t}, the SNR gamma = rho H^2 has
//   MGF   g (rho s)^{-t} / (2 (t)_t)
//   OP    g (gth/rho)^t / (2 (t)_t Gamma(t+1))
//   ASER  alpha/(4 sqrt(pi)) g (t+1)_{-1/2} / (t)_t (g_mod rho)^{-t}
double upper_mgf(const AsymptoticForm& f, double rho, double s) {
    return f.gain * std::exp(-f.exponent * std::log(rho * s) - std::log(2.0) -
                             log_pochhammer(f.exponent, f.exponent).log_abs);
}

double upper_outage(const AsymptoticForm& f, double rho, double gamma_th) {
    return f.gain * std::exp(f.exponent * std::log(gamma_th / rho) - std::log(2.0) -
                             log_pochhammer(f.exponent, f.exponent).log_abs -
                             std::lgamma(f.exponent + 1.0));
}

double upper_aser(const AsymptoticForm& f, double rho, double alpha, double g_mod) {
    return alpha * kQuarterInvSqrtPi * f.gain *
           std::exp(log_pochhammer(f.exponent + 1.0, -0.5).log_abs -
                    log_pochhammer(f.exponent, f.exponent).log_abs -
                    f.exponent * std::log(g_mod * rho));
}

} // namespace

std::function<double(double)> snr_mgf(const IrsModel& model, double rho, MetricMethod method,
                                      const EvalConfig& cfg) {
    require(rho > 0.0, "snr_mgf: rho must be positive");
    check_method(model, method);
    switch (method) {
        case MetricMethod::ExactSeries: {
            const DoubleIidModel dm = model.reflected_double();
            const SeriesConfig scfg = cfg.series;
            return [dm, scfg, rho](double s) {
                if (s == 0.0) return 1.0;
                require(s > 0.0, "snr_mgf: s must be non-negative");
                const double log_rs = std::log(rho * s);
                return series_accumulate_log(
                    dm, scfg,
                    [&](double t) -> LogWeight {
                        return {-t * log_rs - std::log(2.0) - log_pochhammer(t, t).log_abs, +1};
                    },
                    nullptr);
            };
        }
        case MetricMethod::UpperBound: {
            const AsymptoticForm f = channel_asymptotic_form(model);
            return [f, rho](double s) {
                require(s > 0.0, "snr_mgf(UpperBound): s must be positive");
                return upper_mgf(f, rho, s);
            };
        }
        case MetricMethod::ExactNumeric: {
            const IrsModel m = model;
            const EvalConfig c = inner_loop_config(cfg);
            return [m, c, rho](double s) {
                if (s == 0.0) return 1.0;
                require(s > 0.0, "snr_mgf: s must be non-negative");
                // E[e^{-s rho H^2}] over the numeric amplitude density
                const double mean = m.reflected_sumprod().mean() +
                                    (m.has_direct() ? moment(*m.direct, 1.0) : 0.0);
                const double hmax = std::min(8.0 * mean, 12.0 / std::sqrt(s * rho));
                auto integrand = [&](double h) {
                    return std::exp(-s * rho * h * h) * channel_pdf(m, h, c);
                };
                return integrate(integrand, 1e-6, hmax, 1e-7, 1e-12).value;
            };
        }
    }
    throw DomainError("snr_mgf: unknown method");
}

double snr_pdf(const IrsModel& model, double x, double rho, MetricMethod method,
               const EvalConfig& cfg) {
    require(x > 0.0, "snr_pdf: x must be positive");
    require(rho > 0.0, "snr_pdf: rho must be positive");
    check_method(model, method);
    const double h = std::sqrt(x / rho);
    const double jac = 1.0 / (2.0 * rho * h); // dh/dx for gamma = rho h^2
    switch (method) {
        case MetricMethod::ExactSeries: {
            const double log_xr = std::log(x / rho);
            return series_accumulate_log(
                model.reflected_double(), cfg.series,
                [&](double t) -> LogWeight {
                    return {(t - 1.0) * log_xr - std::log(2.0 * rho) - std::lgamma(2.0 * t),
                            +1};
                },
                nullptr);
        }
        case MetricMethod::UpperBound: {
            const AsymptoticForm f = channel_asymptotic_form(model);
            const double lg = (2.0 * f.exponent - 1.0) * std::log(h) -
                              std::lgamma(2.0 * f.exponent);
            return f.gain * std::exp(lg) * jac;
        }
        case MetricMethod::ExactNumeric:
            return channel_pdf(model, h, cfg) * jac;
    }
    throw DomainError("snr_pdf: unknown method");
}

double outage_probability(const IrsModel& model, double gamma_th, double rho,
                          MetricMethod method, const EvalConfig& cfg) {
    require(gamma_th > 0.0, "outage_probability: gamma_th must be positive");
    require(rho > 0.0, "outage_probability: rho must be positive");
    check_method(model, method);
    switch (method) {
        case MetricMethod::ExactSeries: {
            const double log_gr = std::log(gamma_th / rho);
            return series_accumulate_log(
                model.reflected_double(), cfg.series,
                [&](double t) -> LogWeight {
                    return {t * log_gr - std::log(2.0) - log_pochhammer(t, t).log_abs -
                                std::lgamma(t + 1.0),
                            +1};
                },
                nullptr);
        }
        case MetricMethod::UpperBound:
            return upper_outage(channel_asymptotic_form(model), rho, gamma_th);
        case MetricMethod::ExactNumeric:
            return channel_cdf(model, std::sqrt(gamma_th / rho), cfg);
    }
    throw DomainError("outage_probability: unknown method");
}

double aser(const IrsModel& model, const ModulationSpec& mod, double rho, MetricMethod method,
            const EvalConfig& cfg) {
    require(rho > 0.0, "aser: rho must be positive");
    check_method(model, method);
    switch (method) {
        case MetricMethod::ExactSeries: {
            const double log_gr = std::log(mod.g * rho);
            const double v = series_accumulate_log(
                model.reflected_double(), cfg.series,
                [&](double t) -> LogWeight {
                    return {log_pochhammer(t + 1.0, -0.5).log_abs -
                                log_pochhammer(t, t).log_abs - t * log_gr,
                            +1};
                },
                nullptr);
            return mod.alpha * kQuarterInvSqrtPi * v;
        }
        case MetricMethod::UpperBound:
            return upper_aser(channel_asymptotic_form(model), rho, mod.alpha, mod.g);
        case MetricMethod::ExactNumeric: {
            // integrate by parts: ASER = alpha c int F_H(h) phi(c h) dh, c = sqrt(2 g rho)
            const EvalConfig inner = inner_loop_config(cfg);
            const double c = std::sqrt(2.0 * mod.g * rho);
            auto integrand = [&](double h) {
                return channel_cdf(model, h, inner) * normal_pdf(c * h);
            };
            const double hmax = 9.0 / c;
            const QuadratureResult q = integrate(integrand, 1e-7, hmax, 1e-7, 0.0, 400);
            return mod.alpha * c * q.value;
        }
    }
    throw DomainError("aser: unknown method");
}

double aser_mgf_quadrature(const std::function<double(double)>& mgf, double alpha, double g,
                           double rel_tol) {
    auto integrand = [&](double phi) {
        const double sp = std::sin(phi);
        return mgf(g / (sp * sp));
    };
    // the phi -> 0 endpoint vanishes with the MGF's decay; start epsilon inside
    const QuadratureResult q = integrate(integrand, 1e-12, kPi / 2.0, rel_tol, 1e-300);
    return alpha / kPi * q.value;
}

double diversity_order(const IrsModel& model) {
    if (model.si.m == model.id.m)
        throw DomainError("diversity_order: degenerate at m_SI == m_ID (envelope "
                          "Pochhammer factors are singular)");
    double d = model.effective_elements() * model.id.m;
    if (model.has_direct()) d += model.direct->m;
    return d;
}

double empirical_diversity_slope(std::span<const std::pair<double, double>> curve,
                                 double regime_threshold) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [rho, metric] : curve)
        if (rho > 0.0 && metric > 0.0 && std::isfinite(metric) && metric < regime_threshold)
            pts.emplace_back(std::log10(rho), std::log10(metric));
    if (pts.size() < 3)
        throw RegimeError("empirical_diversity_slope: need >= 3 points with metric < " +
                          std::to_string(regime_threshold));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

} // namespace nakprod
