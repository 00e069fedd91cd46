#pragma once

#include "nakprod/irs_perf.hpp"
#include "nakprod/sumprod.hpp"

#include <variant>

namespace nakprod {

/// Two-moment Normal fit to the amplitude H, truncated at 0 and renormalized
/// when evaluated as a distribution. Comparison baseline only, never a ground
/// truth.
struct CltApprox {
    double mu;
    double sigma;

    double pdf(double h) const; // truncated-renormalized density
    double cdf(double h) const;
};

/// Two-moment Gamma fit to H (shape k, scale theta).
struct GammaApprox {
    double shape;
    double scale;

    double pdf(double h) const;
    double cdf(double h) const;
};

CltApprox fit_clt(const SumProductModel& model);
GammaApprox fit_gamma(const SumProductModel& model);

/// IRS overloads fold the direct-link moments into the fit.
CltApprox fit_clt(const IrsModel& model);
GammaApprox fit_gamma(const IrsModel& model);

using BaselineApprox = std::variant<CltApprox, GammaApprox>;

/// P(rho H^2 <= gamma_th) under the fitted law.
double baseline_outage(const BaselineApprox& approx, double gamma_th, double rho);

/// int alpha Q(sqrt(2 g rho) h) dF(h) by quadrature.
double baseline_aser(const BaselineApprox& approx, const ModulationSpec& mod, double rho);

/// PDF of the SNR gamma = rho H^2 under the fitted law.
double baseline_snr_pdf(const BaselineApprox& approx, double x, double rho);

} // namespace nakprod
