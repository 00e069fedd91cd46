#pragma once

#include "nakprod/sumprod.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace nakprod {

/// IRS-assisted link: N reflecting elements (times M source antennas), S-I and
/// I-D Nakagami fading, optional S-D direct path. With ideal per-element phase
/// alignment the receive SNR is gamma = rho * H^2 where H is the sum of the
/// N*M per-element amplitude products (plus the direct amplitude when present).
struct IrsModel {
    int elements_n;
    int antennas_m;
    NakagamiParams si;
    NakagamiParams id;
    std::optional<NakagamiParams> direct;

    IrsModel(int n, NakagamiParams si_params, NakagamiParams id_params,
             std::optional<NakagamiParams> direct_params = std::nullopt, int m = 1);

    int effective_elements() const { return elements_n * antennas_m; }
    bool has_direct() const { return direct.has_value(); }

    /// The reflected channel H_{2, N*M} as a double-Nakagami series model.
    DoubleIidModel reflected_double() const;
    /// Same channel as a generic sum-product model (exact/asymptotic paths).
    SumProductModel reflected_sumprod() const;
};

/// (alpha, g) pair of the conditional error probability alpha * Q(sqrt(2 g gamma)).
struct ModulationSpec {
    std::string name;
    double alpha;
    double g;
    std::optional<int> constellation_size;

    static ModulationSpec bfsk();
    static ModulationSpec bpsk();
    static ModulationSpec qpsk(); // also 4QAM
    static ModulationSpec mpam(int m);
    static ModulationSpec mpsk(int m);
    static ModulationSpec mqam_rect(int m);
    static ModulationSpec mqam_nonrect(int m);
    /// Lookup by lowercase name ("bpsk", "mpam", ...); M required for the
    /// multilevel families.
    static ModulationSpec by_name(const std::string& name, std::optional<int> m = std::nullopt);
};

enum class MetricMethod {
    ExactSeries,  // series expansion; L=2 i.i.d. reflected channel, no direct link
    ExactNumeric, // Meijer-G MGF products + numerical inversion / quadrature
    UpperBound,   // high-SNR envelope closed forms
};

bool method_available(const IrsModel& model, MetricMethod method);

struct EvalConfig {
    SeriesConfig series{};
    MellinBarnesConfig mellin_barnes{};
    InvLaplaceConfig inversion = meijer_inversion_config();
    double quad_rel_tol = 1e-8;
};

/// Envelope gain/exponent of the end-to-end amplitude (direct link folded in).
AsymptoticForm channel_asymptotic_form(const IrsModel& model);

/// MGF of the end-to-end amplitude H (not the SNR) at complex s, exact path.
std::complex<double> channel_mgf_exact(const IrsModel& model, std::complex<double> s,
                                       const MellinBarnesConfig& cfg = {});

/// MGF of the SNR, s >= 0, as a callable for the chosen method.
std::function<double(double)> snr_mgf(const IrsModel& model, double rho, MetricMethod method,
                                      const EvalConfig& cfg = {});

/// PDF of the SNR at x > 0 for the chosen method (UpperBound = asymptotic form).
double snr_pdf(const IrsModel& model, double x, double rho, MetricMethod method,
               const EvalConfig& cfg = {});

/// P(gamma <= gamma_th); gamma_th and rho in linear units.
double outage_probability(const IrsModel& model, double gamma_th, double rho,
                          MetricMethod method, const EvalConfig& cfg = {});

/// Average symbol error rate for the given modulation.
double aser(const IrsModel& model, const ModulationSpec& mod, double rho, MetricMethod method,
            const EvalConfig& cfg = {});

/// alpha/pi * int_0^{pi/2} mgf(g / sin^2 phi) dphi  (the MGF-method integral);
/// used to cross-check closed forms against their MGF callables.
double aser_mgf_quadrature(const std::function<double(double)>& mgf, double alpha, double g,
                           double rel_tol = 1e-10);

/// Analytic diversity order: N*M*m_ID, plus m_SD with a direct link.
/// Degenerate (throws) when m_SI == m_ID.
double diversity_order(const IrsModel& model);

/// Least-squares negated slope of log10(metric) vs log10(rho) over the points
/// with metric < regime_threshold; needs at least three such points.
double empirical_diversity_slope(std::span<const std::pair<double, double>> curve,
                                 double regime_threshold = 1e-3);

} // namespace nakprod
