#pragma once

#include "nakprod/laplace.hpp"
#include "nakprod/meijer.hpp"
#include "nakprod/nakagami.hpp"

#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace nakprod {

/// H = sum over N branches of the product of the branch's L Nakagami
/// amplitudes. Each column (branch) is stored sorted ascending by shape, so
/// columns()[n][0] always carries the branch's smallest m.
class SumProductModel {
public:
    explicit SumProductModel(std::vector<std::vector<NakagamiParams>> columns);

    /// N identical branches of the given column.
    static SumProductModel iid(std::vector<NakagamiParams> column, int branches);

    int branch_size() const { return static_cast<int>(columns_[0].size()); }   // L
    int branch_count() const { return static_cast<int>(columns_.size()); }     // N
    const std::vector<std::vector<NakagamiParams>>& columns() const { return columns_; }

    double mean() const;     // E[H] from per-factor first moments
    double variance() const; // Var[H] from per-branch second moments

private:
    std::vector<std::vector<NakagamiParams>> columns_;
};

/// L = 2 specialization with identical branches, the input of the series
/// expansion. Normalized so m1 <= m2 (the law of X1*X2 depends on the scales
/// only through omega1*omega2, so reordering the pairs is harmless).
struct DoubleIidModel {
    double m1, m2;
    double omega1, omega2;
    int branches;

    DoubleIidModel(double shape1, double shape2, double rate1, double rate2, int n);

    double nu() const { return m1 - m2; }
    SumProductModel to_sumprod() const;
};

struct SeriesConfig {
    int order = 4;                 // truncation index I; hard cap 8 (cost O(N^I (I+1)!))
    double epsilon_offset = 1e-4;  // shape offset applied when m1 - m2 is an integer
    bool average_pm = true;        // average the +eps and -eps evaluations
    long max_terms = 2'000'000;    // enumeration budget, checked before evaluating
};

/// One term of the expanded N-th power of the truncated branch series:
/// contribution = c^N * multinomial(N; k) * kappa * weight(t_exp).
struct SeriesTerm {
    std::vector<int> k;     // composition k_0..k_I of N
    std::vector<int> n;     // inner binomial indices, 0 <= n_i <= k_i
    double log_abs_kappa;   // log |kappa|
    int sign_kappa;
    double t_exp;           // t = sum_i n_i (m1 - m2) + k_i (i + m2)

    double kappa() const;
};

/// Number of terms the (N, I) enumeration yields: C(N + 2I + 1, N).
long series_term_count(int branches, int order);

/// Enumerates every term (after any epsilon offset); for tests and custom
/// accumulations. Applies the +eps branch only (no averaging).
void for_each_series_term(const DoubleIidModel& model, const SeriesConfig& cfg,
                          const std::function<void(const SeriesTerm&)>& fn);

struct SeriesDiagnostics {
    long clamped = 0;          // negative evaluations clamped to zero
    double epsilon_used = 0.0; // effective offset (0 when nu is non-integer)
};

/// Signed log weight: weight = sign * exp(log_abs); sign 0 means exactly zero.
struct LogWeight {
    double log_abs;
    int sign;
};

/// Offset the evaluator will apply to m1 (0 when m1 - m2 is safely non-integer).
double series_effective_epsilon(const DoubleIidModel& model, const SeriesConfig& cfg);

/// Core series evaluator: sum over all terms of coefficient * weight(t).
double series_accumulate(const DoubleIidModel& model, const SeriesConfig& cfg,
                         const std::function<double(double)>& weight,
                         SeriesDiagnostics* diag = nullptr);

/// Log-space variant used by every built-in weight (robust to huge/tiny weights).
double series_accumulate_log(const DoubleIidModel& model, const SeriesConfig& cfg,
                             const std::function<LogWeight(double)>& log_weight,
                             SeriesDiagnostics* diag = nullptr);

/// Truncated branch series for the MGF of one product pair (order-I sum of
/// signed power terms); the N-th power of this is the series MGF's dual path.
double branch_mgf_series(const DoubleIidModel& model, const SeriesConfig& cfg, double s);

/// Series MGF of H (weight s^{-2t}); converges to mgf_exact as order grows.
double mgf_series(const DoubleIidModel& model, const SeriesConfig& cfg, double s);

/// Series PDF of H (weight h^{2t-1}/Gamma(2t)); negative truncation artifacts
/// clamp to zero and are counted in diag.
double pdf_series(const DoubleIidModel& model, const SeriesConfig& cfg, double h,
                  SeriesDiagnostics* diag = nullptr);

/// Gain/exponent pair of the high-s envelope M(s) ~ gain * s^(-2*exponent).
struct AsymptoticForm {
    double gain;
    double exponent; // t' = sum of the per-branch minimum shapes
};

/// Requires a strict per-branch minimum shape (ties make the Pochhammer
/// factors singular).
AsymptoticForm asymptotic_form(const SumProductModel& model);

double mgf_asymptotic(const SumProductModel& model, double s);
double pdf_asymptotic(const SumProductModel& model, double h);

/// MGF of one branch (Meijer-G closed form), real s >= 0 or complex Re(s) > 0.
double branch_mgf_exact(const std::vector<NakagamiParams>& column, double s,
                        const MellinBarnesConfig& cfg = {});
std::complex<double> branch_mgf_exact(const std::vector<NakagamiParams>& column,
                                      std::complex<double> s,
                                      const MellinBarnesConfig& cfg = {});

/// Exact MGF of H: product of branch MGFs (deduplicated across equal branches).
double mgf_exact(const SumProductModel& model, double s, const MellinBarnesConfig& cfg = {});
std::complex<double> mgf_exact(const SumProductModel& model, std::complex<double> s,
                               const MellinBarnesConfig& cfg = {});

/// Default inversion settings for Meijer-backed transforms. The Mellin-Barnes
/// representation only converges for |arg s| < (L+2) pi / 4, which rules out
/// Talbot's left-plane arms; the Euler method keeps every node at Re(s) > 0.
InvLaplaceConfig meijer_inversion_config();

/// PDF of H by numerical inversion of the exact MGF.
double pdf_numeric(const SumProductModel& model, double h,
                   const InvLaplaceConfig& inv_cfg = meijer_inversion_config(),
                   const MellinBarnesConfig& mb_cfg = {});

/// CDF of H by numerical inversion of M(s)/s.
double cdf_numeric(const SumProductModel& model, double h,
                   const InvLaplaceConfig& inv_cfg = meijer_inversion_config(),
                   const MellinBarnesConfig& mb_cfg = {});

/// Closed-form PDF of the product of two Nakagami amplitudes,
/// 4 x^{m1+m2-1} b^{m1+m2} K_{m1-m2}(2 b x) / (Gamma(m1) Gamma(m2)), b = sqrt(o1 o2).
double double_product_pdf_closed(double m1, double m2, double omega1, double omega2, double x);

/// One draw of H.
double sample_H(const SumProductModel& model, std::mt19937_64& rng);

} // namespace nakprod
