#pragma once

#include "nakprod/irs_perf.hpp"
#include "nakprod/sumprod.hpp"

#include <cstdint>
#include <vector>

namespace nakprod {

/// Seeded Monte-Carlo settings. Estimates are bit-identical for a fixed
/// (master_seed, point_index) regardless of worker count: trials are split
/// into fixed-size chunks, each chunk draws from its own deterministically
/// derived substream, and the reduction runs in chunk order.
struct McConfig {
    std::uint64_t master_seed = 0x5eed0f00dULL;
    long trials = 10000;
    int histogram_bins = 80;
    std::uint64_t point_index = 0; // grid-point id mixed into the substream seeds
    int workers = 0;               // 0 = hardware concurrency
    long chunk_size = 1L << 14;
};

struct McEstimate {
    double estimate;
    double std_error;
};

/// Substream seed for (master, point, chunk); SplitMix64 mixing.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point, std::uint64_t chunk);

/// Fraction of draws with rho * H^2 <= gamma_th, with binomial standard error.
McEstimate mc_outage(const IrsModel& model, double gamma_th, double rho, const McConfig& cfg);

/// Semi-analytic ASER: the conditional error probability alpha*Q(sqrt(2 g gamma)),
/// clamped to [0, 1], averaged over channel draws.
McEstimate mc_aser(const IrsModel& model, const ModulationSpec& mod, double rho,
                   const McConfig& cfg);

/// Symbol-flip BPSK cross-check: counts sign flips of +sqrt(2 gamma) + noise.
/// Strictly noisier than the semi-analytic estimator at equal trials.
McEstimate mc_aser_symbol_bpsk(const IrsModel& model, double rho, const McConfig& cfg);

/// Empirical MGF E[e^{-s H}] with standard error.
McEstimate mc_mgf(const SumProductModel& model, double s, const McConfig& cfg);

/// Empirical MGF of the SNR, E[e^{-s gamma}], gamma = rho * (H [+ direct])^2.
McEstimate mc_snr_mgf(const IrsModel& model, double rho, double s, const McConfig& cfg);

/// Normalized histogram (integrates to 1) with per-bin Poisson errors.
struct McHistogram {
    std::vector<double> edges;   // bins + 1 entries
    std::vector<long> counts;
    std::vector<double> density; // counts / (trials * width)
    std::vector<double> sigma;   // sqrt(counts) / (trials * width)
    long trials;
    long overflow; // draws above the top edge

    double total_mass() const; // sum density * width
};

/// Histogram of the amplitude H. x_max = 0 auto-sizes from a pilot substream.
McHistogram mc_histogram(const SumProductModel& model, const McConfig& cfg, double x_max = 0.0);

/// Histogram of the SNR gamma = rho * (H [+ direct])^2.
McHistogram mc_histogram_snr(const IrsModel& model, double rho, const McConfig& cfg,
                             double x_max = 0.0);

} // namespace nakprod
