#pragma once

#include "nakprod/meijer.hpp"

#include <complex>
#include <random>

namespace nakprod {

/// Parameters of one Nakagami-m fading amplitude.
///
/// omega is the rate-style scale, omega = m / E[X^2]; the density is
///   f(x) = 2 omega^m / Gamma(m) * x^(2m-1) * exp(-omega x^2),  x > 0.
/// Note this is the inverse of the textbook "spread" parameterization
/// (spread = E[X^2] = m / omega). m = 1 is Rayleigh, m = 1/2 one-sided
/// Gaussian; m >= 1/2 is the physically meaningful range, any m > 0 is
/// accepted.
struct NakagamiParams {
    double m;
    double omega;

    NakagamiParams(double shape, double rate);

    double mean_square() const { return m / omega; } // E[X^2]
};

double pdf(const NakagamiParams& p, double x);

/// k-th raw moment E[X^k] = (m)_{k/2} / omega^{k/2}; requires m + k/2 > 0.
double moment(const NakagamiParams& p, double k);

/// Exact MGF E[e^{-sX}] for s >= 0, through the restricted Meijer-G kernel.
double mgf_exact(const NakagamiParams& p, double s, const MellinBarnesConfig& cfg = {});

/// MGF continued to complex s with Re(s) > 0 (for transform inversion).
std::complex<double> mgf_exact(const NakagamiParams& p, std::complex<double> s,
                               const MellinBarnesConfig& cfg = {});

/// High-s envelope bound 2 (m)_m omega^m / s^(2m); dominates mgf_exact for
/// every s > 0 and is asymptotically tight.
double mgf_upper(const NakagamiParams& p, double s);

/// One draw, X = sqrt(G) with G ~ Gamma(shape m, rate omega).
double sample(const NakagamiParams& p, std::mt19937_64& rng);

} // namespace nakprod
