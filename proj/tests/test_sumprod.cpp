#include "nakprod/errors.hpp"
#include "nakprod/nakagami.hpp"
#include "nakprod/sumprod.hpp"

#include "support/oracles.hpp"
#include "support/reference_values.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace nakprod;

namespace {

SumProductModel fig_model(int n) {
    // unit-power reflected channel: shapes (2, 1), rates (2, 1)
    return SumProductModel::iid({NakagamiParams(2, 2), NakagamiParams(1, 1)}, n);
}

} // namespace

TEST_CASE("model construction sorts branches by shape") {
    const SumProductModel m({{NakagamiParams(2.5, 0.3), NakagamiParams(0.7, 1.0)}});
    CHECK(m.columns()[0][0].m == 0.7);
    CHECK(m.columns()[0][0].omega == 1.0); // (m, omega) pairs stay together
    CHECK(m.columns()[0][1].m == 2.5);
    CHECK_THROWS_AS(SumProductModel({}), DomainError);
    CHECK_THROWS_AS(
        SumProductModel({{NakagamiParams(1, 1)}, {NakagamiParams(1, 1), NakagamiParams(2, 1)}}),
        DomainError);
}

TEST_CASE("branch MGF: L=1 reduces to the single-amplitude MGF") {
    const NakagamiParams p(1.6, 0.8);
    for (double s : {0.0, 0.4, 1.0, 3.0})
        CHECK(branch_mgf_exact({p}, s) == doctest::Approx(mgf_exact(p, s)).epsilon(1e-12));
}

TEST_CASE("branch MGF: L=2 against Bessel-density quadrature references") {
    CHECK(branch_mgf_exact({NakagamiParams(1, 1), NakagamiParams(1, 1)}, 1.0) ==
          doctest::Approx(refs::kProdMgf_1111_s1).epsilon(1e-9));
    CHECK(branch_mgf_exact({NakagamiParams(1, 1), NakagamiParams(2, 1)}, 1.0) ==
          doctest::Approx(refs::kProdMgf_1211_s1).epsilon(1e-9));
    CHECK(branch_mgf_exact({NakagamiParams(2, 2), NakagamiParams(1, 1)}, 0.5) ==
          doctest::Approx(refs::kProdMgf_2121_s05).epsilon(1e-9));
    CHECK(branch_mgf_exact({NakagamiParams(0.6, 0.8), NakagamiParams(1.7, 1.9)}, 2.5) ==
          doctest::Approx(refs::kProdMgf_06170819_s25).epsilon(1e-9));
    CHECK(branch_mgf_exact({NakagamiParams(2, 1), NakagamiParams(1, 1)}, 2.0) ==
          doctest::Approx(refs::kProdMgf_2111_s2).epsilon(1e-9));
    // fresh quadrature cross-check
    CHECK(branch_mgf_exact({NakagamiParams(1.2, 0.9), NakagamiParams(2.8, 1.4)}, 1.7) ==
          doctest::Approx(oracle::product_mgf_quad(1.2, 2.8, 0.9, 1.4, 1.7)).epsilon(1e-8));
}

TEST_CASE("branch MGF: L=3 against iterated quadrature reference") {
    const std::vector<NakagamiParams> col = {NakagamiParams(1, 1), NakagamiParams(1.5, 0.7),
                                             NakagamiParams(2.2, 1.3)};
    CHECK(branch_mgf_exact(col, 1.0) == doctest::Approx(refs::kBranch3_s1).epsilon(1e-8));
    CHECK(mgf_exact(SumProductModel::iid(col, 2), 1.0) ==
          doctest::Approx(refs::kMH32_s1).epsilon(1e-8));
}

TEST_CASE("sum MGF: product over branches") {
    const SumProductModel m24(
        SumProductModel::iid({NakagamiParams(2, 1), NakagamiParams(1, 1)}, 4));
    CHECK(mgf_exact(m24, 0.0) == 1.0);
    CHECK(mgf_exact(m24, 0.5) == doctest::Approx(refs::kMH24_s05).epsilon(1e-9));
    CHECK(mgf_exact(m24, 1.0) == doctest::Approx(refs::kMH24_s1).epsilon(1e-9));
    CHECK(mgf_exact(m24, 2.0) == doctest::Approx(refs::kMH24_s2).epsilon(1e-9));
    // N=1 equals the branch MGF
    const std::vector<NakagamiParams> col = {NakagamiParams(2, 1), NakagamiParams(1, 1)};
    CHECK(mgf_exact(SumProductModel::iid(col, 1), 0.7) ==
          doctest::Approx(branch_mgf_exact(col, 0.7)).epsilon(1e-12));
    // strictly decreasing
    double prev = 1.0 + 1e-12;
    for (double s : {0.0, 0.3, 0.8, 1.5, 3.0, 6.0}) {
        const double v = mgf_exact(m24, s);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(mgf_exact(m24, -1.0), DomainError);
}

TEST_CASE("complex MGF rejects the left half plane") {
    const std::vector<NakagamiParams> col = {NakagamiParams(2, 1), NakagamiParams(1, 1)};
    CHECK_THROWS_AS(branch_mgf_exact(col, std::complex<double>(-0.1, 1.0)), DomainError);
    CHECK_THROWS_AS(mgf_exact(NakagamiParams(1, 1), std::complex<double>(-2.0, 0.5)),
                    DomainError);
}

TEST_CASE("closed pair density") {
    CHECK(double_product_pdf_closed(1, 1, 1, 1, 1.0) ==
          doctest::Approx(refs::k4K0_2).epsilon(1e-12));
    CHECK(double_product_pdf_closed(1, 1, 1, 1, -0.5) == 0.0);
    const double mass = oracle::integrate(
        [](double x) { return double_product_pdf_closed(1.3, 2.1, 0.8, 1.5, x); }, 0.0, 30.0,
        1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("numeric PDF: identity case matches the closed density") {
    const SumProductModel m(SumProductModel::iid({NakagamiParams(1, 1)}, 1));
    const NakagamiParams p(1, 1);
    for (double h : {0.1, 0.5, 1.0, 2.0, 3.0})
        CHECK(pdf_numeric(m, h) == doctest::Approx(pdf(p, h)).epsilon(1e-5));
}

TEST_CASE("numeric PDF: pair case matches the Bessel closed form") {
    const SumProductModel m(
        SumProductModel::iid({NakagamiParams(1, 1), NakagamiParams(2, 2)}, 1));
    for (double h : {0.2, 0.6, 1.0, 1.6})
        CHECK(pdf_numeric(m, h) ==
              doctest::Approx(double_product_pdf_closed(1, 2, 1, 2, h)).epsilon(1e-5));
}

TEST_CASE("numeric PDF: two-branch sum against convolution reference") {
    const SumProductModel m(
        SumProductModel::iid({NakagamiParams(1, 1), NakagamiParams(2, 2)}, 2));
    CHECK(pdf_numeric(m, 1.0) == doctest::Approx(refs::kSum2Pdf_1212_at1).epsilon(1e-6));
}

TEST_CASE("numeric CDF") {
    const SumProductModel m(
        SumProductModel::iid({NakagamiParams(1, 1), NakagamiParams(2, 2)}, 1));
    CHECK(cdf_numeric(m, 0.3) == doctest::Approx(refs::kProdCdf_1212_03).epsilon(1e-6));
    double prev = 0.0;
    for (double h : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double v = cdf_numeric(m, h);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(cdf_numeric(m, 8.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("asymptotic form: L=1 reduces to the envelope product") {
    const SumProductModel m({{NakagamiParams(1.4, 0.9)}, {NakagamiParams(2.2, 1.7)}});
    const double s = 3.0;
    const double expect =
        mgf_upper(NakagamiParams(1.4, 0.9), s) * mgf_upper(NakagamiParams(2.2, 1.7), s);
    CHECK(mgf_asymptotic(m, s) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("asymptotic form: pair example") {
    const SumProductModel m(
        SumProductModel::iid({NakagamiParams(1, 1), NakagamiParams(2, 1)}, 1));
    const AsymptoticForm f = asymptotic_form(m);
    CHECK(f.gain == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.exponent == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mgf_asymptotic(m, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pdf_asymptotic(m, 0.1) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("asymptotic envelope dominates the exact MGF") {
    for (int n : {1, 2, 4}) {
        const SumProductModel m = fig_model(n);
        for (int i = 0; i < 50; ++i) {
            const double s = std::pow(10.0, -1.0 + 3.0 * i / 49.0);
            CHECK(mgf_asymptotic(m, s) >= mgf_exact(m, s));
        }
    }
}

TEST_CASE("asymptotic density is the small-h limit") {
    const SumProductModel m = fig_model(2);
    // CDF mass below h=0.1 is ~1e-5 here; the ratio is near one
    const double h = 0.1;
    CHECK(cdf_numeric(m, h) < 1e-4);
    CHECK(pdf_numeric(m, h) / pdf_asymptotic(m, h) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("asymptotic form requires a strict per-branch minimum") {
    const SumProductModel tie(
        SumProductModel::iid({NakagamiParams(1, 1), NakagamiParams(1, 2)}, 2));
    CHECK_THROWS_AS(asymptotic_form(tie), DomainError);
    CHECK_THROWS_AS(mgf_asymptotic(tie, 1.0), DomainError);
}

TEST_CASE("sampling H") {
    std::mt19937_64 rng(77);
    const SumProductModel m = fig_model(3);
    const long n = 1'000'000;
    double sum = 0.0, sum_sq = 0.0, mgf_sum = 0.0, mgf_sq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double h = sample_H(m, rng);
        sum += h;
        sum_sq += h * h;
        const double e = std::exp(-h);
        mgf_sum += e;
        mgf_sq += e * e;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - m.mean()) < 4.0 * se);

    const double mgf_mean = mgf_sum / n;
    const double mgf_se = std::sqrt((mgf_sq / n - mgf_mean * mgf_mean) / n);
    CHECK(std::fabs(mgf_mean - mgf_exact(m, 1.0)) < 3.0 * mgf_se);
}

TEST_CASE("sampling H: L=1 N=1 is distributed as a single amplitude") {
    // Kolmogorov-Smirnov against the Rayleigh CDF at alpha = 0.01
    std::mt19937_64 rng(123);
    const SumProductModel m(SumProductModel::iid({NakagamiParams(1, 1)}, 1));
    const long n = 100'000;
    std::vector<double> draws(n);
    for (long i = 0; i < n; ++i) draws[static_cast<std::size_t>(i)] = sample_H(m, rng);
    std::sort(draws.begin(), draws.end());
    double d_stat = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = draws[static_cast<std::size_t>(i)];
        const double cdf = 1.0 - std::exp(-x * x); // rate-1 Rayleigh
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d_stat = std::max({d_stat, std::fabs(cdf - lo), std::fabs(cdf - hi)});
    }
    CHECK(d_stat < 1.63 / std::sqrt(static_cast<double>(n)));
}
