#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"

#include "support/reference_values.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nakprod;

TEST_CASE("log_gamma matches high-precision references") {
    CHECK(std::abs(log_gamma({1.0, 0.0})) < 1e-14); // Gamma(1) = 1

    const auto g_half = log_gamma({0.5, 0.0});
    CHECK(g_half.real() == doctest::Approx(refs::kLgammaHalf).epsilon(1e-13));
    CHECK(g_half.imag() == 0.0);

    const auto g34 = log_gamma({3.0, 4.0});
    CHECK(g34.real() == doctest::Approx(refs::kLgamma34Re).epsilon(1e-12));
    CHECK(g34.imag() == doctest::Approx(refs::kLgamma34Im).epsilon(1e-12));

    const auto g2540 = log_gamma({25.0, 40.0});
    CHECK(g2540.real() == doctest::Approx(refs::kLgamma2540Re).epsilon(1e-12));
    CHECK(g2540.imag() == doctest::Approx(refs::kLgamma2540Im).epsilon(1e-12));

    // reflection region, principal branch
    const auto gm = log_gamma({-2.5, 1.5});
    CHECK(gm.real() == doctest::Approx(refs::kLgammaM25Re).epsilon(1e-12));
    CHECK(gm.imag() == doctest::Approx(refs::kLgammaM25Im).epsilon(1e-12));

    // conjugate symmetry
    const auto a = log_gamma({1.7, 2.3});
    const auto b = log_gamma({1.7, -2.3});
    CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-14));
    CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-14));
}

TEST_CASE("log_gamma pole handling") {
    CHECK_THROWS_AS(log_gamma({0.0, 0.0}), PoleError);
    CHECK_THROWS_AS(log_gamma({-3.0, 0.0}), PoleError);
    CHECK_THROWS_AS(signed_log_gamma(-1.0), PoleError);
}

TEST_CASE("signed_log_gamma on the negative axis") {
    CHECK(signed_log_gamma(0.001).log_abs == doctest::Approx(refs::kLgamma1em3).epsilon(1e-13));
    CHECK(signed_log_gamma(99.5).log_abs == doctest::Approx(refs::kLgamma995).epsilon(1e-13));
    // Gamma(-0.5) = -2 sqrt(pi)
    const auto g = signed_log_gamma(-0.5);
    CHECK(g.sign == -1);
    CHECK(std::exp(g.log_abs) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-13));
    // Gamma(-1.5) = 4 sqrt(pi) / 3 > 0
    CHECK(signed_log_gamma(-1.5).sign == +1);
}

TEST_CASE("pochhammer spot values") {
    CHECK(pochhammer(3.0, 2.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(pochhammer(1.234, 0.0) == 1.0);
    CHECK(pochhammer(2.0, -1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pochhammer(2.0, 0.5) == doctest::Approx(refs::kPoch_2_05).epsilon(1e-13));
    CHECK(pochhammer(1.5, 1.5) == doctest::Approx(refs::kPoch_15_15).epsilon(1e-13));
    // negative-argument ratio with sign: (−0.5)_1 = Gamma(0.5)/Gamma(-0.5) = -0.5
    CHECK(pochhammer(-0.5, 1.0) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK_THROWS_AS(pochhammer(-1.0, 0.5), PoleError);
    CHECK_THROWS_AS(pochhammer(0.5, -0.5), PoleError);
}

TEST_CASE("pochhammer composition identity (log-space)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xd(0.1, 8.0), nd(-0.45, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xd(rng), n = nd(rng), m = nd(rng);
        const double lhs = pochhammer(x, n) * pochhammer(x + n, m);
        const double rhs = pochhammer(x, n + m);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("gaussian_q") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(gaussian_q(1.0) == doctest::Approx(refs::kQ1).epsilon(1e-14));
    CHECK(gaussian_q(5.0) == doctest::Approx(refs::kQ5).epsilon(1e-13));
    CHECK(gaussian_q(-3.0) == doctest::Approx(refs::kQm3).epsilon(1e-14));
}

TEST_CASE("gaussian_q symmetry and monotonicity") {
    double prev = 1.0;
    for (double x = -6.0; x <= 6.0; x += 0.1) {
        CHECK(gaussian_q(x) + gaussian_q(-x) == doctest::Approx(1.0).epsilon(1e-14));
        const double q = gaussian_q(x);
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("gamma_p against the error function") {
    // P(1/2, x) = erf(sqrt(x))
    for (double x : {0.01, 0.3, 1.0, 4.0, 20.0})
        CHECK(gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    // P(1, x) = 1 - e^{-x}
    for (double x : {0.1, 2.0, 10.0})
        CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    CHECK(gamma_p(3.7, 0.0) == 0.0);
}
