#include "nakprod/bessel.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/meijer.hpp"

#include "support/oracles.hpp"
#include "support/reference_values.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace nakprod;

TEST_CASE("restricted Meijer G: L=1 against MGF quadrature") {
    // sqrt(pi) Gamma(m) M_{m,om}(s) = G^{2,1}_{1,2}[s^2/(4 om) | 1-m; 0, 1/2]
    const std::array<double, 1> a0 = {0.0}; // m = 1
    CHECK(meijer_g_2L_L2(a0, 0.25) == doctest::Approx(refs::kG2112_quarter).epsilon(1e-10));

    for (double m : {0.5, 1.0, 2.5}) {
        for (double om : {0.5, 1.0, 3.0}) {
            for (double s : {0.3, 1.0, 5.0}) {
                const std::array<double, 1> a = {1.0 - m};
                const double g = meijer_g_2L_L2(a, s * s / (4.0 * om));
                const double mgf = g / (std::sqrt(M_PI) * std::tgamma(m));
                CHECK(mgf ==
                      doctest::Approx(oracle::nakagami_mgf_quad(m, om, s)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("restricted Meijer G: pair-PDF class reproduces the Bessel closed form") {
    CHECK(meijer_g_20_02(1.0, 1.0, 1.0) == doctest::Approx(refs::kG2002_1_b11).epsilon(1e-9));
    CHECK(meijer_g_20_02(2.5, 0.5, 0.04) ==
          doctest::Approx(refs::kG2002_004_b2505).epsilon(1e-9));

    // G^{2,0}_{0,2}[x | b1, b2] = 2 x^{(b1+b2)/2} K_{b1-b2}(2 sqrt x)
    for (double m1 : {0.5, 1.0, 1.5, 2.5}) {
        for (double m2 : {0.5, 1.0, 1.5, 2.5}) {
            for (double x : {1e-3, 0.03, 0.3, 1.0, 4.0, 10.0}) {
                const double closed =
                    2.0 * std::pow(x, 0.5 * (m1 + m2)) * bessel_k(m1 - m2, 2.0 * std::sqrt(x));
                CHECK(meijer_g_20_02(m1, m2, x) == doctest::Approx(closed).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("restricted Meijer G: L=2 MGF against Bessel-density quadrature") {
    struct Case {
        double m1, m2, o1, o2, s, ref;
    };
    const Case cases[] = {
        {1.0, 1.0, 1.0, 1.0, 1.0, refs::kProdMgf_1111_s1},
        {1.0, 2.0, 1.0, 1.0, 1.0, refs::kProdMgf_1211_s1},
        {2.0, 1.0, 2.0, 1.0, 0.5, refs::kProdMgf_2121_s05},
        {0.6, 1.7, 0.8, 1.9, 2.5, refs::kProdMgf_06170819_s25},
        {2.0, 1.0, 1.0, 1.0, 2.0, refs::kProdMgf_2111_s2},
    };
    for (const Case& c : cases) {
        const std::array<double, 2> a = {1.0 - c.m1, 1.0 - c.m2};
        const double g = meijer_g_2L_L2(a, c.s * c.s / (4.0 * c.o1 * c.o2));
        const double mgf = g / (std::sqrt(M_PI) * std::tgamma(c.m1) * std::tgamma(c.m2));
        CHECK(mgf == doctest::Approx(c.ref).epsilon(1e-9));
    }
}

TEST_CASE("restricted Meijer G: complex argument") {
    const std::array<double, 2> a = {0.0, -1.0}; // m = 1, 2
    const std::complex<double> x(0.3, 0.4);
    const auto g = meijer_g_2L_L2(a, x);
    const auto gc = meijer_g_2L_L2(a, std::conj(x));
    CHECK(g.real() == doctest::Approx(gc.real()).epsilon(1e-10));
    CHECK(g.imag() == doctest::Approx(-gc.imag()).epsilon(1e-10));
    // real-axis limit agrees with the real-argument entry point
    const auto gr = meijer_g_2L_L2(a, std::complex<double>(0.5, 0.0));
    CHECK(gr.real() == doctest::Approx(meijer_g_2L_L2(a, 0.5)).epsilon(1e-10));
    CHECK(std::fabs(gr.imag()) < 1e-12 * std::fabs(gr.real()));
}

TEST_CASE("restricted Meijer G: contour placement is verified") {
    const std::array<double, 1> a = {0.0}; // m = 1, contour must sit in (-1, 0)
    MellinBarnesConfig cfg;
    cfg.contour_shift = 0.5; // inside the right pole family
    CHECK_THROWS_AS(meijer_g_2L_L2(a, 1.0, cfg), ContourError);
    cfg.contour_shift = -1.5; // left of the left family
    CHECK_THROWS_AS(meijer_g_2L_L2(a, 1.0, cfg), ContourError);
    cfg.contour_shift = -0.9999; // closer than the minimum separation
    CHECK_THROWS_AS(meijer_g_2L_L2(a, 1.0, cfg), ContourError);

    MellinBarnesConfig small;
    small.node_count = 8;
    CHECK_THROWS_AS(meijer_g_2L_L2(a, 1.0, small), DomainError);

    CHECK_THROWS_AS(meijer_g_2L_L2(a, -1.0), DomainError);
    const std::array<double, 1> bad = {1.5}; // m = -0.5
    CHECK_THROWS_AS(meijer_g_2L_L2(bad, 1.0), DomainError);
}

