#include "nakprod/errors.hpp"
#include "nakprod/simkit.hpp"

#include <doctest.h>

#include <cmath>

using namespace nakprod;

namespace {

IrsModel fig_model(int n) {
    return IrsModel(n, NakagamiParams(2, 2), NakagamiParams(1, 1));
}

McConfig cfg_with(long trials, int workers = 0) {
    McConfig cfg;
    cfg.trials = trials;
    cfg.workers = workers;
    return cfg;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

} // namespace

TEST_CASE("substream seeds separate points and chunks") {
    const auto s00 = substream_seed(1, 0, 0);
    CHECK(s00 == substream_seed(1, 0, 0));
    CHECK(s00 != substream_seed(1, 0, 1));
    CHECK(s00 != substream_seed(1, 1, 0));
    CHECK(s00 != substream_seed(2, 0, 0));
}

TEST_CASE("outage estimates are worker-count invariant") {
    const IrsModel m = fig_model(2);
    const double gth = db(5.0), rho = db(8.0);
    McConfig one = cfg_with(200'000, 1);
    McConfig many = cfg_with(200'000, 3);
    const McEstimate a = mc_outage(m, gth, rho, one);
    const McEstimate b = mc_outage(m, gth, rho, many);
    CHECK(a.estimate == b.estimate); // bit identical
    CHECK(a.std_error == b.std_error);

    const McEstimate c = mc_aser(m, ModulationSpec::bpsk(), rho, one);
    const McEstimate d = mc_aser(m, ModulationSpec::bpsk(), rho, many);
    CHECK(c.estimate == d.estimate);

    const McHistogram ha = mc_histogram(m.reflected_sumprod(), one);
    const McHistogram hb = mc_histogram(m.reflected_sumprod(), many);
    CHECK(ha.counts == hb.counts);
    CHECK(ha.edges == hb.edges);
}

TEST_CASE("outage edge cases and agreement with the exact path") {
    const IrsModel m = fig_model(2);
    const McEstimate zero = mc_outage(m, 0.0, 1.0, cfg_with(1000));
    CHECK(zero.estimate == 0.0);
    CHECK(zero.std_error == 0.0);

    const McConfig cfg = cfg_with(400'000);
    for (double rho_db : {0.0, 6.0, 12.0}) {
        const double rho = db(rho_db);
        const McEstimate est = mc_outage(m, db(5.0), rho, cfg);
        const double exact =
            outage_probability(m, db(5.0), rho, MetricMethod::ExactNumeric);
        CHECK(std::fabs(est.estimate - exact) < 3.0 * est.std_error + 1e-12);
    }
    CHECK_THROWS_AS(mc_outage(m, 1.0, 1.0, cfg_with(10)), DomainError);
}

TEST_CASE("semi-analytic ASER estimator") {
    const IrsModel m = fig_model(3);
    // zero-SNR limit: alpha Q(0) clamped into [0, 1]
    const McEstimate low = mc_aser(m, ModulationSpec::qpsk(), 1e-12, cfg_with(1000));
    CHECK(low.estimate == doctest::Approx(1.0).epsilon(1e-9)); // alpha/2 = 1 exactly
    const McEstimate low_bpsk = mc_aser(m, ModulationSpec::bpsk(), 1e-12, cfg_with(1000));
    CHECK(low_bpsk.estimate == doctest::Approx(0.5).epsilon(1e-6));

    // 1/sqrt(n) scaling
    McConfig small = cfg_with(100'000);
    McConfig big = cfg_with(400'000);
    const double se1 = mc_aser(m, ModulationSpec::bpsk(), db(8.0), small).std_error;
    const double se2 = mc_aser(m, ModulationSpec::bpsk(), db(8.0), big).std_error;
    CHECK(se1 / se2 == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("semi-analytic beats symbol flipping at equal trials") {
    const IrsModel m = fig_model(2);
    const McConfig cfg = cfg_with(300'000);
    const McEstimate smooth = mc_aser(m, ModulationSpec::bpsk(), db(6.0), cfg);
    const McEstimate flips = mc_aser_symbol_bpsk(m, db(6.0), cfg);
    CHECK(smooth.std_error < flips.std_error);
    // both estimate the same quantity
    CHECK(std::fabs(smooth.estimate - flips.estimate) <
          4.0 * std::hypot(smooth.std_error, flips.std_error));
}

TEST_CASE("empirical MGF") {
    const SumProductModel m =
        SumProductModel::iid({NakagamiParams(2, 1), NakagamiParams(1, 1)}, 2);
    const McEstimate est = mc_mgf(m, 1.0, cfg_with(400'000));
    CHECK(std::fabs(est.estimate - mgf_exact(m, 1.0)) < 3.0 * est.std_error);
}

TEST_CASE("histogram normalization and Rayleigh shape") {
    const SumProductModel ray = SumProductModel::iid({NakagamiParams(1, 1)}, 1);
    McConfig cfg = cfg_with(400'000);
    cfg.histogram_bins = 40;
    const McHistogram h = mc_histogram(ray, cfg, 4.0);
    CHECK(h.total_mass() + static_cast<double>(h.overflow) / h.trials ==
          doctest::Approx(1.0).epsilon(1e-12));
    // binwise agreement with the closed Rayleigh density over the bulk
    long checked = 0;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double lo = h.edges[b], hi = h.edges[b + 1];
        const double expect =
            (std::exp(-lo * lo) - std::exp(-hi * hi)) / (hi - lo); // bin-averaged pdf
        if (h.counts[b] < 50) continue;
        ++checked;
        CHECK(std::fabs(h.density[b] - expect) < 3.5 * h.sigma[b]);
    }
    CHECK(checked > 10);
}

TEST_CASE("SNR histogram covers the paper-style comparison") {
    const IrsModel m = fig_model(2);
    McConfig cfg = cfg_with(200'000);
    cfg.histogram_bins = 30;
    const McHistogram h = mc_histogram_snr(m, 1.0, cfg, 30.0);
    CHECK(h.total_mass() + static_cast<double>(h.overflow) / h.trials ==
          doctest::Approx(1.0).epsilon(1e-12));
    // compare a few central bins against the series SNR density
    EvalConfig eval;
    long checked = 0;
    for (std::size_t b = 2; b < h.counts.size(); ++b) {
        if (h.counts[b] < 400) continue;
        const double center = 0.5 * (h.edges[b] + h.edges[b + 1]);
        const double expect = snr_pdf(m, center, 1.0, MetricMethod::ExactSeries, eval);
        CHECK(std::fabs(h.density[b] - expect) < 3.5 * h.sigma[b]);
        ++checked;
    }
    CHECK(checked > 5);
}
