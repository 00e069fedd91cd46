#include "nakprod/simkit.hpp"
#include "nakprod/errors.hpp"
#include "nakprod/gamma.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace nakprod {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int resolve_workers(const McConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("NAKPROD_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(chunk_index, chunk_trials, rng) for every chunk; results are written
// into per-chunk slots, so scheduling order cannot affect the reduction.
template <typename ChunkResult, typename Fn>
std::vector<ChunkResult> run_chunks(const McConfig& cfg, Fn&& fn) {
    if (cfg.trials < 100) throw DomainError("McConfig: trials must be >= 100");
    const long chunk = std::max<long>(1, cfg.chunk_size);
    const long n_chunks = (cfg.trials + chunk - 1) / chunk;
    std::vector<ChunkResult> results(static_cast<std::size_t>(n_chunks));
    const int workers = std::min<long>(resolve_workers(cfg), n_chunks);
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long idx = next.fetch_add(1);
            if (idx >= n_chunks) return;
            const long lo = idx * chunk;
            const long n = std::min(chunk, cfg.trials - lo);
            std::mt19937_64 rng(substream_seed(cfg.master_seed, cfg.point_index,
                                               static_cast<std::uint64_t>(idx)));
            results[static_cast<std::size_t>(idx)] = fn(n, rng);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

struct MomentChunk {
    double sum = 0.0;
    double sum_sq = 0.0;
};

McEstimate reduce_mean(const std::vector<MomentChunk>& chunks, long trials) {
    double s = 0.0, ss = 0.0;
    for (const auto& c : chunks) { // fixed order
        s += c.sum;
        ss += c.sum_sq;
    }
    const double n = static_cast<double>(trials);
    const double mean = s / n;
    const double var = std::max(0.0, ss / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

double draw_amplitude(const IrsModel& model, const SumProductModel& reflected,
                      std::mt19937_64& rng) {
    double h = sample_H(reflected, rng);
    if (model.has_direct()) h += sample(*model.direct, rng);
    return h;
}

} // namespace

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point, std::uint64_t chunk) {
    std::uint64_t state = master;
    std::uint64_t s = splitmix64(state);
    state = s ^ (point * 0xd1342543de82ef95ULL + 1);
    s = splitmix64(state);
    state = s ^ (chunk * 0xaf251af3b0f025b5ULL + 1);
    return splitmix64(state);
}

McEstimate mc_outage(const IrsModel& model, double gamma_th, double rho, const McConfig& cfg) {
    if (gamma_th < 0.0 || !(rho > 0.0))
        throw DomainError("mc_outage: gamma_th >= 0 and rho > 0 required");
    if (gamma_th == 0.0) return {0.0, 0.0};
    const SumProductModel reflected = model.reflected_sumprod();
    const double h_th = std::sqrt(gamma_th / rho);
    auto chunks = run_chunks<long>(cfg, [&](long n, std::mt19937_64& rng) {
        long hits = 0;
        for (long i = 0; i < n; ++i)
            if (draw_amplitude(model, reflected, rng) <= h_th) ++hits;
        return hits;
    });
    long total = 0;
    for (long c : chunks) total += c;
    const double n = static_cast<double>(cfg.trials);
    const double p = total / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

McEstimate mc_aser(const IrsModel& model, const ModulationSpec& mod, double rho,
                   const McConfig& cfg) {
    if (!(rho > 0.0)) throw DomainError("mc_aser: rho must be positive");
    const SumProductModel reflected = model.reflected_sumprod();
    const double c = std::sqrt(2.0 * mod.g * rho);
    auto chunks = run_chunks<MomentChunk>(cfg, [&](long n, std::mt19937_64& rng) {
        MomentChunk mc;
        for (long i = 0; i < n; ++i) {
            const double h = draw_amplitude(model, reflected, rng);
            const double pe = std::min(1.0, mod.alpha * gaussian_q(c * h));
            mc.sum += pe;
            mc.sum_sq += pe * pe;
        }
        return mc;
    });
    return reduce_mean(chunks, cfg.trials);
}

McEstimate mc_aser_symbol_bpsk(const IrsModel& model, double rho, const McConfig& cfg) {
    if (!(rho > 0.0)) throw DomainError("mc_aser_symbol_bpsk: rho must be positive");
    const SumProductModel reflected = model.reflected_sumprod();
    auto chunks = run_chunks<long>(cfg, [&](long n, std::mt19937_64& rng) {
        std::normal_distribution<double> noise(0.0, 1.0);
        long errors = 0;
        for (long i = 0; i < n; ++i) {
            const double h = draw_amplitude(model, reflected, rng);
            // conditional BPSK error: z > sqrt(2 gamma)
            if (noise(rng) > std::sqrt(2.0 * rho) * h) ++errors;
        }
        return errors;
    });
    long total = 0;
    for (long c : chunks) total += c;
    const double n = static_cast<double>(cfg.trials);
    const double p = total / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

McEstimate mc_mgf(const SumProductModel& model, double s, const McConfig& cfg) {
    if (s < 0.0) throw DomainError("mc_mgf: s must be non-negative");
    auto chunks = run_chunks<MomentChunk>(cfg, [&](long n, std::mt19937_64& rng) {
        MomentChunk mc;
        for (long i = 0; i < n; ++i) {
            const double v = std::exp(-s * sample_H(model, rng));
            mc.sum += v;
            mc.sum_sq += v * v;
        }
        return mc;
    });
    return reduce_mean(chunks, cfg.trials);
}

McEstimate mc_snr_mgf(const IrsModel& model, double rho, double s, const McConfig& cfg) {
    if (s < 0.0 || !(rho > 0.0)) throw DomainError("mc_snr_mgf: s >= 0 and rho > 0 required");
    const SumProductModel reflected = model.reflected_sumprod();
    auto chunks = run_chunks<MomentChunk>(cfg, [&](long n, std::mt19937_64& rng) {
        MomentChunk mc;
        for (long i = 0; i < n; ++i) {
            const double h = draw_amplitude(model, reflected, rng);
            const double v = std::exp(-s * rho * h * h);
            mc.sum += v;
            mc.sum_sq += v * v;
        }
        return mc;
    });
    return reduce_mean(chunks, cfg.trials);
}

double McHistogram::total_mass() const {
    double mass = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        mass += density[i] * (edges[i + 1] - edges[i]);
    return mass;
}

namespace {

template <typename DrawFn>
McHistogram histogram_impl(const McConfig& cfg, double x_max, DrawFn&& draw) {
    if (cfg.histogram_bins < 1) throw DomainError("McConfig: histogram_bins must be >= 1");
    if (x_max <= 0.0) {
        // pilot substream (fixed chunk id), deterministic auto-range
        std::mt19937_64 rng(substream_seed(cfg.master_seed, cfg.point_index, ~0ULL));
        double peak = 0.0;
        for (int i = 0; i < 4096; ++i) peak = std::max(peak, draw(rng));
        x_max = 1.1 * peak;
    }
    const int bins = cfg.histogram_bins;
    const double width = x_max / bins;
    auto chunks = run_chunks<std::vector<long>>(cfg, [&](long n, std::mt19937_64& rng) {
        std::vector<long> local(static_cast<std::size_t>(bins) + 1, 0);
        for (long i = 0; i < n; ++i) {
            const double v = draw(rng);
            const long b = static_cast<long>(v / width);
            if (b >= 0 && b < bins)
                ++local[static_cast<std::size_t>(b)];
            else
                ++local[static_cast<std::size_t>(bins)]; // overflow slot
        }
        return local;
    });
    McHistogram out;
    out.trials = cfg.trials;
    out.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) out.edges[static_cast<std::size_t>(b)] = b * width;
    out.counts.assign(static_cast<std::size_t>(bins), 0);
    out.overflow = 0;
    for (const auto& local : chunks) {
        for (int b = 0; b < bins; ++b) out.counts[static_cast<std::size_t>(b)] += local[b];
        out.overflow += local[static_cast<std::size_t>(bins)];
    }
    out.density.resize(static_cast<std::size_t>(bins));
    out.sigma.resize(static_cast<std::size_t>(bins));
    const double norm = 1.0 / (static_cast<double>(cfg.trials) * width);
    for (int b = 0; b < bins; ++b) {
        const auto i = static_cast<std::size_t>(b);
        out.density[i] = out.counts[i] * norm;
        out.sigma[i] = std::sqrt(static_cast<double>(out.counts[i])) * norm;
    }
    return out;
}

} // namespace

McHistogram mc_histogram(const SumProductModel& model, const McConfig& cfg, double x_max) {
    return histogram_impl(cfg, x_max,
                          [&](std::mt19937_64& rng) { return sample_H(model, rng); });
}

McHistogram mc_histogram_snr(const IrsModel& model, double rho, const McConfig& cfg,
                             double x_max) {
    if (!(rho > 0.0)) throw DomainError("mc_histogram_snr: rho must be positive");
    const SumProductModel reflected = model.reflected_sumprod();
    return histogram_impl(cfg, x_max, [&](std::mt19937_64& rng) {
        const double h = draw_amplitude(model, reflected, rng);
        return rho * h * h;
    });
}

} // namespace nakprod
