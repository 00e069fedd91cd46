#include "nakprod/baselines.hpp"
#include "nakprod/cli.hpp"
#include "nakprod/gamma.hpp"
#include "nakprod/irs_perf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

namespace nakprod::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    if (s.size() > 120) s = s.substr(0, 120);
    return s;
}

struct Row {
    std::string coord;    // rho_db, x, or s depending on scenario
    std::string coord2;   // gamma_th_db or rho_db
    int n;
    int m;
    std::string method;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string std_error; // empty when not applicable
    std::string flags = "ok";
};

void write_rows(const RunConfig& cfg, const std::vector<Row>& rows) {
    std::ofstream out(cfg.output_csv, std::ios::trunc);
    if (!out) throw IoError("cannot open output csv '" + cfg.output_csv + "'");
    out << csv_header(cfg.scenario) << "\n";
    for (const Row& r : rows) {
        out << r.coord << ',' << r.coord2 << ',' << r.n << ',' << r.m << ',' << r.method << ','
            << fmt(r.value) << ',' << r.std_error << ',' << r.flags << "\n";
    }
    if (!out) throw IoError("failed writing '" + cfg.output_csv + "'");
}

IrsModel build_model(const ModelBlock& block, int elements_n) {
    std::optional<NakagamiParams> direct;
    if (block.direct) direct = NakagamiParams(block.direct->first, block.direct->second);
    return IrsModel(elements_n, NakagamiParams(block.m_si, block.omega_si),
                    NakagamiParams(block.m_id, block.omega_id), direct, block.antennas_m);
}

std::string series_flags(const IrsModel& model, const SeriesConfig& scfg) {
    const double eps = series_effective_epsilon(model.reflected_double(), scfg);
    if (eps == 0.0) return "ok";
    return "ok;eps=" + fmt(eps);
}

// Long-format emission order: model group, then grid point, then method.
// point_index for MC substreams depends only on (group, grid) position.
std::uint64_t point_id(std::size_t group, std::size_t grid) {
    return static_cast<std::uint64_t>(group) * 1000003ULL + grid;
}

class Runner {
public:
    explicit Runner(const RunConfig& cfg) : cfg_(cfg) { eval_.series = cfg.series; }

    RunResult execute() {
        switch (cfg_.scenario) {
            case Scenario::Op: metric_sweep(/*is_op=*/true); break;
            case Scenario::Aser: metric_sweep(/*is_op=*/false); break;
            case Scenario::Pdf: pdf_sweep(); break;
            case Scenario::Mgf: mgf_sweep(); break;
            case Scenario::Diversity: diversity_rows(); break;
        }
        write_rows(cfg_, rows_);
        if (cfg_.output_plot)
            emit_plot_script(cfg_.output_csv, cfg_.scenario, *cfg_.output_plot);
        return {errors_ == 0 ? 0 : 3, static_cast<long>(rows_.size()), errors_};
    }

private:
    const RunConfig& cfg_;
    EvalConfig eval_{};
    std::vector<Row> rows_;
    long errors_ = 0;

    template <typename Fn>
    void emit(Row row, Fn&& compute) {
        try {
            compute(row);
        } catch (const Error& e) {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.flags = "err:" + sanitize(e.what());
            ++errors_;
            std::cerr << "{\"error\":\"" << sanitize(e.what()) << "\",\"method\":\""
                      << row.method << "\",\"n\":" << row.n << ",\"coord\":\"" << row.coord
                      << "\"}\n";
        }
        rows_.push_back(std::move(row));
    }

    void metric_sweep(bool is_op) {
        const double gamma_th =
            cfg_.gamma_th_db ? db_to_linear(*cfg_.gamma_th_db) : 0.0;
        const std::string gamma_field = cfg_.gamma_th_db ? fmt(*cfg_.gamma_th_db) : "";
        std::optional<ModulationSpec> mod;
        if (cfg_.modulation) mod = ModulationSpec::by_name(*cfg_.modulation, cfg_.modulation_size);

        for (std::size_t gi = 0; gi < cfg_.model.elements_n.size(); ++gi) {
            const IrsModel model = build_model(cfg_.model, cfg_.model.elements_n[gi]);
            const CltApprox clt = fit_clt(model);
            const GammaApprox gam = fit_gamma(model);
            for (std::size_t pi = 0; pi < cfg_.rho_grid_db.size(); ++pi) {
                const double rho_db = cfg_.rho_grid_db[pi];
                const double rho = db_to_linear(rho_db);
                double exact_value = std::numeric_limits<double>::quiet_NaN();
                for (const std::string& method : cfg_.methods) {
                    Row row{fmt(rho_db), gamma_field, model.elements_n, model.antennas_m,
                            method};
                    emit(row, [&](Row& r) {
                        McConfig mc = cfg_.mc;
                        mc.point_index = point_id(gi, pi);
                        if (method == "exact") {
                            r.value = is_op ? outage_probability(model, gamma_th, rho,
                                                                 MetricMethod::ExactNumeric,
                                                                 eval_)
                                            : aser(model, *mod, rho,
                                                   MetricMethod::ExactNumeric, eval_);
                            exact_value = r.value;
                        } else if (method == "series") {
                            r.value = is_op ? outage_probability(model, gamma_th, rho,
                                                                 MetricMethod::ExactSeries,
                                                                 eval_)
                                            : aser(model, *mod, rho,
                                                   MetricMethod::ExactSeries, eval_);
                            r.flags = series_flags(model, cfg_.series);
                        } else if (method == "upper") {
                            r.value = is_op ? outage_probability(model, gamma_th, rho,
                                                                 MetricMethod::UpperBound,
                                                                 eval_)
                                            : aser(model, *mod, rho,
                                                   MetricMethod::UpperBound, eval_);
                            if (std::isfinite(exact_value) && exact_value > 0.0)
                                r.flags = "ok;gap=" + fmt(r.value / exact_value);
                        } else if (method == "clt") {
                            r.value = is_op ? baseline_outage(clt, gamma_th, rho)
                                            : baseline_aser(clt, *mod, rho);
                        } else if (method == "gamma") {
                            r.value = is_op ? baseline_outage(gam, gamma_th, rho)
                                            : baseline_aser(gam, *mod, rho);
                        } else if (method == "mc") {
                            const McEstimate e = is_op ? mc_outage(model, gamma_th, rho, mc)
                                                       : mc_aser(model, *mod, rho, mc);
                            r.value = e.estimate;
                            r.std_error = fmt(e.std_error);
                        }
                    });
                }
            }
        }
    }

    void pdf_sweep() {
        const double rho = db_to_linear(cfg_.rho_db);
        const GridSpec grid = *cfg_.x_grid;
        const double width = (grid.max - grid.min) / grid.points;
        for (std::size_t gi = 0; gi < cfg_.model.elements_n.size(); ++gi) {
            const IrsModel model = build_model(cfg_.model, cfg_.model.elements_n[gi]);
            const CltApprox clt = fit_clt(model);
            const GammaApprox gam = fit_gamma(model);
            // MC histogram shares the bin layout with the analytic grid
            std::optional<McHistogram> hist;
            for (const std::string& method : cfg_.methods) {
                for (int b = 0; b < grid.points; ++b) {
                    const double x = grid.min + (b + 0.5) * width;
                    Row row{fmt(x), fmt(cfg_.rho_db), model.elements_n, model.antennas_m,
                            method};
                    emit(row, [&](Row& r) {
                        if (method == "mc") {
                            if (!hist) {
                                McConfig mc = cfg_.mc;
                                mc.point_index = point_id(gi, 0);
                                mc.histogram_bins = grid.points;
                                hist = mc_histogram_snr(model, rho, mc, grid.max);
                            }
                            r.value = hist->density[static_cast<std::size_t>(b)];
                            r.std_error = fmt(hist->sigma[static_cast<std::size_t>(b)]);
                        } else if (method == "series") {
                            r.value = snr_pdf(model, x, rho, MetricMethod::ExactSeries, eval_);
                            r.flags = series_flags(model, cfg_.series);
                        } else if (method == "asymptotic") {
                            r.value = snr_pdf(model, x, rho, MetricMethod::UpperBound, eval_);
                        } else if (method == "exact") {
                            r.value = snr_pdf(model, x, rho, MetricMethod::ExactNumeric, eval_);
                        } else if (method == "clt") {
                            r.value = baseline_snr_pdf(clt, x, rho);
                        } else if (method == "gamma") {
                            r.value = baseline_snr_pdf(gam, x, rho);
                        }
                    });
                }
            }
        }
    }

    void mgf_sweep() {
        const double rho = db_to_linear(cfg_.rho_db);
        const GridSpec grid = *cfg_.s_grid;
        const double step = (grid.max - grid.min) / (grid.points - 1);
        for (std::size_t gi = 0; gi < cfg_.model.elements_n.size(); ++gi) {
            const IrsModel model = build_model(cfg_.model, cfg_.model.elements_n[gi]);
            std::map<std::string, std::function<double(double)>> handles;
            for (const std::string& method : cfg_.methods) {
                if (method == "exact")
                    handles[method] = snr_mgf(model, rho, MetricMethod::ExactNumeric, eval_);
                else if (method == "series")
                    handles[method] = snr_mgf(model, rho, MetricMethod::ExactSeries, eval_);
                else if (method == "upper")
                    handles[method] = snr_mgf(model, rho, MetricMethod::UpperBound, eval_);
            }
            for (std::size_t pi = 0; pi < static_cast<std::size_t>(grid.points); ++pi) {
                const double s = grid.min + step * static_cast<double>(pi);
                for (const std::string& method : cfg_.methods) {
                    Row row{fmt(s), fmt(cfg_.rho_db), model.elements_n, model.antennas_m,
                            method};
                    emit(row, [&](Row& r) {
                        if (method == "mc") {
                            McConfig mc = cfg_.mc;
                            mc.point_index = point_id(gi, pi);
                            // E[e^{-s gamma}] by direct averaging over SNR draws
                            const McEstimate e = mc_snr_mgf(model, rho, s, mc);
                            r.value = e.estimate;
                            r.std_error = fmt(e.std_error);
                        } else {
                            r.value = handles.at(method)(s);
                            if (method == "series") r.flags = series_flags(model, cfg_.series);
                        }
                    });
                }
            }
        }
    }

    void diversity_rows() {
        const double gamma_th = db_to_linear(*cfg_.gamma_th_db);
        for (std::size_t gi = 0; gi < cfg_.model.elements_n.size(); ++gi) {
            const IrsModel model = build_model(cfg_.model, cfg_.model.elements_n[gi]);
            const double anchor_db = cfg_.rho_grid_db.back();
            for (const std::string& method : cfg_.methods) {
                Row row{fmt(anchor_db), fmt(*cfg_.gamma_th_db), model.elements_n,
                        model.antennas_m, method};
                emit(row, [&](Row& r) {
                    if (method == "analytic") {
                        r.value = diversity_order(model);
                        return;
                    }
                    const MetricMethod mm = method == "exact" ? MetricMethod::ExactNumeric
                                                              : MetricMethod::UpperBound;
                    std::vector<std::pair<double, double>> curve;
                    for (double rho_db : cfg_.rho_grid_db) {
                        const double rho = db_to_linear(rho_db);
                        curve.emplace_back(rho,
                                           outage_probability(model, gamma_th, rho, mm, eval_));
                    }
                    r.value = empirical_diversity_slope(curve, cfg_.regime_threshold);
                    long in_regime = 0;
                    for (const auto& [rho, op] : curve)
                        if (op < cfg_.regime_threshold) ++in_regime;
                    r.flags = "ok;fit_points=" + std::to_string(in_regime);
                });
            }
        }
    }
};

} // namespace

RunResult run(const RunConfig& config) {
    Runner runner(config);
    return runner.execute();
}

std::string csv_header(Scenario scenario) {
    switch (scenario) {
        case Scenario::Pdf: return "x,rho_db,n,m,method,value,std_error,flags";
        case Scenario::Mgf: return "s,rho_db,n,m,method,value,std_error,flags";
        default: return "rho_db,gamma_th_db,n,m,method,value,std_error,flags";
    }
}

} // namespace nakprod::cli
