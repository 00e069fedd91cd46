#include "nakprod/baselines.hpp"
#include "nakprod/cli.hpp"
#include "nakprod/irs_perf.hpp"
#include "nakprod/simkit.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

using namespace nakprod;

int run_command(const std::string& config_path) {
    cli::RunConfig cfg = cli::load_config(config_path);
    const cli::RunResult res = cli::run(cfg);
    std::cout << cfg.output_csv << ": " << res.rows_written << " rows";
    if (res.points_errored > 0) std::cout << ", " << res.points_errored << " errored points";
    std::cout << "\n";
    return res.exit_code;
}

int validate_command(const std::string& config_path) {
    cli::load_config(config_path);
    std::cout << config_path << ": ok\n";
    return 0;
}

struct QueryArgs {
    std::string metric;
    int n = 1;
    int antennas = 1;
    double m_si = 2.0, omega_si = 1.0;
    double m_id = 1.0, omega_id = 1.0;
    double m_sd = 0.0, omega_sd = 0.0; // 0 = no direct link
    double rho_db = 0.0;
    double gamma_th_db = 0.0;
    std::string method = "exact";
    std::string modulation = "bpsk";
    int mod_m = 0;
    long trials = 100000;
    std::uint64_t seed = 0x5eed0f00dULL;
};

int query_command(const QueryArgs& q) {
    std::optional<NakagamiParams> direct;
    if (q.m_sd > 0.0) direct = NakagamiParams(q.m_sd, q.omega_sd);
    const IrsModel model(q.n, NakagamiParams(q.m_si, q.omega_si),
                         NakagamiParams(q.m_id, q.omega_id), direct, q.antennas);
    const double rho = std::pow(10.0, q.rho_db / 10.0);
    const double gamma_th = std::pow(10.0, q.gamma_th_db / 10.0);

    if (q.metric == "diversity") {
        std::printf("diversity_order=%.10g\n", diversity_order(model));
        return 0;
    }

    std::optional<ModulationSpec> mod;
    if (q.metric == "aser")
        mod = ModulationSpec::by_name(q.modulation,
                                      q.mod_m > 0 ? std::optional<int>(q.mod_m) : std::nullopt);

    if (q.method == "mc") {
        McConfig mc;
        mc.master_seed = q.seed;
        mc.trials = q.trials;
        const McEstimate e = q.metric == "op" ? mc_outage(model, gamma_th, rho, mc)
                                              : mc_aser(model, *mod, rho, mc);
        std::printf("%s=%.10g std_error=%.10g\n", q.metric.c_str(), e.estimate, e.std_error);
        return 0;
    }

    MetricMethod method;
    if (q.method == "exact") method = MetricMethod::ExactNumeric;
    else if (q.method == "series") method = MetricMethod::ExactSeries;
    else if (q.method == "upper") method = MetricMethod::UpperBound;
    else throw cli::ConfigError("query: unknown method '" + q.method + "'");

    double value;
    if (q.metric == "op") value = outage_probability(model, gamma_th, rho, method);
    else if (q.metric == "aser") value = aser(model, *mod, rho, method);
    else throw cli::ConfigError("query: unknown metric '" + q.metric + "'");
    std::printf("%s=%.10g\n", q.metric.c_str(), value);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum-product Nakagami channel statistics and IRS link metrics"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Execute a JSON-configured sweep");
    run_cmd->add_option("config", config_path, "JSON config file")->required();

    std::string validate_path;
    auto* val_cmd = app.add_subcommand("validate", "Check a config against the schema");
    val_cmd->add_option("config", validate_path, "JSON config file")->required();

    std::string plot_csv, plot_out, plot_scenario = "op";
    auto* plot_cmd = app.add_subcommand("plot-script", "Emit a matplotlib script for a CSV");
    plot_cmd->add_option("csv", plot_csv, "CSV produced by 'run'")->required();
    plot_cmd->add_option("-o,--out", plot_out, "Output .py path")->required();
    plot_cmd->add_option("-s,--scenario", plot_scenario, "Scenario the CSV came from");

    QueryArgs q;
    auto* query_cmd = app.add_subcommand("query", "Single-shot metric evaluation");
    query_cmd->add_option("metric", q.metric, "op|aser|diversity")->required();
    query_cmd->add_option("--n", q.n, "IRS elements");
    query_cmd->add_option("--antennas", q.antennas, "source antennas");
    query_cmd->add_option("--m-si", q.m_si, "S-I shape");
    query_cmd->add_option("--omega-si", q.omega_si, "S-I rate");
    query_cmd->add_option("--m-id", q.m_id, "I-D shape");
    query_cmd->add_option("--omega-id", q.omega_id, "I-D rate");
    query_cmd->add_option("--m-sd", q.m_sd, "S-D shape (0 disables the direct link)");
    query_cmd->add_option("--omega-sd", q.omega_sd, "S-D rate");
    query_cmd->add_option("--rho-db", q.rho_db, "average SNR in dB");
    query_cmd->add_option("--gamma-th-db", q.gamma_th_db, "outage threshold in dB");
    query_cmd->add_option("--method", q.method, "exact|series|upper|mc");
    query_cmd->add_option("--modulation", q.modulation, "aser modulation name");
    query_cmd->add_option("--mod-m", q.mod_m, "constellation size");
    query_cmd->add_option("--trials", q.trials, "mc trials");
    query_cmd->add_option("--seed", q.seed, "mc master seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return run_command(config_path);
        if (val_cmd->parsed()) return validate_command(validate_path);
        if (plot_cmd->parsed()) {
            nakprod::cli::emit_plot_script(
                plot_csv, nakprod::cli::scenario_from_string(plot_scenario), plot_out);
            std::cout << plot_out << "\n";
            return 0;
        }
        if (query_cmd->parsed()) return query_command(q);
    } catch (const nakprod::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nakprod::cli::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const nakprod::Error& e) {
        std::cerr << "evaluator error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
