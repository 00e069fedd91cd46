#pragma once

#include "nakprod/errors.hpp"
#include "nakprod/simkit.hpp"
#include "nakprod/sumprod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nakprod::cli {

/// Config file violates the schema (exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure (exit code 4).
class IoError : public Error {
public:
    using Error::Error;
};

enum class Scenario { Pdf, Op, Aser, Mgf, Diversity };

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario scenario);

struct GridSpec {
    double min;
    double max;
    int points;
};

struct ModelBlock {
    std::vector<int> elements_n; // one row group per entry
    int antennas_m = 1;
    double m_si, omega_si;
    double m_id, omega_id;
    std::optional<std::pair<double, double>> direct; // (m_sd, omega_sd)
};

struct RunConfig {
    int version = 1;
    Scenario scenario;
    ModelBlock model;
    std::vector<std::string> methods;
    std::vector<double> rho_grid_db; // op / aser / diversity sweeps
    double rho_db = 0.0;             // fixed rho for pdf / mgf scenarios
    std::optional<double> gamma_th_db;
    std::optional<std::string> modulation;
    std::optional<int> modulation_size;
    std::optional<GridSpec> x_grid; // pdf: SNR bins starting at 0
    std::optional<GridSpec> s_grid; // mgf: Laplace argument grid
    SeriesConfig series{};
    McConfig mc{};
    double regime_threshold = 1e-3; // diversity fit window
    std::string output_csv;
    std::optional<std::string> output_plot;
};

/// Parses and validates; throws ConfigError / IoError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

struct RunResult {
    int exit_code; // 0 ok, 3 when any point errored
    long rows_written;
    long points_errored;
};

/// Executes the sweep and writes the CSV (and plot script when configured).
RunResult run(const RunConfig& config);

/// Writes a standalone matplotlib script rendering the CSV; validates the
/// CSV header for the scenario first.
void emit_plot_script(const std::string& csv_path, Scenario scenario,
                      const std::string& out_path);

/// Expected CSV header for a scenario (no spaces, comma separated).
std::string csv_header(Scenario scenario);

} // namespace nakprod::cli
