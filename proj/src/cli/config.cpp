#include "nakprod/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace nakprod::cli {

using nlohmann::json;

Scenario scenario_from_string(const std::string& name) {
    if (name == "pdf") return Scenario::Pdf;
    if (name == "op") return Scenario::Op;
    if (name == "aser") return Scenario::Aser;
    if (name == "mgf") return Scenario::Mgf;
    if (name == "diversity") return Scenario::Diversity;
    throw ConfigError("unknown scenario '" + name + "' (expected pdf|op|aser|mgf|diversity)");
}

std::string to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::Pdf: return "pdf";
        case Scenario::Op: return "op";
        case Scenario::Aser: return "aser";
        case Scenario::Mgf: return "mgf";
        case Scenario::Diversity: return "diversity";
    }
    return "?";
}

namespace {

const json& require_field(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

double positive_number(const json& v, const char* key) {
    if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!(d > 0.0)) throw ConfigError(std::string("field '") + key + "' must be positive");
    return d;
}

GridSpec parse_grid(const json& v, const char* key) {
    GridSpec g{};
    g.min = require_field(v, "min", key).get<double>();
    g.max = require_field(v, "max", key).get<double>();
    g.points = require_field(v, "points", key).get<int>();
    if (!(g.max > g.min)) throw ConfigError(std::string(key) + ": max must exceed min");
    if (g.points < 2) throw ConfigError(std::string(key) + ": points must be >= 2");
    return g;
}

const std::set<std::string>& methods_for(Scenario s) {
    static const std::set<std::string> op = {"exact", "series", "upper", "clt", "gamma", "mc"};
    static const std::set<std::string> pdf = {"exact", "series", "asymptotic",
                                              "clt",   "gamma",  "mc"};
    static const std::set<std::string> mgf = {"exact", "series", "upper", "mc"};
    static const std::set<std::string> div = {"exact", "upper", "analytic"};
    switch (s) {
        case Scenario::Pdf: return pdf;
        case Scenario::Mgf: return mgf;
        case Scenario::Diversity: return div;
        default: return op;
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");

    RunConfig cfg;
    cfg.version = require_field(root, "version", "config").get<int>();
    if (cfg.version != 1)
        throw ConfigError("unsupported config version " + std::to_string(cfg.version));
    cfg.scenario = scenario_from_string(require_field(root, "scenario", "config").get<std::string>());

    const json& model = require_field(root, "model", "config");
    const json& n_field = require_field(model, "elements_n", "model");
    if (n_field.is_array()) {
        for (const auto& v : n_field) cfg.model.elements_n.push_back(v.get<int>());
    } else {
        cfg.model.elements_n.push_back(n_field.get<int>());
    }
    if (cfg.model.elements_n.empty()) throw ConfigError("model.elements_n must be non-empty");
    for (int n : cfg.model.elements_n)
        if (n < 1) throw ConfigError("model.elements_n entries must be >= 1");
    cfg.model.antennas_m = model.value("antennas_m", 1);
    if (cfg.model.antennas_m < 1) throw ConfigError("model.antennas_m must be >= 1");
    cfg.model.m_si = positive_number(require_field(model, "m_si", "model"), "m_si");
    cfg.model.omega_si = positive_number(require_field(model, "omega_si", "model"), "omega_si");
    cfg.model.m_id = positive_number(require_field(model, "m_id", "model"), "m_id");
    cfg.model.omega_id = positive_number(require_field(model, "omega_id", "model"), "omega_id");
    if (cfg.model.m_si < cfg.model.m_id)
        throw ConfigError("model requires m_si >= m_id");
    if (model.contains("direct") && !model["direct"].is_null()) {
        const json& d = model["direct"];
        cfg.model.direct = {positive_number(require_field(d, "m_sd", "model.direct"), "m_sd"),
                            positive_number(require_field(d, "omega_sd", "model.direct"),
                                            "omega_sd")};
    }

    const json& methods = require_field(root, "methods", "config");
    if (!methods.is_array() || methods.empty())
        throw ConfigError("methods must be a non-empty array");
    for (const auto& m : methods) {
        const std::string name = m.get<std::string>();
        if (!methods_for(cfg.scenario).count(name))
            throw ConfigError("method '" + name + "' is not valid for scenario '" +
                              to_string(cfg.scenario) + "'");
        cfg.methods.push_back(name);
    }
    if (cfg.scenario == Scenario::Pdf || cfg.scenario == Scenario::Mgf) {
        for (const auto& m : cfg.methods)
            if ((m == "series" || m == "asymptotic") && cfg.model.direct)
                throw ConfigError("method '" + m +
                                  "' requires the reflected-only model (no direct block)");
    }

    const bool needs_rho_grid = cfg.scenario == Scenario::Op || cfg.scenario == Scenario::Aser ||
                                cfg.scenario == Scenario::Diversity;
    if (needs_rho_grid) {
        const json& grid = require_field(root, "rho_grid_db", "config");
        if (!grid.is_array() || grid.empty())
            throw ConfigError("rho_grid_db must be a non-empty array");
        for (const auto& v : grid) cfg.rho_grid_db.push_back(v.get<double>());
        for (std::size_t i = 1; i < cfg.rho_grid_db.size(); ++i)
            if (!(cfg.rho_grid_db[i] > cfg.rho_grid_db[i - 1]))
                throw ConfigError("rho_grid_db must be strictly increasing");
    } else {
        cfg.rho_db = require_field(root, "rho_db", "config").get<double>();
    }

    if (cfg.scenario == Scenario::Op || cfg.scenario == Scenario::Diversity)
        cfg.gamma_th_db = require_field(root, "gamma_th_db", "config").get<double>();

    if (cfg.scenario == Scenario::Aser) {
        const json& mod = require_field(root, "modulation", "config");
        cfg.modulation = require_field(mod, "name", "modulation").get<std::string>();
        if (mod.contains("m")) cfg.modulation_size = mod["m"].get<int>();
        // resolve now so bad names fail at validation time
        ModulationSpec::by_name(*cfg.modulation, cfg.modulation_size);
    }

    if (cfg.scenario == Scenario::Pdf) {
        cfg.x_grid = parse_grid(require_field(root, "x_grid", "config"), "x_grid");
        if (cfg.x_grid->min != 0.0)
            throw ConfigError("x_grid.min must be 0 for the pdf scenario (density bins)");
    }
    if (cfg.scenario == Scenario::Mgf) {
        cfg.s_grid = parse_grid(require_field(root, "s_grid", "config"), "s_grid");
        if (!(cfg.s_grid->min > 0.0)) throw ConfigError("s_grid.min must be positive");
    }

    if (root.contains("series")) {
        const json& s = root["series"];
        cfg.series.order = s.value("order_i", cfg.series.order);
        if (cfg.series.order < 0 || cfg.series.order > 8)
            throw ConfigError("series.order_i must be in [0, 8]");
        cfg.series.epsilon_offset = s.value("epsilon_offset", cfg.series.epsilon_offset);
        if (!(cfg.series.epsilon_offset > 0.0))
            throw ConfigError("series.epsilon_offset must be positive");
        cfg.series.average_pm = s.value("average_pm", cfg.series.average_pm);
    }

    if (root.contains("mc")) {
        const json& m = root["mc"];
        cfg.mc.master_seed = m.value("master_seed", cfg.mc.master_seed);
        cfg.mc.trials = m.value("trials", cfg.mc.trials);
        if (cfg.mc.trials < 100) throw ConfigError("mc.trials must be >= 100");
        cfg.mc.workers = m.value("workers", cfg.mc.workers);
    }

    cfg.regime_threshold = root.value("regime_threshold", cfg.regime_threshold);
    if (!(cfg.regime_threshold > 0.0))
        throw ConfigError("regime_threshold must be positive");

    const json& output = require_field(root, "output", "config");
    cfg.output_csv = require_field(output, "csv", "output").get<std::string>();
    if (cfg.output_csv.empty()) throw ConfigError("output.csv must be non-empty");
    if (output.contains("plot_script"))
        cfg.output_plot = output["plot_script"].get<std::string>();

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace nakprod::cli
