#include "nakprod/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nakprod::cli {

namespace {

std::vector<std::string> split_header(const std::string& line) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) cols.push_back(item);
    return cols;
}

} // namespace

void emit_plot_script(const std::string& csv_path, Scenario scenario,
                      const std::string& out_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw IoError("plot script: cannot open csv '" + csv_path + "'");
    std::string header_line;
    std::getline(csv, header_line);
    if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();
    const std::vector<std::string> have = split_header(header_line);
    for (const std::string& col : split_header(csv_header(scenario))) {
        if (std::find(have.begin(), have.end(), col) == have.end())
            throw ConfigError("plot script: csv '" + csv_path + "' is missing column '" + col +
                              "'");
    }

    namespace fs = std::filesystem;
    const fs::path script(out_path);
    fs::path rel = fs::proximate(fs::path(csv_path),
                                 script.has_parent_path() ? script.parent_path() : ".");

    const std::string coord = split_header(csv_header(scenario))[0];
    const bool log_y = scenario == Scenario::Op || scenario == Scenario::Aser ||
                       scenario == Scenario::Mgf;
    const std::string xlabel = scenario == Scenario::Pdf   ? "SNR value"
                               : scenario == Scenario::Mgf ? "s"
                                                           : "average SNR (dB)";

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw IoError("plot script: cannot open output '" + out_path + "'");
    out << "#!/usr/bin/env python3\n"
        << "# Renders the '" << to_string(scenario) << "' curves from " << rel.string() << "\n"
        << "import csv\n"
        << "import os\n"
        << "from collections import defaultdict\n"
        << "import matplotlib\n"
        << "matplotlib.use(\"Agg\")\n"
        << "import matplotlib.pyplot as plt\n"
        << "\n"
        << "here = os.path.dirname(os.path.abspath(__file__))\n"
        << "csv_path = os.path.join(here, \"" << rel.string() << "\")\n"
        << "groups = defaultdict(list)\n"
        << "errors = defaultdict(list)\n"
        << "with open(csv_path) as fh:\n"
        << "    for row in csv.DictReader(fh):\n"
        << "        if not row[\"flags\"].startswith(\"ok\"):\n"
        << "            continue  # never interpolate over errored points\n"
        << "        key = (row[\"method\"], row[\"n\"])\n"
        << "        groups[key].append((float(row[\"" << coord << "\"]), float(row[\"value\"])))\n"
        << "        errors[key].append(float(row[\"std_error\"]) if row[\"std_error\"] else 0.0)\n"
        << "\n"
        << "fig, ax = plt.subplots(figsize=(7, 5))\n"
        << "for (method, n), pts in sorted(groups.items()):\n"
        << "    order = sorted(range(len(pts)), key=lambda i: pts[i][0])\n"
        << "    xs = [pts[i][0] for i in order]\n"
        << "    ys = [pts[i][1] for i in order]\n"
        << "    es = [errors[(method, n)][i] for i in order]\n"
        << "    if method == \"mc\":\n"
        << "        ax.errorbar(xs, ys, yerr=es, fmt=\"o\", ms=3, capsize=2,\n"
        << "                    label=f\"{method} N={n}\")\n"
        << "    else:\n"
        << "        ax.plot(xs, ys, label=f\"{method} N={n}\")\n";
    if (log_y) out << "ax.set_yscale(\"log\")\n";
    out << "ax.set_xlabel(\"" << xlabel << "\")\n"
        << "ax.set_ylabel(\"" << to_string(scenario) << "\")\n"
        << "ax.grid(True, which=\"both\", alpha=0.3)\n"
        << "ax.legend(fontsize=8)\n"
        << "png = os.path.splitext(os.path.abspath(__file__))[0] + \".png\"\n"
        << "fig.savefig(png, dpi=150, bbox_inches=\"tight\")\n"
        << "print(png)\n";
    if (!out) throw IoError("plot script: failed writing '" + out_path + "'");
}

} // namespace nakprod::cli
