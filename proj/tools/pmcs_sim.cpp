/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// pmcs_sim simulate --config FILE --out FILE [--stride N] [--threshold-v V]
// pmcs_sim report --csv FILE [--threshold-v V]
//
// Exit codes: 0 ok, 2 invalid config / malformed CSV / usage, 3 I/O failure.

#include "pmcs/csv.hpp"
#include "pmcs/engine.hpp"
#include "pmcs/errors.hpp"
#include "pmcs/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

int cmd_simulate(const std::string& config_path, const std::string& out_path, std::optional<int> stride,
                 std::optional<double> threshold_V)
{
    pmcs::engine::SimConfig cfg;
    try {
        cfg = pmcs::scenario::load_scenario(config_path);
    } catch (const pmcs::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pmcs::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalid;
    }
    if (threshold_V)
        cfg.threshold_V = *threshold_V;
    const int row_stride = stride ? *stride : cfg.output_stride;
    if (row_stride < 1) {
        std::cerr << "invalid config: --stride must be >= 1\n";
        return kExitInvalid;
    }

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return kExitIo;
    }

    pmcs::csv::CsvWriter writer(out, row_stride);
    pmcs::engine::ReportBuilder report;
    try {
        pmcs::engine::simulate(cfg, [&](const pmcs::engine::SimStep& s) {
            writer.add(s);
            report.add(s);
        });
    } catch (const pmcs::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalid;
    }
    writer.finish();
    if (!out) {
        std::cerr << "error: write to " << out_path << " failed\n";
        return kExitIo;
    }
    std::cout << pmcs::csv::format_report(report.finish(cfg.threshold_V));
    return kExitOk;
}

int cmd_report(const std::string& csv_path, double threshold_V)
{
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << csv_path << '\n';
        return kExitIo;
    }
    try {
        const auto rows = pmcs::csv::read_csv(in);
        std::cout << pmcs::csv::format_report(pmcs::csv::report_from_rows(rows, threshold_V));
    } catch (const pmcs::FormatError& e) {
        std::cerr << "malformed CSV: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Solar/USB power-management board simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int stride = 60;
    double sim_threshold = 4.0;
    auto* sim = app.add_subcommand("simulate", "run a scenario file and write the CSV trace");
    sim->add_option("--config", config_path, "scenario file")->required();
    sim->add_option("--out", out_path, "CSV output path")->required();
    auto* stride_opt = sim->add_option("--stride", stride, "write every N-th step (default: scenario value, 60)");
    auto* sim_thr_opt = sim->add_option("--threshold-v", sim_threshold, "self-sustainability threshold");

    std::string csv_path;
    double threshold = 4.0;
    auto* rep = app.add_subcommand("report", "recompute the report from a CSV trace");
    auto* csv_opt = rep->add_option("--csv", csv_path, "CSV written by simulate");
    auto* csv_pos = rep->add_option("csv_file", csv_path, "CSV written by simulate");
    csv_opt->excludes(csv_pos);
    rep->add_option("--threshold-v", threshold, "self-sustainability threshold")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    if (*sim) {
        return cmd_simulate(config_path, out_path,
                            stride_opt->count() ? std::optional<int>(stride) : std::nullopt,
                            sim_thr_opt->count() ? std::optional<double>(sim_threshold) : std::nullopt);
    }
    if (csv_path.empty()) {
        std::cerr << "report: a CSV path is required\n";
        return kExitInvalid;
    }
    return cmd_report(csv_path, threshold);
}
