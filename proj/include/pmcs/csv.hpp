/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/engine.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pmcs::csv {

inline constexpr std::array<std::string_view, 18> kColumns = {
    "t_s",          "v_bat_V",      "soc",        "source",       "i_solar_A",      "i_usb_A",
    "i_charge_A",   "i_load_5v_A",  "i_batt_net_A", "latch_on",   "charger_mode",   "led_solar",
    "led_usb",      "p_loss_W",     "e_harvested_J", "e_consumed_J", "e_loss_J",    "events",
};

/// 9 significant digits, '.' separator, no grouping; locale independent.
std::string format_number(double v);

/// Streams steps as CSV rows. With stride N only every N-th step (and the
/// final one) is written; the events column of a written row carries every
/// event since the previous written row, in order.
class CsvWriter
{
public:
    CsvWriter(std::ostream& out, int stride);

    void add(const engine::SimStep& step);
    /// Writes the final step if the stride skipped it.
    void finish();

    long rows_written() const { return rows_; }

private:
    void write_row(const engine::SimStep& step);

    std::ostream& out_;
    int stride_;
    long index_ = 0;
    long rows_ = 0;
    bool last_written_ = true;
    std::string pending_events_;
    engine::SimStep last_{};
    std::string line_;
};

struct CsvRow
{
    double t_s = 0.0;
    double v_bat_V = 0.0;
    double soc = 0.0;
    double i_batt_net_A = 0.0;
    double e_harvested_J = 0.0;
    double e_consumed_J = 0.0;
    double e_loss_J = 0.0;
    std::array<int, kEventCount> event_counts{};
};

/// Parses and checks a CSV produced by CsvWriter. Throws FormatError.
std::vector<CsvRow> read_csv(std::istream& in);

/// Recomputes the report from CSV rows; each row stands for the time up to
/// the next row.
engine::Report report_from_rows(const std::vector<CsvRow>& rows, double threshold_V);

/// Human-readable report block printed by the CLI.
std::string format_report(const engine::Report& r);

} // namespace pmcs::csv
