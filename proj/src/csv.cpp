/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/csv.hpp"

#include "pmcs/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace pmcs::csv {

std::string format_number(double v)
{
    if (v == 0.0)
        v = 0.0;  // no "-0"
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, int stride) : out_(out), stride_(stride < 1 ? 1 : stride)
{
    for (std::size_t k = 0; k < kColumns.size(); ++k) {
        if (k)
            out_ << ',';
        out_ << kColumns[k];
    }
    out_ << '\n';
}

void CsvWriter::add(const engine::SimStep& step)
{
    const std::string ev = step.events.to_string();
    if (!ev.empty()) {
        if (!pending_events_.empty())
            pending_events_ += ';';
        pending_events_ += ev;
    }
    if (index_ % stride_ == 0) {
        write_row(step);
        last_written_ = true;
    } else {
        last_ = step;
        last_written_ = false;
    }
    ++index_;
}

void CsvWriter::finish()
{
    if (!last_written_) {
        write_row(last_);
        last_written_ = true;
    }
    out_.flush();
}

void CsvWriter::write_row(const engine::SimStep& s)
{
    auto& l = line_;
    l.clear();
    auto num = [&](double v) {
        l += format_number(v);
        l += ',';
    };
    auto str = [&](std::string_view v) {
        l += v;
        l += ',';
    };
    num(s.t_s);
    num(s.v_bat_V);
    num(s.soc);
    str(harvest::to_string(s.source));
    num(s.i_solar_A);
    num(s.i_usb_A);
    num(s.i_charge_A);
    num(s.i_load_5v_A);
    num(s.i_batt_net_A);
    str(s.latch_on ? "1" : "0");
    str(engine::to_string(s.charger_mode));
    str(harvest::to_string(s.led_solar));
    str(usb::to_string(s.led_usb));
    num(s.p_loss_W);
    num(s.e_harvested_J);
    num(s.e_consumed_J);
    num(s.e_loss_J);
    l += pending_events_;
    l += '\n';
    out_ << l;
    pending_events_.clear();
    ++rows_;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> f;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        f.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return f;
}

double field_number(std::string_view text, long line_no, std::string_view column)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw FormatError("line " + std::to_string(line_no) + ": column " + std::string(column) +
                          " is not a number");
    return v;
}

} // namespace

std::vector<CsvRow> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty CSV: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split_fields(line);
    if (header.size() != kColumns.size())
        throw FormatError("header has " + std::to_string(header.size()) + " columns, expected 18");
    for (std::size_t k = 0; k < kColumns.size(); ++k)
        if (header[k] != kColumns[k])
            throw FormatError("header column " + std::to_string(k + 1) + " is '" + std::string(header[k]) +
                              "', expected '" + std::string(kColumns[k]) + "'");

    std::vector<CsvRow> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != kColumns.size())
            throw FormatError("line " + std::to_string(line_no) + ": expected 18 fields, got " +
                              std::to_string(f.size()));
        CsvRow r;
        r.t_s = field_number(f[0], line_no, kColumns[0]);
        r.v_bat_V = field_number(f[1], line_no, kColumns[1]);
        r.soc = field_number(f[2], line_no, kColumns[2]);
        r.i_batt_net_A = field_number(f[8], line_no, kColumns[8]);
        r.e_harvested_J = field_number(f[14], line_no, kColumns[14]);
        r.e_consumed_J = field_number(f[15], line_no, kColumns[15]);
        r.e_loss_J = field_number(f[16], line_no, kColumns[16]);
        for (auto tok : split_fields(f[17].empty() ? std::string_view{} : f[17])) {
            if (tok.empty())
                continue;
            // events are ';'-joined inside the last column
            std::size_t pos = 0;
            while (pos <= tok.size()) {
                const auto semi = tok.find(';', pos);
                auto t = tok.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
                if (!t.empty()) {
                    auto e = parse_event(t);
                    if (!e)
                        throw FormatError("line " + std::to_string(line_no) + ": unknown event '" +
                                          std::string(t) + "'");
                    ++r.event_counts[static_cast<std::size_t>(*e)];
                }
                if (semi == std::string_view::npos)
                    break;
                pos = semi + 1;
            }
        }
        if (!rows.empty() && !(r.t_s > rows.back().t_s))
            throw FormatError("line " + std::to_string(line_no) + ": t_s must increase");
        rows.push_back(r);
    }
    if (rows.empty())
        throw FormatError("CSV has no data rows");
    return rows;
}

engine::Report report_from_rows(const std::vector<CsvRow>& rows, double threshold_V)
{
    engine::ReportBuilder b;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        engine::ReportSample s;
        s.t_s = r.t_s;
        if (k + 1 < rows.size())
            s.dt_s = rows[k + 1].t_s - r.t_s;
        else if (k > 0)
            s.dt_s = r.t_s - rows[k - 1].t_s;
        s.v_bat_V = r.v_bat_V;
        s.soc = r.soc;
        s.i_batt_net_A = r.i_batt_net_A;
        s.e_harvested_J = r.e_harvested_J;
        s.e_consumed_J = r.e_consumed_J;
        s.e_loss_J = r.e_loss_J;
        s.event_counts = r.event_counts;
        b.add(s);
    }
    return b.finish(threshold_V);
}

std::string format_report(const engine::Report& r)
{
    std::string out;
    auto line = [&](std::string_view key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    auto num = [](double v) { return format_number(v); };
    line("steps", std::to_string(r.steps));
    line("duration_s", num(r.duration_s));
    line("min_v_bat_V", num(r.min_v_bat_V));
    line("max_v_bat_V", num(r.max_v_bat_V));
    line("min_daily_avg_v_bat_V", num(r.min_daily_avg_v_bat_V));
    line("min_soc", num(r.min_soc));
    line("total_captures", std::to_string(r.total_captures));
    line("wake_count", std::to_string(r.wake_count));
    line("charge_full_count", std::to_string(r.charge_full_count));
    line("brownout_count", std::to_string(r.brownout_count));
    line("load_shed_count", std::to_string(r.load_shed_count));
    line("fault_count", std::to_string(r.fault_count));
    line("e_harvested_J", num(r.e_harvested_J));
    line("e_consumed_J", num(r.e_consumed_J));
    line("e_loss_J", num(r.e_loss_J));
    line("e_battery_J", num(r.e_battery_J));
    line("avg_batt_power_W", num(r.avg_batt_power_W));
    line("energy_residual_J", num(r.energy_residual_J) + " (relative " + num(r.relative_residual()) + ")");

    char verdict[128];
    std::snprintf(verdict, sizeof verdict, "%s (min %.3f V %s %.2f V)", r.self_sustainable ? "true" : "false",
                  r.min_v_bat_V, r.self_sustainable ? "≥" : "<", r.threshold_V);
    line("self_sustainable", verdict);
    return out;
}

} // namespace pmcs::csv
