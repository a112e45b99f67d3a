/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/csv.hpp"
#include "pmcs/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pmcs;
using namespace pmcs::engine;

namespace {

SimConfig busy_day()
{
    SimConfig c;
    c.battery.soc = 0.4;
    c.usb_windows = {{40000.0, 41000.0}};
    return c;
}

std::string to_csv(const SimConfig& c, int stride)
{
    std::ostringstream out;
    csv::CsvWriter w(out, stride);
    simulate(c, [&](const SimStep& s) { w.add(s); });
    w.finish();
    return out.str();
}

bool close6(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 || std::abs(a - b) <= 5e-6 * scale;
}

} // namespace

TEST_CASE("number format")
{
    CHECK(csv::format_number(0.0) == "0");
    CHECK(csv::format_number(-0.0) == "0");
    CHECK(csv::format_number(4.2) == "4.2");
    CHECK(csv::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(csv::format_number(123456789012.0) == "1.23456789e+11");
    CHECK(csv::format_number(-211e-6) == "-0.000211");
}

TEST_CASE("header is the fixed column list")
{
    std::ostringstream out;
    csv::CsvWriter w(out, 1);
    CHECK(out.str() ==
          "t_s,v_bat_V,soc,source,i_solar_A,i_usb_A,i_charge_A,i_load_5v_A,i_batt_net_A,latch_on,"
          "charger_mode,led_solar,led_usb,p_loss_W,e_harvested_J,e_consumed_J,e_loss_J,events\n");
}

TEST_CASE("two runs give identical bytes")
{
    const auto c = busy_day();
    CHECK(to_csv(c, 1) == to_csv(c, 1));
    CHECK(to_csv(c, 60) == to_csv(c, 60));
}

TEST_CASE("full-resolution round trip reproduces the report")
{
    const auto c = busy_day();
    const auto text = to_csv(c, 1);
    std::istringstream in(text);
    const auto rows = csv::read_csv(in);
    CHECK(rows.size() == 86400);
    const auto back = csv::report_from_rows(rows, c.threshold_V);
    const auto ref = run_report(c);
    CHECK(close6(back.min_v_bat_V, ref.min_v_bat_V));
    CHECK(close6(back.max_v_bat_V, ref.max_v_bat_V));
    CHECK(close6(back.min_soc, ref.min_soc));
    CHECK(close6(back.min_daily_avg_v_bat_V, ref.min_daily_avg_v_bat_V));
    CHECK(close6(back.e_harvested_J, ref.e_harvested_J));
    CHECK(close6(back.e_consumed_J, ref.e_consumed_J));
    CHECK(close6(back.e_loss_J, ref.e_loss_J));
    CHECK(close6(back.e_battery_J, ref.e_battery_J));
    CHECK(close6(back.avg_batt_power_W, ref.avg_batt_power_W));
    CHECK(back.self_sustainable == ref.self_sustainable);
    CHECK(back.total_captures == ref.total_captures);
    CHECK(back.wake_count == ref.wake_count);
    CHECK(back.brownout_count == ref.brownout_count);
    CHECK(back.charge_full_count == ref.charge_full_count);
    CHECK(back.steps == ref.steps);
    CHECK(back.duration_s == ref.duration_s);
    CHECK(back.relative_residual() <= 1e-6);
}

TEST_CASE("decimated rows keep every event")
{
    const auto c = busy_day();
    const auto text = to_csv(c, 60);
    std::istringstream in(text);
    const auto rows = csv::read_csv(in);
    CHECK(rows.size() == 86400 / 60 + 1);  // plus the final step
    CHECK(rows.back().t_s == 86399.0);
    const auto back = csv::report_from_rows(rows, c.threshold_V);
    const auto ref = run_report(c);
    CHECK(back.wake_count == ref.wake_count);
    CHECK(back.total_captures == ref.total_captures);
    CHECK(back.charge_full_count == ref.charge_full_count);
    CHECK(back.e_harvested_J == doctest::Approx(ref.e_harvested_J).epsilon(1e-8));
    CHECK(back.e_consumed_J == doctest::Approx(ref.e_consumed_J).epsilon(1e-8));
}

TEST_CASE("malformed CSV is rejected")
{
    auto bad = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(csv::read_csv(in), FormatError);
    };
    bad("");
    bad("t_s,v_bat_V\n1,2\n");
    const auto good = to_csv(busy_day(), 3600);
    const auto header = good.substr(0, good.find('\n') + 1);
    bad(header);                                    // no rows
    bad(header + "0,4.1,0.5\n");                    // short row
    std::string row = good.substr(header.size(), good.find('\n', header.size()) - header.size() + 1);
    bad(header + "x" + row.substr(1));              // not a number
    bad(header + row + row);                        // time does not advance
    bad(header + row.substr(0, row.size() - 1) + "NOT_AN_EVENT\n");
    std::istringstream ok(good);
    CHECK_NOTHROW(csv::read_csv(ok));
}

TEST_CASE("report text")
{
    auto r = run_report(busy_day());
    const auto text = csv::format_report(r);
    CHECK(text.find("min_v_bat_V: ") != std::string::npos);
    CHECK(text.find("energy_residual_J: ") != std::string::npos);
    r.min_v_bat_V = 4.0321;
    r.threshold_V = 4.0;
    r.self_sustainable = true;
    CHECK(csv::format_report(r).find("self_sustainable: true (min 4.032 V ≥ 4.00 V)") != std::string::npos);
    r.self_sustainable = false;
    CHECK(csv::format_report(r).find("self_sustainable: false") != std::string::npos);
}
