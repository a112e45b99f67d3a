/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/errors.hpp"
#include "pmcs/scenario.hpp"

#include <doctest.h>

#include <string>

using namespace pmcs;
using pmcs::scenario::parse_scenario;

namespace {

std::string field_of(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

constexpr const char* kMinimal = "[sim]\ndt_s = 1\n[battery]\n";

} // namespace

TEST_CASE("minimal scenario takes defaults")
{
    const auto c = parse_scenario(kMinimal);
    CHECK(c.dt_s == 1.0);
    CHECK(c.duration_days == 1);
    CHECK(c.battery.capacity_Ah == 10.0);
    CHECK(c.panel.p_rated_W == 5.0);
    CHECK(c.output_stride == 60);
}

TEST_CASE("full scenario binds every section")
{
    const char* text = R"(# comment line
[sim]
dt_s = 0.5          # trailing comment
duration_days = 2
threshold_v = 3.9
output_stride = 10
latch_on_at_start = true

[battery]
capacity_ah = 5
soc_initial = 0.6
r_internal_ohm = 0.08
reset_times_s = 100, 200
ocv_soc = 0, 0.5, 1
ocv_v = 3.0, 3.7, 4.2

[panel]
p_rated_w = 10
k_mppt = 0.9

[irradiance]
kind = trace
trace_t_s = 30000, 40000
trace_fraction = 0.0, 1.0

[solar_charger]
jumper_3a = true
reverse_polarity_windows_s = 1000:2000

[usb]
p_usb_w = 12.5
present_windows_s = 10:20, 30:40

[load]
i_capture_a = 0.5
sensors_enabled = false

[schedule]
capture_interval_s = 3600

[rtc]
wake_period_s = 3600
first_wake_s = 25000
gate_to_schedule = false

[adc]
r_total_ohm = 100000

[buttons]
t_long_s = 2
presses = 5:0.2, 50:3.5

[shutdown]
t_shutdown_s = 4
times_s = 70
)";
    const auto c = parse_scenario(text);
    CHECK(c.dt_s == 0.5);
    CHECK(c.duration_days == 2);
    CHECK(c.schedule.day_count == 2);
    CHECK(c.threshold_V == 3.9);
    CHECK(c.output_stride == 10);
    CHECK(c.latch_on_at_start);
    CHECK(c.battery.capacity_Ah == 5.0);
    CHECK(c.battery.ocv_anchors.size() == 3);
    CHECK(c.protection_reset_times_s.size() == 2);
    CHECK(c.panel.k_mppt == 0.9);
    CHECK(c.irradiance.kind == harvest::IrradianceKind::Trace);
    CHECK(c.irradiance.trace.size() == 2);
    CHECK(c.solar_charger.jumper_3A);
    CHECK(c.reverse_polarity_windows.size() == 1);
    CHECK(c.usb.p_usb_W == 12.5);
    REQUIRE(c.usb_windows.size() == 2);
    CHECK(c.usb_windows[1].start_s == 30.0);
    CHECK(c.load.model.i_capture_5v_A == 0.5);
    CHECK_FALSE(c.load.sensors_enabled);
    CHECK(*c.rtc.wake_period_s == 3600.0);
    CHECK_FALSE(c.rtc.gate_to_schedule);
    CHECK(c.adc.divider.r_total_ohm == 100000.0);
    CHECK(c.latch.t_long_s == 2.0);
    REQUIRE(c.presses.size() == 2);
    CHECK(c.presses[1].duration_s == 3.5);
    CHECK(c.latch.t_shutdown_s == 4.0);
    CHECK(c.shutdown_times_s.size() == 1);
}

TEST_CASE("required sections")
{
    CHECK(field_of("[sim]\ndt_s = 1\n") == "battery");
    CHECK(field_of("[battery]\n") == "sim");
    try {
        parse_scenario("[sim]\n");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("[battery]") != std::string::npos);
    }
}

TEST_CASE("fail-closed on unknown or malformed input")
{
    CHECK(field_of(std::string(kMinimal) + "capacity_wh = 3\n") == "battery.capacity_wh");
    CHECK(field_of(std::string(kMinimal) + "[weather]\n") == "weather");
    CHECK(field_of(std::string(kMinimal) + "Capacity_Ah = 3\n") == "battery.Capacity_Ah");
    CHECK(field_of(std::string(kMinimal) + "capacity_ah = ten\n") == "battery.capacity_ah");
    CHECK(field_of(std::string(kMinimal) + "capacity_ah = 1\ncapacity_ah = 2\n") == "battery.capacity_ah");
    CHECK(field_of(std::string(kMinimal) + "[sim]\n") == "sim");
    CHECK(field_of("dt_s = 1\n[sim]\n[battery]\n") == "dt_s");
    CHECK(field_of(std::string(kMinimal) + "just words\n") == "battery");
    CHECK(field_of("[sim]\nlatch_on_at_start = yes\n[battery]\n") == "sim.latch_on_at_start");
    CHECK(field_of("[sim]\nduration_days = 1.5\n[battery]\n") == "sim.duration_days");
    CHECK(field_of(std::string(kMinimal) + "[irradiance]\nkind = cloudy\n") == "irradiance.kind");
    CHECK(field_of(std::string(kMinimal) + "[usb]\npresent_windows_s = 10\n") == "usb.present_windows_s");
}

TEST_CASE("values are validated after binding")
{
    CHECK(field_of("[sim]\ndt_s = 0\n[battery]\n") == "sim.dt_s");
    CHECK(field_of("[sim]\n[battery]\nsoc_initial = 1.2\n") == "battery.soc_initial");
    CHECK(field_of("[sim]\n[battery]\n[usb]\np_usb_w = 16\n") == "usb.p_usb_w");
    CHECK(field_of("[sim]\n[battery]\nocv_soc = 0, 1\n") == "battery.ocv_v");
}

TEST_CASE("missing file is an I/O error")
{
    CHECK_THROWS_AS(scenario::load_scenario("/nonexistent/dir/x.scn"), IoError);
}
