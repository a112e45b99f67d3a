/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/engine.hpp"
#include "pmcs/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace pmcs;
using namespace pmcs::engine;

namespace {

SimConfig dark_sleep()
{
    SimConfig c;
    c.battery.soc = 0.5;  // 3.7 V rested
    c.irradiance.kind = harvest::IrradianceKind::Constant;
    c.irradiance.peak_fraction = 0.0;
    c.rtc.enabled = false;
    return c;
}

SimConfig one_day()
{
    SimConfig c;
    c.battery.soc = 0.8;
    return c;
}

long count(const std::vector<SimStep>& s, Event e)
{
    long n = 0;
    for (const auto& x : s)
        n += x.events.has(e) ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("sleep-only day draws the quiescent floor")
{
    const auto steps = simulate(dark_sleep());
    REQUIRE(steps.size() == 86400);
    const auto r = summarize(steps, 4.0);
    CHECK(r.avg_batt_current_A == doctest::Approx(-211e-6).epsilon(1e-9));
    CHECK(-r.avg_batt_power_W * 1e6 == doctest::Approx(780.7).epsilon(1.0 / 780.7));
    CHECK(r.e_consumed_J == doctest::Approx(67.4).epsilon(0.002));
    CHECK(r.e_harvested_J == 0.0);
    // 211 uA for 24 h is 18.23 C out of 36000 C
    CHECK((0.5 - steps.back().soc) * 36000.0 == doctest::Approx(18.2304).epsilon(1e-3));
    CHECK(r.relative_residual() <= 1e-6);
    CHECK(r.brownout_count == 0);
    CHECK(r.wake_count == 0);
}

TEST_CASE("tripped pack with no load and no sun stays put")
{
    auto c = dark_sleep();
    c.battery.protection.discharge_enabled = false;
    c.battery.protection.fault = battery::Fault::OverDischarge;
    const auto steps = simulate(c);
    for (const auto& s : steps) {
        CHECK(s.soc == 0.5);
        CHECK(s.i_batt_net_A == 0.0);
        CHECK(s.events.has(Event::BatteryDisconnected));
    }
}

TEST_CASE("each wake runs one boot, capture and shutdown")
{
    const auto steps = simulate(one_day());
    const long wakes = count(steps, Event::LatchOn);
    CHECK(wakes == 23);  // 06:30 .. 17:30 every 30 min
    CHECK(count(steps, Event::Boot) == wakes);
    CHECK(count(steps, Event::CaptureStart) == wakes);
    CHECK(count(steps, Event::ShutdownRequest) == wakes);
    CHECK(count(steps, Event::LatchOff) == wakes);
    CHECK(count(steps, Event::RtcPulse) == wakes);
    // armed at sunrise, so only the evening pulses are masked
    CHECK(count(steps, Event::RtcPulseMasked) == 12);

    // first wake lands on sunrise
    for (const auto& s : steps)
        if (s.events.has(Event::LatchOn)) {
            CHECK(s.t_s == 23400.0);
            break;
        }

    // the on-window is boot + capture + shutdown hold
    long on_steps = 0;
    for (const auto& s : steps)
        on_steps += s.latch_on ? 1 : 0;
    CHECK(on_steps == wakes * (5 + 25 + 3));
}

TEST_CASE("latch off means no 5 V load")
{
    for (const auto& s : simulate(one_day()))
        if (!s.latch_on)
            CHECK(s.i_load_5v_A == 0.0);
}

TEST_CASE("clear day conserves energy and respects limits")
{
    auto c = one_day();
    c.battery.soc = 0.3;
    const auto steps = simulate(c);
    const auto r = summarize(steps, 4.0);
    CHECK(r.relative_residual() <= 1e-6);
    CHECK(r.e_harvested_J > 0.0);
    bool saw_cc = false;
    for (const auto& s : steps) {
        CHECK(s.soc >= 0.0);
        CHECK(s.soc <= 1.0);
        CHECK(s.v_bat_V >= 2.4);
        CHECK(s.v_bat_V <= 4.2 + 2.0 * c.battery.r_internal_ohm + 1e-9);
        CHECK(s.ocv_V <= 4.2);
        CHECK(s.i_charge_A <= 2.0 + 1e-12);
        saw_cc |= s.charger_mode == ChargerMode::CC;
    }
    CHECK(saw_cc);
}

TEST_CASE("USB wins while both inputs are present")
{
    auto c = one_day();
    c.battery.soc = 0.4;
    c.usb.p_usb_W = 15.0;
    c.usb_windows = {{36000.0, 43200.0}};
    const auto steps = simulate(c);
    long both = 0;
    for (const auto& s : steps) {
        if (s.solar_present && s.usb_present) {
            ++both;
            CHECK(s.source == harvest::InputSource::Usb);
            CHECK(s.i_solar_A == 0.0);
        }
    }
    CHECK(both == 7200);
    CHECK(count(steps, Event::SourceChange) >= 2);
    CHECK(summarize(steps, 4.0).relative_residual() <= 1e-6);
    bool usb_cc = false;
    for (const auto& s : steps)
        if (s.source == harvest::InputSource::Usb && s.charger_mode == ChargerMode::CC)
            usb_cc |= std::abs(s.i_charge_A - 2.65) < 1e-12;
    CHECK(usb_cc);
}

TEST_CASE("empty pack at night browns out")
{
    auto c = dark_sleep();
    c.battery.soc = 0.0005;
    c.rtc.enabled = true;
    c.rtc.gate_to_schedule = false;
    c.rtc.first_wake_s = 600.0;
    const auto steps = simulate(c);
    const auto r = summarize(steps, 4.0);
    CHECK(r.brownout_count >= 1);
    CHECK(r.fault_count >= 1);
    CHECK_FALSE(r.self_sustainable);
    CHECK(r.relative_residual() <= 1e-6);
    for (const auto& s : steps) {
        CHECK(s.soc >= 0.0);
        if (s.events.has(Event::Brownout)) {
            CHECK(s.i_load_5v_A == 0.0);
            CHECK(s.i_charge_A == 0.0);
        }
    }
}

TEST_CASE("protection reset restores discharge")
{
    auto c = dark_sleep();
    c.battery.protection.discharge_enabled = false;
    c.battery.protection.fault = battery::Fault::OverDischarge;
    c.protection_reset_times_s = {100.0};
    const auto steps = simulate(c);
    CHECK(steps[99].i_batt_net_A == 0.0);
    CHECK(steps[100].events.has(Event::ProtectionReset));
    CHECK(steps[100].i_batt_net_A < 0.0);
}

TEST_CASE("scripted presses drive the latch")
{
    auto c = dark_sleep();
    c.load.auto_shutdown = false;
    c.presses = {{1000.0, 0.5}, {2000.0, 4.0}};
    const auto steps = simulate(c);
    // switches on at the release
    CHECK_FALSE(steps[1000].latch_on);
    CHECK(steps[1000].events.has(Event::ButtonPress));
    CHECK(steps[1001].latch_on);
    CHECK(steps[1001].events.has(Event::LatchOn));
    CHECK(steps[1999].latch_on);
    CHECK(steps[2001].latch_on);
    CHECK_FALSE(steps[2002].latch_on);  // 3 s held
    CHECK(count(steps, Event::LatchOn) == 1);
    CHECK(count(steps, Event::LatchOff) == 1);
}

TEST_CASE("shutdown line request turns the device off")
{
    auto c = dark_sleep();
    c.load.auto_shutdown = false;
    c.latch_on_at_start = true;
    c.shutdown_times_s = {500.0};
    const auto steps = simulate(c);
    CHECK(steps[0].latch_on);
    CHECK(steps[501].latch_on);
    CHECK_FALSE(steps[502].latch_on);
}

TEST_CASE("report over a single step")
{
    const auto steps = simulate(dark_sleep());
    const std::vector<SimStep> one = {steps[10]};
    const auto r = summarize(one, 4.0);
    CHECK(r.min_v_bat_V == one[0].v_bat_V);
    CHECK(r.max_v_bat_V == one[0].v_bat_V);
    CHECK(r.steps == 1);
    CHECK_THROWS_AS(summarize(std::vector<SimStep>{}, 4.0), DomainError);
    CHECK_THROWS_AS(ledger_residual(std::vector<SimStep>{}), DomainError);
}

TEST_CASE("streaming report equals the collected one")
{
    auto c = one_day();
    c.battery.soc = 0.35;
    c.usb_windows = {{50000.0, 52000.0}};
    CHECK(run_report(c) == summarize(simulate(c), c.threshold_V));
}

TEST_CASE("config validation names the field")
{
    SimConfig c;
    c.dt_s = 0.0;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "sim.dt_s");
    }
    c = SimConfig{};
    c.dt_s = 4000.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = SimConfig{};
    c.usb.p_usb_W = 20.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(simulate(c), ConfigError);
}
