/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/errors.hpp"
#include "pmcs/load.hpp"

#include <doctest.h>

using namespace pmcs;
using namespace pmcs::load;

TEST_CASE("wake schedule over a day")
{
    DutyCycleSchedule s;
    s.sunrise_s = 6 * 3600.0;
    s.sunset_s = 17 * 3600.0;
    auto ev = schedule_events(s, 0);
    CHECK(ev.size() == 23);
    CHECK(ev.front() == 6 * 3600.0);
    CHECK(ev.back() == 17 * 3600.0);

    s.sunrise_s = 7 * 3600.0;
    s.sunset_s = 16.5 * 3600.0;
    CHECK(schedule_events(s, 0).size() == 20);

    s.sunset_s = s.sunrise_s + 600.0;
    CHECK(schedule_events(s, 0).size() == 1);
}

TEST_CASE("schedule days are offset by 24 h")
{
    DutyCycleSchedule s;
    s.day_count = 3;
    const auto d0 = schedule_events(s, 0);
    const auto d2 = schedule_events(s, 2);
    REQUIRE(d0.size() == d2.size());
    for (std::size_t k = 0; k < d0.size(); ++k)
        CHECK(d2[k] == doctest::Approx(d0[k] + 2 * 86400.0));
    CHECK_THROWS_AS(schedule_events(s, 3), DomainError);
    CHECK_THROWS_AS(schedule_events(s, -1), DomainError);
}

TEST_CASE("capture window")
{
    DutyCycleSchedule s;
    CHECK(in_capture_window(s, s.sunrise_s));
    CHECK(in_capture_window(s, s.sunset_s));
    CHECK_FALSE(in_capture_window(s, s.sunrise_s - 1.0));
    CHECK_FALSE(in_capture_window(s, s.sunset_s + 1.0));
}

TEST_CASE("load currents per phase")
{
    LoadModel m;
    auto c = load_current_at(LoadPhase::Sleep, m, true);
    CHECK(c.i_5v_A == 0.0);
    CHECK(c.i_batt_side_extra_A == doctest::Approx(211e-6));
    CHECK(c.i_batt_side_extra_A * 3.7 == doctest::Approx(780.7e-6));

    c = load_current_at(LoadPhase::Off, m, true, false);
    CHECK(c.i_5v_A == 0.0);
    CHECK(c.i_batt_side_extra_A == 0.0);

    CHECK(load_current_at(LoadPhase::Boot, m, true).i_5v_A == doctest::Approx(0.25));
    CHECK(load_current_at(LoadPhase::Capture, m, true).i_5v_A == doctest::Approx(0.412));
    CHECK(load_current_at(LoadPhase::Capture, m, false).i_5v_A == doctest::Approx(0.40));
    CHECK(load_current_at(LoadPhase::Idle, m, true).i_5v_A == doctest::Approx(0.15));
}

TEST_CASE("model validation")
{
    LoadModel m;
    m.i_capture_5v_A = -0.1;
    CHECK_THROWS_AS(validate(m), ConfigError);
    DutyCycleSchedule s;
    s.capture_interval_s = 0.0;
    CHECK_THROWS_AS(validate(s), ConfigError);
}
