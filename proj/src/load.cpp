/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/load.hpp"

#include "pmcs/errors.hpp"

#include <cmath>

namespace pmcs::load {

void validate(const LoadModel& m)
{
    if (!(m.i_sleep_A >= 0.0))
        throw ConfigError("load.i_sleep_a", "must be >= 0");
    if (!(m.i_idle_5v_A >= 0.0))
        throw ConfigError("load.i_idle_a", "must be >= 0");
    if (!(m.i_boot_5v_A >= 0.0))
        throw ConfigError("load.i_boot_a", "must be >= 0");
    if (!(m.i_capture_5v_A >= 0.0))
        throw ConfigError("load.i_capture_a", "must be >= 0");
    if (!(m.i_sensors_5v_A >= 0.0))
        throw ConfigError("load.i_sensors_a", "must be >= 0");
    if (!(m.t_boot_s >= 0.0))
        throw ConfigError("load.t_boot_s", "must be >= 0");
    if (!(m.t_capture_s >= 0.0))
        throw ConfigError("load.t_capture_s", "must be >= 0");
}

void validate(const DutyCycleSchedule& s)
{
    if (!(s.capture_interval_s > 0.0))
        throw ConfigError("schedule.capture_interval_s", "must be > 0");
    if (!(s.sunrise_s >= 0.0 && s.sunset_s < 86400.0 && s.sunrise_s < s.sunset_s))
        throw ConfigError("schedule.sunrise_s", "need 0 <= sunrise < sunset < 86400");
}

std::vector<double> schedule_events(const DutyCycleSchedule& s, int day)
{
    if (day < 0 || day >= s.day_count)
        throw DomainError("schedule_events: day index outside the schedule");
    const double base = 86400.0 * day;
    const auto n = static_cast<long>(std::floor((s.sunset_s - s.sunrise_s) / s.capture_interval_s + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k)
        out.push_back(base + s.sunrise_s + k * s.capture_interval_s);
    return out;
}

bool in_capture_window(const DutyCycleSchedule& s, double tod)
{
    return tod + 1e-9 >= s.sunrise_s && tod <= s.sunset_s + 1e-9;
}

const char* to_string(LoadPhase p)
{
    switch (p) {
    case LoadPhase::Off: return "OFF";
    case LoadPhase::Sleep: return "SLEEP";
    case LoadPhase::Boot: return "BOOT";
    case LoadPhase::Capture: return "CAPTURE";
    case LoadPhase::Idle: return "IDLE";
    }
    return "?";
}

LoadCurrents load_current_at(LoadPhase phase, const LoadModel& m, bool sensors_enabled,
                             bool battery_connected)
{
    switch (phase) {
    case LoadPhase::Off:
    case LoadPhase::Sleep:
        return {0.0, battery_connected ? m.i_sleep_A : 0.0};
    case LoadPhase::Boot:
        return {m.i_boot_5v_A, 0.0};
    case LoadPhase::Capture:
        return {m.i_capture_5v_A + (sensors_enabled ? m.i_sensors_5v_A : 0.0), 0.0};
    case LoadPhase::Idle:
        return {m.i_idle_5v_A, 0.0};
    }
    return {};
}

} // namespace pmcs::load
