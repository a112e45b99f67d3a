/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <vector>

namespace pmcs::load {

// Camera + sensor draw. Only the sleep floor is a measured board figure;
// the active currents are placeholders sized like typical datasheet values.
struct LoadModel
{
    double i_sleep_A = 211e-6;  // battery side
    double i_idle_5v_A = 0.15;
    double i_boot_5v_A = 0.25;
    double i_capture_5v_A = 0.40;
    double t_boot_s = 5.0;
    double t_capture_s = 25.0;
    double i_sensors_5v_A = 0.012;  // 2x SHT40, SCD41, BH1750, TCA9548
};

void validate(const LoadModel& model);

struct DutyCycleSchedule
{
    double sunrise_s = 6.5 * 3600.0;
    double sunset_s = 17.5 * 3600.0;
    double capture_interval_s = 1800.0;
    int day_count = 1;
};

void validate(const DutyCycleSchedule& sched);

/// Absolute wake times (seconds from scenario start) for one day:
/// sunrise, sunrise + interval, ... up to and including sunset.
std::vector<double> schedule_events(const DutyCycleSchedule& sched, int day);

/// True when a time of day falls inside the capture window.
bool in_capture_window(const DutyCycleSchedule& sched, double time_of_day_s);

enum class LoadPhase { Off, Sleep, Boot, Capture, Idle };

const char* to_string(LoadPhase p);

struct LoadCurrents
{
    double i_5v_A = 0.0;
    double i_batt_side_extra_A = 0.0;
};

LoadCurrents load_current_at(LoadPhase phase, const LoadModel& model, bool sensors_enabled,
                             bool battery_connected = true);

} // namespace pmcs::load
