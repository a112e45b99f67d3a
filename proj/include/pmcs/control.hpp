/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>

namespace pmcs::control {

enum class RtcSupply { Primary5V, Battery };

const char* to_string(RtcSupply s);

struct RtcState
{
    double epoch_s = 0.0;
    std::optional<double> countdown_s;  // remaining until the next pulse
    double period_s = 0.0;              // re-arm value; 0 = one-shot
    double pulse_width_s = 0.25;
    RtcSupply supply = RtcSupply::Battery;
    double i_quiescent_A = 400e-9;
};

/// Arms a periodic countdown; the first pulse fires after `first_s`.
RtcState arm_countdown(RtcState st, double period_s, double first_s);

struct RtcTick
{
    RtcState state;
    bool pulse = false;
};

/// Advances the ideal clock by dt_s. A pulse is emitted on the step in which
/// the countdown reaches zero; the countdown then re-arms with the same period.
RtcTick rtc_tick(const RtcState& st, double dt_s);

/// The latched 5 V output takes priority over the battery.
RtcSupply rtc_supply_select(bool latch_on, double v_bat);

struct AdcDivider
{
    bool enabled = false;
    double ratio = 0.5;
    double r_total_ohm = 200000.0;
};

void validate(const AdcDivider& div);

struct AdcReading
{
    double reading_V = 0.0;
    double i_drain_A = 0.0;
};

AdcReading adc_read_vbat(const AdcDivider& div, double v_bat);

/// Current added to the 5 V load by the external-device ground switch.
double ext_power_enable(bool enabled, bool latch_on, double i_ext_A);

} // namespace pmcs::control
