/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/control.hpp"

#include "pmcs/errors.hpp"

namespace pmcs::control {

namespace {

// Absorbs the rounding left by repeated fractional decrements (e.g. dt = 0.1).
constexpr double kExpiryEps = 1e-9;

} // namespace

const char* to_string(RtcSupply s)
{
    return s == RtcSupply::Primary5V ? "PRIMARY_5V" : "BATTERY";
}

RtcState arm_countdown(RtcState st, double period_s, double first_s)
{
    if (!(period_s > 0.0) || !(first_s > 0.0))
        throw DomainError("arm_countdown: period and first expiry must be > 0");
    st.period_s = period_s;
    st.countdown_s = first_s;
    return st;
}

RtcTick rtc_tick(const RtcState& st, double dt_s)
{
    if (!(dt_s > 0.0))
        throw DomainError("rtc_tick: dt_s must be > 0");
    RtcTick out{st, false};
    auto& n = out.state;
    n.epoch_s += dt_s;
    if (!n.countdown_s)
        return out;
    double left = *n.countdown_s - dt_s;
    if (!(n.period_s > 0.0)) {
        // One-shot countdown.
        if (left <= kExpiryEps) {
            out.pulse = true;
            n.countdown_s.reset();
        } else {
            n.countdown_s = left;
        }
        return out;
    }
    const double eps = kExpiryEps * (n.period_s > 1.0 ? n.period_s : 1.0);
    while (left <= eps) {
        out.pulse = true;
        left += n.period_s;
    }
    n.countdown_s = left;
    return out;
}

RtcSupply rtc_supply_select(bool latch_on, double /*v_bat*/)
{
    return latch_on ? RtcSupply::Primary5V : RtcSupply::Battery;
}

void validate(const AdcDivider& div)
{
    if (!(div.ratio > 0.0 && div.ratio < 1.0))
        throw ConfigError("adc.ratio", "must lie in (0, 1)");
    if (!(div.r_total_ohm > 0.0))
        throw ConfigError("adc.r_total_ohm", "must be > 0");
}

AdcReading adc_read_vbat(const AdcDivider& div, double v_bat)
{
    if (!div.enabled || v_bat <= 0.0)
        return {};
    return {div.ratio * v_bat, v_bat / div.r_total_ohm};
}

double ext_power_enable(bool enabled, bool latch_on, double i_ext_A)
{
    return (enabled && latch_on) ? i_ext_A : 0.0;
}

} // namespace pmcs::control
