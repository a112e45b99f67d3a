/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/battery.hpp"

#include "pmcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pmcs::battery {

std::vector<OcvAnchor> default_ocv_anchors()
{
    return {{0.0, 3.0}, {0.1, 3.5}, {0.5, 3.7}, {0.9, 4.0}, {1.0, 4.2}};
}

const char* to_string(Fault f)
{
    switch (f) {
    case Fault::None: return "NONE";
    case Fault::OverCharge: return "OVER_CHARGE";
    case Fault::OverDischarge: return "OVER_DISCHARGE";
    case Fault::OverCurrent: return "OVER_CURRENT";
    case Fault::ShortCircuit: return "SHORT_CIRCUIT";
    case Fault::ReversePolarity: return "REVERSE_POLARITY";
    }
    return "?";
}

void validate_anchors(std::span<const OcvAnchor> anchors)
{
    if (anchors.size() < 2)
        throw ConfigError("battery.ocv_soc", "need at least two OCV anchors");
    if (anchors.front().soc != 0.0 || anchors.back().soc != 1.0)
        throw ConfigError("battery.ocv_soc", "first anchor must be soc=0 and last soc=1");
    for (std::size_t k = 1; k < anchors.size(); ++k) {
        if (!(anchors[k].soc > anchors[k - 1].soc))
            throw ConfigError("battery.ocv_soc", "anchor soc values must be strictly increasing");
        if (!(anchors[k].volts > anchors[k - 1].volts))
            throw ConfigError("battery.ocv_v", "anchor voltages must be strictly increasing");
    }
}

void validate(const BatteryPack& pack)
{
    if (!(pack.capacity_Ah > 0.0))
        throw ConfigError("battery.capacity_ah", "must be > 0");
    if (!(pack.soc >= 0.0 && pack.soc <= 1.0))
        throw ConfigError("battery.soc_initial", "must lie in [0, 1]");
    if (!(pack.r_internal_ohm >= 0.0))
        throw ConfigError("battery.r_internal_ohm", "must be >= 0");
    validate_anchors(pack.ocv_anchors);
    const auto& th = pack.thresholds;
    if (!(th.v_overdischarge > 0.0 && th.v_overdischarge < pack.ocv_anchors.front().volts))
        throw ConfigError("battery.v_overdischarge", "must be > 0 and below the empty-pack OCV");
    if (!(th.v_overcharge > pack.ocv_anchors.back().volts))
        throw ConfigError("battery.v_overcharge", "must be above the full-pack OCV");
    if (!(th.i_overcurrent_A > 0.0 && th.i_short_A > th.i_overcurrent_A))
        throw ConfigError("battery.i_overcurrent_a", "must satisfy 0 < i_overcurrent < i_short");
}

double ocv_from_soc(const BatteryPack& pack, double soc)
{
    if (!(soc >= 0.0 && soc <= 1.0))
        throw DomainError("ocv_from_soc: soc " + std::to_string(soc) + " outside [0, 1]");
    const auto& a = pack.ocv_anchors;
    auto hi = std::upper_bound(a.begin(), a.end(), soc,
                               [](double s, const OcvAnchor& p) { return s < p.soc; });
    if (hi == a.end())
        return a.back().volts;
    if (hi == a.begin())
        return a.front().volts;
    auto lo = hi - 1;
    const double w = (soc - lo->soc) / (hi->soc - lo->soc);
    return lo->volts + w * (hi->volts - lo->volts);
}

double terminal_voltage(const BatteryPack& pack, double i_net_A)
{
    return ocv_from_soc(pack, pack.soc) + i_net_A * pack.r_internal_ohm;
}

double protection_sense_voltage(const BatteryPack& pack, double i_net_A)
{
    if (pack.soc <= 0.0 && i_net_A < 0.0)
        return 0.0;
    return terminal_voltage(pack, i_net_A);
}

SocUpdate integrate_soc(BatteryPack pack, double i_net_A, double dt_s)
{
    if (!(dt_s > 0.0))
        throw DomainError("step_soc: dt_s must be > 0");
    const double next = pack.soc + i_net_A * dt_s / (pack.capacity_Ah * 3600.0);
    const double clamped = std::clamp(next, 0.0, 1.0);
    pack.soc = clamped;
    return {std::move(pack), clamped != next};
}

BatteryPack step_soc(BatteryPack pack, double i_net_A, double dt_s)
{
    return integrate_soc(std::move(pack), i_net_A, dt_s).pack;
}

ProtectionState check_protection(const BatteryPack& pack, double i_A, double v_term)
{
    ProtectionState st = pack.protection;
    const auto& th = pack.thresholds;
    const double mag = std::fabs(i_A);

    auto trip = [&](Fault f, bool discharge_side) {
        st.fault = f;
        if (discharge_side)
            st.discharge_enabled = false;
        else
            st.charge_enabled = false;
    };

    if (mag > th.i_short_A)
        trip(Fault::ShortCircuit, i_A < 0.0);
    else if (mag > th.i_overcurrent_A)
        trip(Fault::OverCurrent, i_A < 0.0);
    else if (i_A < 0.0 && v_term <= th.v_overdischarge)
        trip(Fault::OverDischarge, true);
    else if (i_A > 0.0 && v_term >= th.v_overcharge)
        trip(Fault::OverCharge, false);
    return st;
}

BatteryPack reset_protection(BatteryPack pack)
{
    pack.protection = ProtectionState{};
    return pack;
}

} // namespace pmcs::battery
