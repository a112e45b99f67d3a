/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <vector>

namespace pmcs::battery {

struct OcvAnchor
{
    double soc;
    double volts;
};

/// Default open-circuit voltage curve for the 3-cell parallel pack.
std::vector<OcvAnchor> default_ocv_anchors();

enum class Fault { None, OverCharge, OverDischarge, OverCurrent, ShortCircuit, ReversePolarity };

const char* to_string(Fault f);

struct ProtectionState
{
    bool discharge_enabled = true;
    bool charge_enabled = true;
    Fault fault = Fault::None;

    bool operator==(const ProtectionState&) const = default;
};

// DW06D-style trip points. Only the over-discharge level is a board fact;
// the rest sit above every normal operating point.
struct ProtectionThresholds
{
    double v_overdischarge = 2.4;
    double v_overcharge = 4.28;
    double i_overcurrent_A = 6.0;
    double i_short_A = 12.0;
};

struct BatteryPack
{
    double capacity_Ah = 10.0;
    double soc = 1.0;
    double r_internal_ohm = 0.05;
    std::vector<OcvAnchor> ocv_anchors = default_ocv_anchors();
    ProtectionState protection{};
    ProtectionThresholds thresholds{};
};

/// Throws ConfigError (field "battery.*") when the pack violates its invariants.
void validate(const BatteryPack& pack);

/// Checks anchors are strictly increasing in soc and volts, span [0, 1].
void validate_anchors(std::span<const OcvAnchor> anchors);

/// Piecewise-linear OCV lookup. Throws DomainError for soc outside [0, 1].
double ocv_from_soc(const BatteryPack& pack, double soc);

/// OCV-IR terminal model; i_net_A > 0 is charging.
double terminal_voltage(const BatteryPack& pack, double i_net_A);

/// Voltage seen by the protection IC. An empty pack cannot sustain a
/// discharge current, so its terminal collapses to 0 V.
double protection_sense_voltage(const BatteryPack& pack, double i_net_A);

struct SocUpdate
{
    BatteryPack pack;
    bool clamped = false;
};

/// Coulomb counting with saturation at 0 and 1; reports whether a clamp happened.
SocUpdate integrate_soc(BatteryPack pack, double i_net_A, double dt_s);

BatteryPack step_soc(BatteryPack pack, double i_net_A, double dt_s);

/// Latching trip logic. Existing faults are kept; a new trip replaces the
/// reported fault and disables the affected direction.
ProtectionState check_protection(const BatteryPack& pack, double i_A, double v_term);

/// Models the reset push button on the protection chip.
BatteryPack reset_protection(BatteryPack pack);

} // namespace pmcs::battery
