/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/battery.hpp"
#include "pmcs/battery_node.hpp"
#include "pmcs/events.hpp"
#include "pmcs/harvest.hpp"

#include <optional>

namespace pmcs::powerpath {

inline constexpr double kOutputVoltage = 5.0;
inline constexpr double kBoostCurrentLimitA = 2.4;
inline constexpr double kBoostMinInputV = 2.2;

/// MT3608L-style efficiency: flat 98 % up to 0.1 A, linear down to 85 % at the
/// 2.4 A limit. Throws DomainError outside [0, 2.4] A.
double boost_efficiency(double i_out_A);

/// Battery-side input current for a 5 V output current; std::nullopt when
/// the input is below the 2.2 V minimum (dropout).
std::optional<double> boost_input_current(double v_in, double i_out_A);

struct PowerFlows
{
    double i_src_to_load_A = 0.0;  // battery-node equivalent
    double i_src_to_batt_A = 0.0;
    double i_batt_net_A = 0.0;     // + = charging
    double i_load_5v_A = 0.0;      // served 5 V output current
    double p_loss_W = 0.0;

    // Ledger detail.
    double v_node = 0.0;
    double p_src_W = 0.0;          // power drawn from the selected input
    double p_loss_charger_W = 0.0;
    double p_loss_boost_W = 0.0;
    double p_load_5v_W = 0.0;
    double p_batt_side_W = 0.0;    // quiescent floor + divider, at the node
    double i_load_batt_side_A = 0.0;
};

struct AllocationRequest
{
    harvest::InputSource source = harvest::InputSource::None;
    double p_src_available_W = 0.0;  // raw input power on offer
    double eta_charger = 0.94;
    double charge_limit_A = 0.0;
    double i_load_5v_A = 0.0;        // requested 5 V output current
    double i_batt_const_A = 0.0;     // battery-side constant current (sleep floor)
    double g_batt_S = 0.0;           // battery-side conductance (divider)
    bool latch_on = false;
};

struct Allocation
{
    PowerFlows flows;
    EventSet events;
    bool brownout = false;
    bool latch_forced_off = false;
    bool battery_disconnected = false;
};

/// Splits source, battery and load currents for one step. The USB path feeds
/// the 5 V rail directly; the solar path taps the battery node ahead of the
/// charge sense resistor. Any shortfall comes from the battery when discharge
/// is enabled, otherwise the load browns out.
Allocation allocate(const AllocationRequest& req, const battery::BatteryPack& pack);

// --- soft-latch power switch ---------------------------------------------

struct LatchParams
{
    double t_long_s = 3.0;
    double t_shutdown_s = 3.0;
};

enum class ButtonKind { None, PressStart, PressEnd, RtcPulse };

struct ButtonEvent
{
    ButtonKind kind = ButtonKind::None;
    bool shutdown_line_low = false;
};

struct LatchState
{
    bool on = false;
    bool pressed = false;
    double press_elapsed_s = 0.0;
    double shutdown_low_elapsed_s = 0.0;

    bool operator==(const LatchState&) const = default;
};

LatchState latch_step(const LatchState& st, const ButtonEvent& ev, double dt_s,
                      const LatchParams& params = {});

/// Rail collapse (brown-out): output off, timers cleared.
LatchState latch_force_off(LatchState st);

} // namespace pmcs::powerpath
