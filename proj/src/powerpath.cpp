/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/powerpath.hpp"

#include "pmcs/errors.hpp"

#include <algorithm>

namespace pmcs::powerpath {

namespace {

constexpr double kEtaPeak = 0.98;
constexpr double kEtaAtLimit = 0.85;
constexpr double kFlatUntilA = 0.1;
constexpr double kTimeEps = 1e-9;

} // namespace

double boost_efficiency(double i_out_A)
{
    if (!(i_out_A >= 0.0 && i_out_A <= kBoostCurrentLimitA))
        throw DomainError("boost_efficiency: output current outside [0, 2.4] A");
    if (i_out_A <= kFlatUntilA)
        return kEtaPeak;
    const double w = (i_out_A - kFlatUntilA) / (kBoostCurrentLimitA - kFlatUntilA);
    return kEtaPeak - w * (kEtaPeak - kEtaAtLimit);
}

std::optional<double> boost_input_current(double v_in, double i_out_A)
{
    if (v_in < kBoostMinInputV)
        return std::nullopt;
    if (i_out_A == 0.0)
        return 0.0;
    return kOutputVoltage * i_out_A / (boost_efficiency(i_out_A) * v_in);
}

namespace {

struct Attempt
{
    battery::NodeSolution node;
    double p_direct_W = 0.0;   // USB straight onto the 5 V rail
    double p_boost_out_W = 0.0;
    double p_boost_in_W = 0.0;
    double i_5v_A = 0.0;
    double i_const_A = 0.0;
    double g_S = 0.0;
    bool dropout = false;
};

} // namespace

Allocation allocate(const AllocationRequest& req, const battery::BatteryPack& pack)
{
    using harvest::InputSource;

    Allocation out;
    const double ocv = battery::ocv_from_soc(pack, pack.soc);
    const double r = pack.r_internal_ohm;
    const double p_avail = req.source == InputSource::None ? 0.0 : std::max(req.p_src_available_W, 0.0);
    const double eta = req.eta_charger;

    double i5 = req.latch_on ? std::max(req.i_load_5v_A, 0.0) : 0.0;
    if (i5 > kBoostCurrentLimitA) {
        out.events.add(Event::LoadShed);
        i5 = 0.0;
    }
    double charge_limit = pack.protection.charge_enabled ? req.charge_limit_A : 0.0;

    auto attempt = [&](double i_5v, double c, bool batt_loads) {
        Attempt a;
        a.i_5v_A = i_5v;
        a.i_const_A = batt_loads ? req.i_batt_const_A : 0.0;
        a.g_S = batt_loads ? req.g_batt_S : 0.0;
        const double p_out = kOutputVoltage * i_5v;
        double p_node = 0.0;
        if (req.source == InputSource::Usb) {
            a.p_direct_W = std::min(p_out, eta * p_avail);
            p_node = eta * p_avail - a.p_direct_W;
        } else if (req.source == InputSource::Solar) {
            p_node = eta * p_avail;
        }
        a.p_boost_out_W = p_out - a.p_direct_W;
        if (a.p_boost_out_W > 0.0) {
            const double i_boost = a.p_boost_out_W / kOutputVoltage;
            a.p_boost_in_W = a.p_boost_out_W / boost_efficiency(i_boost);
        }
        battery::NodeDemand d{a.p_boost_in_W, a.i_const_A, a.g_S};
        a.node = battery::solve_battery_node(ocv, r, p_node, c, d);
        a.dropout = a.node.feasible && a.p_boost_out_W > 0.0 && a.node.v < kBoostMinInputV;
        return a;
    };

    auto brownout = [&]() {
        if (i5 > 0.0) {
            out.brownout = true;
            out.latch_forced_off = true;
            out.events.add(Event::Brownout);
        }
        i5 = 0.0;
        charge_limit = 0.0;
    };

    Attempt a = attempt(i5, charge_limit, true);
    if (!a.node.feasible || a.dropout) {
        if (a.dropout)
            out.events.add(Event::Dropout);
        brownout();
        a = attempt(i5, charge_limit, true);
    }
    if (a.node.i_net_A < 0.0 && !pack.protection.discharge_enabled) {
        brownout();
        a = attempt(i5, charge_limit, true);
        if (a.node.i_net_A < 0.0) {
            out.battery_disconnected = true;
            out.events.add(Event::BatteryDisconnected);
            a = attempt(i5, charge_limit, false);
        }
    }

    const auto& n = a.node;
    auto& f = out.flows;
    f.v_node = n.v;
    f.i_load_5v_A = a.i_5v_A;
    f.i_src_to_load_A = n.i_src_to_load_A + (n.v > 0.0 ? a.p_direct_W / n.v : 0.0);
    f.i_src_to_batt_A = n.i_src_to_batt_A;
    f.i_batt_net_A = n.i_net_A;
    f.i_load_batt_side_A = n.i_load_A;
    const double p_node_src = n.source_power_W();
    // the direct USB path goes through the same input stage as the charger
    const double p_conv = a.p_direct_W + p_node_src;
    f.p_loss_charger_W = req.source == InputSource::None ? 0.0 : p_conv * (1.0 - eta) / eta;
    f.p_src_W = req.source == InputSource::None ? 0.0 : p_conv / eta;
    f.p_loss_boost_W = a.p_boost_in_W - a.p_boost_out_W;
    f.p_load_5v_W = kOutputVoltage * a.i_5v_A;
    f.p_batt_side_W = n.v * (a.i_const_A + a.g_S * n.v);
    f.p_loss_W = f.p_loss_charger_W + f.p_loss_boost_W;
    return out;
}

LatchState latch_step(const LatchState& st, const ButtonEvent& ev, double dt_s, const LatchParams& params)
{
    LatchState n = st;

    if (ev.kind == ButtonKind::RtcPulse && !n.on)
        n.on = true;

    if (ev.kind == ButtonKind::PressEnd) {
        if (n.pressed && !n.on && n.press_elapsed_s + kTimeEps < params.t_long_s)
            n.on = true;
        n.pressed = false;
        n.press_elapsed_s = 0.0;
    }
    if (ev.kind == ButtonKind::PressStart) {
        n.pressed = true;
        n.press_elapsed_s = 0.0;
    }
    if (n.pressed) {
        n.press_elapsed_s += dt_s;
        if (n.on && n.press_elapsed_s + kTimeEps >= params.t_long_s && st.press_elapsed_s + kTimeEps < params.t_long_s)
            n.on = false;
    }

    if (ev.shutdown_line_low) {
        n.shutdown_low_elapsed_s += dt_s;
        if (n.on && n.shutdown_low_elapsed_s + kTimeEps >= params.t_shutdown_s)
            n.on = false;
    } else {
        n.shutdown_low_elapsed_s = 0.0;
    }
    return n;
}

LatchState latch_force_off(LatchState st)
{
    st.on = false;
    st.shutdown_low_elapsed_s = 0.0;
    return st;
}

} // namespace pmcs::powerpath
