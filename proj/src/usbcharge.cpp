/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/usbcharge.hpp"

#include "cccv.hpp"
#include "pmcs/battery_node.hpp"
#include "pmcs/errors.hpp"

#include <algorithm>

namespace pmcs::usb {

const char* to_string(UsbMode m)
{
    switch (m) {
    case UsbMode::Idle: return "IDLE";
    case UsbMode::Trickle: return "TRICKLE";
    case UsbMode::CC: return "CC";
    case UsbMode::CV: return "CV";
    case UsbMode::Full: return "FULL";
    }
    return "?";
}

const char* to_string(UsbLed l)
{
    switch (l) {
    case UsbLed::Off: return "OFF";
    case UsbLed::Blink05Hz: return "BLINK";
    case UsbLed::Solid: return "SOLID";
    }
    return "?";
}

void validate(const UsbChargerParams& p)
{
    if (!(p.p_usb_W >= 0.0))
        throw ConfigError("usb.p_usb_w", "must be >= 0");
    if (p.p_usb_W > p.p_rated_max_W)
        throw ConfigError("usb.p_usb_w", "exceeds the 15 W (5 V x 3 A) input rating");
    if (!(p.eta > 0.0 && p.eta <= 1.0))
        throw ConfigError("usb.eta", "must lie in (0, 1]");
    if (!(p.i_trickle_A > 0.0 && p.i_trickle_A < p.i_cc_A))
        throw ConfigError("usb.i_trickle_a", "must satisfy 0 < i_trickle < i_cc");
    if (!(p.i_term_A > 0.0 && p.i_term_A < p.i_cc_A))
        throw ConfigError("usb.i_term_a", "must satisfy 0 < i_term < i_cc");
    if (!(p.tau_cv_s > 0.0))
        throw ConfigError("usb.tau_cv_s", "must be > 0");
    if (!(p.v_recharge < p.v_cv))
        throw ConfigError("usb.v_recharge_v", "must be below the CV voltage");
}

UsbChargerState make_usb_charger(const UsbChargerParams& params)
{
    UsbChargerState st;
    st.i_cc_A = params.i_cc_A;
    st.i_trickle_A = params.i_trickle_A;
    st.eta = params.eta;
    return st;
}

namespace {

void go_idle(UsbChargerState& st)
{
    st.mode = UsbMode::Idle;
    st.cv_elapsed_s = 0.0;
    st.cv_entry_A = 0.0;
}

void enter_cv(UsbChargerState& st)
{
    st.mode = UsbMode::CV;
    st.cv_entry_A = st.i_cc_A;
    st.cv_elapsed_s = 0.0;
}

void start_charge(UsbChargerState& st, const UsbChargerParams& p, double ocv, double r)
{
    st.cv_elapsed_s = 0.0;
    st.cv_entry_A = 0.0;
    if (ocv <= p.v_trickle)
        st.mode = UsbMode::Trickle;
    else if (detail::reaches_cv(ocv, st.i_cc_A, r, p.v_cv))
        enter_cv(st);
    else
        st.mode = UsbMode::CC;
}

UsbLed led_for(UsbMode m)
{
    switch (m) {
    case UsbMode::Idle: return UsbLed::Off;
    case UsbMode::Full: return UsbLed::Solid;
    default: return UsbLed::Blink05Hz;
    }
}

} // namespace

UsbChargePlan plan_usb_charge(const UsbChargerState& st, const UsbChargerParams& params,
                              double p_usb_W, const battery::BatteryPack& pack, double dt_s)
{
    UsbChargePlan out;
    auto& n = out.next;
    n = st;
    n.i_cc_A = params.i_cc_A;
    n.i_trickle_A = params.i_trickle_A;
    n.eta = params.eta;

    if (!(p_usb_W > 0.0) || !pack.protection.charge_enabled) {
        go_idle(n);
        n.led = led_for(n.mode);
        return out;
    }

    const double ocv = battery::ocv_from_soc(pack, pack.soc);
    const double r = pack.r_internal_ohm;

    switch (n.mode) {
    case UsbMode::Idle:
        start_charge(n, params, ocv, r);
        break;
    case UsbMode::Trickle:
        if (ocv > params.v_trickle) {
            n.mode = UsbMode::CC;
            if (detail::reaches_cv(ocv, n.i_cc_A, r, params.v_cv))
                enter_cv(n);
        }
        break;
    case UsbMode::CC:
        if (detail::reaches_cv(ocv, n.i_cc_A, r, params.v_cv))
            enter_cv(n);
        break;
    case UsbMode::CV:
        break;
    case UsbMode::Full:
        if (ocv < params.v_recharge)
            start_charge(n, params, ocv, r);
        break;
    }

    switch (n.mode) {
    case UsbMode::Trickle:
        out.charge_limit_A = n.i_trickle_A;
        break;
    case UsbMode::CC:
        out.charge_limit_A = n.i_cc_A;
        break;
    case UsbMode::CV: {
        const double limit = detail::cv_current_limit(n.cv_entry_A, n.cv_elapsed_s, params.tau_cv_s,
                                                      params.v_cv, ocv, r);
        if (limit <= params.i_term_A) {
            n.mode = UsbMode::Full;
            n.cv_elapsed_s = 0.0;
            out.became_full = true;
        } else {
            out.charge_limit_A = std::min(limit, n.i_cc_A);
            n.cv_elapsed_s += dt_s;
        }
        break;
    }
    default:
        break;
    }
    n.led = led_for(n.mode);
    return out;
}

UsbStepResult usb_charger_step(const UsbChargerState& st, const UsbChargerParams& params,
                               double p_usb_W, const battery::BatteryPack& pack,
                               double i_load_batt_side_A, double dt_s)
{
    UsbStepResult res;
    auto plan = plan_usb_charge(st, params, p_usb_W, pack, dt_s);
    res.state = plan.next;
    if (!(p_usb_W > 0.0))
        return res;

    const double ocv = battery::ocv_from_soc(pack, pack.soc);
    battery::NodeDemand demand;
    demand.i_const_A = i_load_batt_side_A;
    const auto sol = battery::solve_battery_node(ocv, pack.r_internal_ohm, params.eta * p_usb_W,
                                                 plan.charge_limit_A, demand);
    if (!sol.feasible)
        return res;
    res.i_charge_A = sol.i_src_to_batt_A;
    res.i_to_load_A = sol.i_src_to_load_A;
    res.p_loss_W = sol.source_power_W() * (1.0 - params.eta) / params.eta;
    return res;
}

} // namespace pmcs::usb
