/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/harvest.hpp"

#include "cccv.hpp"
#include "pmcs/battery_node.hpp"
#include "pmcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pmcs::harvest {

void validate(const SolarPanel& panel)
{
    if (!(panel.p_rated_W > 0.0))
        throw ConfigError("panel.p_rated_w", "must be > 0");
    if (!(panel.v_mpp > 0.0 && panel.v_mpp < panel.v_oc))
        throw ConfigError("panel.v_mpp", "must satisfy 0 < v_mpp < v_oc");
    if (!(panel.k_mppt > 0.0 && panel.k_mppt <= 1.0))
        throw ConfigError("panel.k_mppt", "must lie in (0, 1]");
}

void validate(const IrradianceProfile& p)
{
    if (!(p.sunrise_s >= 0.0 && p.sunset_s <= 86400.0 && p.sunrise_s < p.sunset_s))
        throw ConfigError("irradiance.sunrise_s", "need 0 <= sunrise < sunset <= 86400");
    if (!(p.peak_fraction >= 0.0 && p.peak_fraction <= 1.0))
        throw ConfigError("irradiance.peak_fraction", "must lie in [0, 1]");
    if (p.kind == IrradianceKind::Trace) {
        if (p.trace.size() < 2)
            throw ConfigError("irradiance.trace_t_s", "trace needs at least two points");
        for (std::size_t k = 0; k < p.trace.size(); ++k) {
            if (!(p.trace[k].fraction >= 0.0 && p.trace[k].fraction <= 1.0))
                throw ConfigError("irradiance.trace_fraction", "values must lie in [0, 1]");
            if (k > 0 && !(p.trace[k].t_s > p.trace[k - 1].t_s))
                throw ConfigError("irradiance.trace_t_s", "times must be strictly increasing");
        }
    }
}

double irradiance_at(const IrradianceProfile& p, double t_s)
{
    if (!(t_s >= 0.0 && t_s < 86400.0))
        throw DomainError("irradiance_at: t_s must be a time of day in [0, 86400)");

    switch (p.kind) {
    case IrradianceKind::ClearSky: {
        if (t_s <= p.sunrise_s || t_s >= p.sunset_s)
            return 0.0;
        const double phase = (t_s - p.sunrise_s) / (p.sunset_s - p.sunrise_s);
        return std::max(0.0, p.peak_fraction * std::sin(std::numbers::pi * phase));
    }
    case IrradianceKind::Constant:
        return (t_s >= p.sunrise_s && t_s < p.sunset_s) ? p.peak_fraction : 0.0;
    case IrradianceKind::Trace: {
        const auto& tr = p.trace;
        if (tr.size() < 2)
            throw ConfigError("irradiance.trace_t_s", "trace needs at least two points");
        if (t_s <= tr.front().t_s)
            return tr.front().fraction;
        if (t_s >= tr.back().t_s)
            return tr.back().fraction;
        auto hi = std::upper_bound(tr.begin(), tr.end(), t_s,
                                   [](double t, const TracePoint& q) { return t < q.t_s; });
        auto lo = hi - 1;
        const double w = (t_s - lo->t_s) / (hi->t_s - lo->t_s);
        return lo->fraction + w * (hi->fraction - lo->fraction);
    }
    }
    return 0.0;
}

double pv_available_power(const SolarPanel& panel, double g)
{
    if (!(g >= 0.0 && g <= 1.0))
        throw DomainError("pv_available_power: irradiance fraction outside [0, 1]");
    return panel.k_mppt * g * panel.p_rated_W;
}

const char* to_string(InputSource s)
{
    switch (s) {
    case InputSource::None: return "NONE";
    case InputSource::Solar: return "SOLAR";
    case InputSource::Usb: return "USB";
    }
    return "?";
}

InputSource select_input(bool solar_present, bool usb_present)
{
    if (usb_present)
        return InputSource::Usb;
    if (solar_present)
        return InputSource::Solar;
    return InputSource::None;
}

const char* to_string(SolarMode m)
{
    switch (m) {
    case SolarMode::Idle: return "IDLE";
    case SolarMode::CC: return "CC";
    case SolarMode::CV: return "CV";
    case SolarMode::Full: return "FULL";
    }
    return "?";
}

const char* to_string(SolarLed l)
{
    switch (l) {
    case SolarLed::Off: return "OFF";
    case SolarLed::Red: return "RED";
    case SolarLed::Green: return "GREEN";
    }
    return "?";
}

void validate(const SolarChargerParams& p)
{
    if (!(p.eta > 0.0 && p.eta <= 1.0))
        throw ConfigError("solar_charger.eta", "must lie in (0, 1]");
    if (!(p.term_fraction > 0.0 && p.term_fraction < 1.0))
        throw ConfigError("solar_charger.term_fraction", "must lie in (0, 1)");
    if (!(p.tau_cv_s > 0.0))
        throw ConfigError("solar_charger.tau_cv_s", "must be > 0");
    if (!(p.p_min_W >= 0.0))
        throw ConfigError("solar_charger.p_min_w", "must be >= 0");
    if (!(p.v_recharge < p.v_cv))
        throw ConfigError("solar_charger.v_recharge_v", "must be below the CV voltage");
}

SolarChargerState make_solar_charger(const SolarChargerParams& params)
{
    SolarChargerState st;
    st.i_setpoint_A = params.jumper_3A ? 3.0 : 2.0;
    st.eta = params.eta;
    return st;
}

namespace {

void go_idle(SolarChargerState& st)
{
    st.mode = SolarMode::Idle;
    st.led = SolarLed::Off;
    st.cv_elapsed_s = 0.0;
    st.cv_entry_A = 0.0;
}

void start_charge(SolarChargerState& st, double ocv, double r, double v_cv)
{
    st.cv_elapsed_s = 0.0;
    if (detail::reaches_cv(ocv, st.i_setpoint_A, r, v_cv)) {
        st.mode = SolarMode::CV;
        st.cv_entry_A = st.i_setpoint_A;
    } else {
        st.mode = SolarMode::CC;
        st.cv_entry_A = 0.0;
    }
}

} // namespace

ChargePlan plan_solar_charge(const SolarChargerState& st, const SolarChargerParams& params,
                             double p_pv_W, const battery::BatteryPack& pack, double dt_s,
                             bool reverse_polarity)
{
    ChargePlan out;
    auto& n = out.next;
    n = st;
    n.i_setpoint_A = params.jumper_3A ? 3.0 : 2.0;
    n.eta = params.eta;
    n.warning_led = reverse_polarity;

    if (reverse_polarity || p_pv_W < params.p_min_W) {
        go_idle(n);
        return out;
    }
    out.p_node_W = params.eta * p_pv_W;
    if (!pack.protection.charge_enabled) {
        go_idle(n);
        return out;
    }

    const double ocv = battery::ocv_from_soc(pack, pack.soc);
    const double r = pack.r_internal_ohm;

    switch (n.mode) {
    case SolarMode::Idle:
        start_charge(n, ocv, r, params.v_cv);
        break;
    case SolarMode::Full:
        if (ocv < params.v_recharge)
            start_charge(n, ocv, r, params.v_cv);
        break;
    case SolarMode::CC:
        if (detail::reaches_cv(ocv, n.i_setpoint_A, r, params.v_cv)) {
            n.mode = SolarMode::CV;
            n.cv_entry_A = n.i_setpoint_A;
            n.cv_elapsed_s = 0.0;
        }
        break;
    case SolarMode::CV:
        break;
    }

    if (n.mode == SolarMode::CC) {
        out.charge_limit_A = n.i_setpoint_A;
    } else if (n.mode == SolarMode::CV) {
        const double limit = detail::cv_current_limit(n.cv_entry_A, n.cv_elapsed_s, params.tau_cv_s,
                                                      params.v_cv, ocv, r);
        if (limit <= params.term_fraction * n.i_setpoint_A) {
            n.mode = SolarMode::Full;
            n.cv_elapsed_s = 0.0;
            out.became_full = true;
        } else {
            out.charge_limit_A = std::min(limit, n.i_setpoint_A);
            n.cv_elapsed_s += dt_s;
        }
    }
    n.led = n.mode == SolarMode::Full ? SolarLed::Green : SolarLed::Red;
    return out;
}

ChargerStepResult solar_charger_step(const SolarChargerState& st, const SolarChargerParams& params,
                                     double p_pv_W, const battery::BatteryPack& pack,
                                     double i_load_batt_side_A, double dt_s, bool reverse_polarity)
{
    ChargerStepResult res;
    auto plan = plan_solar_charge(st, params, p_pv_W, pack, dt_s, reverse_polarity);
    res.state = plan.next;
    if (plan.p_node_W <= 0.0)
        return res;

    const double ocv = battery::ocv_from_soc(pack, pack.soc);
    battery::NodeDemand demand;
    demand.i_const_A = i_load_batt_side_A;
    const auto sol = battery::solve_battery_node(ocv, pack.r_internal_ohm, plan.p_node_W,
                                                 plan.charge_limit_A, demand);
    if (!sol.feasible)
        return res;
    res.i_charge_A = sol.i_src_to_batt_A;
    res.i_to_load_A = sol.i_src_to_load_A;
    res.p_loss_W = sol.source_power_W() * (1.0 - params.eta) / params.eta;
    return res;
}

} // namespace pmcs::harvest
