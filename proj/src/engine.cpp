/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/engine.hpp"

#include "pmcs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pmcs::engine {

using harvest::InputSource;

namespace {

constexpr double kDay = 86400.0;

bool in_any(const std::vector<TimeWindow>& windows, double t)
{
    return std::any_of(windows.begin(), windows.end(), [t](const TimeWindow& w) { return w.contains(t); });
}

void validate_windows(const std::vector<TimeWindow>& windows, const char* field)
{
    for (const auto& w : windows)
        if (!(w.start_s >= 0.0 && w.end_s > w.start_s))
            throw ConfigError(field, "windows need 0 <= start < end");
}

long step_index(double t_s, double dt_s)
{
    return static_cast<long>(std::floor(t_s / dt_s + 1e-9));
}

// Scripted button edges, resolved to step indices.
struct ScriptedEdge
{
    long step;
    powerpath::ButtonKind kind;
};

std::vector<ScriptedEdge> press_edges(const SimConfig& cfg)
{
    std::vector<ScriptedEdge> edges;
    for (const auto& p : cfg.presses) {
        const long start = step_index(p.t_s, cfg.dt_s);
        const long end = std::max(start + 1, step_index(p.t_s + p.duration_s, cfg.dt_s));
        edges.push_back({start, powerpath::ButtonKind::PressStart});
        edges.push_back({end, powerpath::ButtonKind::PressEnd});
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const ScriptedEdge& a, const ScriptedEdge& b) { return a.step < b.step; });
    return edges;
}

std::vector<long> to_steps(const std::vector<double>& times, double dt_s)
{
    std::vector<long> out;
    out.reserve(times.size());
    for (double t : times)
        out.push_back(step_index(t, dt_s));
    std::sort(out.begin(), out.end());
    return out;
}

// Firmware on the edge processor: boot, capture once, then request shutdown.
struct Device
{
    bool running = false;
    double on_elapsed_s = 0.0;
    bool shutdown_line_low = false;

    void power_on() { *this = Device{true, 0.0, false}; }
    void power_off() { *this = Device{}; }
};

ChargerMode mode_of(harvest::SolarMode m)
{
    switch (m) {
    case harvest::SolarMode::CC: return ChargerMode::CC;
    case harvest::SolarMode::CV: return ChargerMode::CV;
    case harvest::SolarMode::Full: return ChargerMode::Full;
    default: return ChargerMode::Idle;
    }
}

ChargerMode mode_of(usb::UsbMode m)
{
    switch (m) {
    case usb::UsbMode::Trickle: return ChargerMode::Trickle;
    case usb::UsbMode::CC: return ChargerMode::CC;
    case usb::UsbMode::CV: return ChargerMode::CV;
    case usb::UsbMode::Full: return ChargerMode::Full;
    default: return ChargerMode::Idle;
    }
}

Event fault_event(battery::Fault f)
{
    switch (f) {
    case battery::Fault::OverCharge: return Event::FaultOverCharge;
    case battery::Fault::OverCurrent: return Event::FaultOverCurrent;
    case battery::Fault::ShortCircuit: return Event::FaultShortCircuit;
    default: return Event::FaultOverDischarge;
    }
}

} // namespace

const char* to_string(ChargerMode m)
{
    switch (m) {
    case ChargerMode::Idle: return "IDLE";
    case ChargerMode::Trickle: return "TRICKLE";
    case ChargerMode::CC: return "CC";
    case ChargerMode::CV: return "CV";
    case ChargerMode::Full: return "FULL";
    }
    return "?";
}

void validate(const SimConfig& cfg)
{
    if (!(cfg.dt_s > 0.0) || !std::isfinite(cfg.dt_s))
        throw ConfigError("sim.dt_s", "must be > 0");
    if (cfg.dt_s > 3600.0)
        throw ConfigError("sim.dt_s", "must not exceed 3600 s");
    if (cfg.duration_days < 1)
        throw ConfigError("sim.duration_days", "must be >= 1");
    if (cfg.output_stride < 1)
        throw ConfigError("sim.output_stride", "must be >= 1");
    if (!(cfg.threshold_V > 0.0))
        throw ConfigError("sim.threshold_v", "must be > 0");

    battery::validate(cfg.battery);
    harvest::validate(cfg.panel);
    harvest::validate(cfg.irradiance);
    harvest::validate(cfg.solar_charger);
    usb::validate(cfg.usb);
    load::validate(cfg.load.model);
    load::validate(cfg.schedule);
    control::validate(cfg.adc.divider);
    validate_windows(cfg.usb_windows, "usb.present_windows_s");
    validate_windows(cfg.reverse_polarity_windows, "solar_charger.reverse_polarity_windows_s");

    if (!(cfg.latch.t_long_s > 0.0))
        throw ConfigError("buttons.t_long_s", "must be > 0");
    if (!(cfg.latch.t_shutdown_s > 0.0))
        throw ConfigError("shutdown.t_shutdown_s", "must be > 0");
    for (const auto& p : cfg.presses)
        if (!(p.t_s >= 0.0 && p.duration_s > 0.0))
            throw ConfigError("buttons.presses", "need t >= 0 and duration > 0");

    if (cfg.rtc.enabled) {
        const double period = cfg.rtc.wake_period_s.value_or(cfg.schedule.capture_interval_s);
        if (!(period > 0.0))
            throw ConfigError("rtc.wake_period_s", "must be > 0");
        if (cfg.dt_s > period)
            throw ConfigError("sim.dt_s", "must not exceed the RTC wake period");
        if (cfg.rtc.first_wake_s && !(*cfg.rtc.first_wake_s >= 0.0))
            throw ConfigError("rtc.first_wake_s", "must be >= 0");
        if (!(cfg.rtc.pulse_width_s > 0.0 && cfg.rtc.pulse_width_s < cfg.latch.t_long_s))
            throw ConfigError("rtc.pulse_width_s", "must be > 0 and shorter than a long press");
    }
}

long total_steps(const SimConfig& cfg)
{
    return static_cast<long>(std::llround(cfg.duration_days * kDay / cfg.dt_s));
}

void simulate(const SimConfig& cfg, const StepSink& sink)
{
    validate(cfg);

    const double dt = cfg.dt_s;
    const long n_steps = total_steps(cfg);
    const auto& model = cfg.load.model;

    battery::BatteryPack pack = cfg.battery;
    harvest::SolarChargerState solar = harvest::make_solar_charger(cfg.solar_charger);
    usb::UsbChargerState usbc = usb::make_usb_charger(cfg.usb);
    powerpath::LatchState latch;
    latch.on = cfg.latch_on_at_start;
    Device device;
    if (latch.on)
        device.power_on();

    control::RtcState rtc;
    rtc.pulse_width_s = cfg.rtc.pulse_width_s;
    if (cfg.rtc.enabled) {
        const double period = cfg.rtc.wake_period_s.value_or(cfg.schedule.capture_interval_s);
        const double first = cfg.rtc.first_wake_s.value_or(cfg.schedule.sunrise_s);
        // Expire during the step that starts at `first`.
        rtc = control::arm_countdown(rtc, period, first + dt);
    }

    const auto edges = press_edges(cfg);
    const auto shutdowns = to_steps(cfg.shutdown_times_s, dt);
    const auto resets = to_steps(cfg.protection_reset_times_s, dt);
    std::size_t edge_i = 0, shutdown_i = 0, reset_i = 0;

    const double t_capture_end = model.t_boot_s + model.t_capture_s;
    const double adc_g = 1.0 / cfg.adc.divider.r_total_ohm;

    double e_h = 0.0, e_c = 0.0, e_l = 0.0, e_b = 0.0;
    InputSource prev_source = InputSource::None;

    SimStep rec;
    for (long k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        const double tod = std::fmod(t, kDay);
        EventSet ev;

        while (reset_i < resets.size() && resets[reset_i] <= k) {
            if (resets[reset_i++] == k) {
                pack = battery::reset_protection(std::move(pack));
                ev.add(Event::ProtectionReset);
            }
        }

        // (1) RTC
        bool rtc_wake = false;
        if (cfg.rtc.enabled) {
            auto tick = control::rtc_tick(rtc, dt);
            rtc = tick.state;
            if (tick.pulse) {
                if (cfg.rtc.gate_to_schedule && !load::in_capture_window(cfg.schedule, tod)) {
                    ev.add(Event::RtcPulseMasked);
                } else {
                    ev.add(Event::RtcPulse);
                    rtc_wake = true;
                }
            }
        }

        // (2) latch
        while (shutdown_i < shutdowns.size() && shutdowns[shutdown_i] <= k) {
            if (shutdowns[shutdown_i++] == k && latch.on && device.running && !device.shutdown_line_low) {
                device.shutdown_line_low = true;
                ev.add(Event::ShutdownRequest);
            }
        }
        const bool was_on = latch.on;
        const bool line_low = device.shutdown_line_low && latch.on;
        if (rtc_wake)
            latch = powerpath::latch_step(latch, {powerpath::ButtonKind::RtcPulse, line_low}, 0.0, cfg.latch);
        powerpath::ButtonKind press = powerpath::ButtonKind::None;
        while (edge_i < edges.size() && edges[edge_i].step <= k) {
            // Several edges in one step: all but the last take no time.
            if (press != powerpath::ButtonKind::None)
                latch = powerpath::latch_step(latch, {press, line_low}, 0.0, cfg.latch);
            press = edges[edge_i].kind;
            ev.add(press == powerpath::ButtonKind::PressStart ? Event::ButtonPress : Event::ButtonRelease);
            ++edge_i;
        }
        latch = powerpath::latch_step(latch, {press, line_low}, dt, cfg.latch);
        if (latch.on && !was_on) {
            ev.add(Event::LatchOn);
            ev.add(Event::Boot);
            device.power_on();
        } else if (!latch.on && was_on) {
            ev.add(Event::LatchOff);
            device.power_off();
        }
        rtc.supply = control::rtc_supply_select(latch.on, 0.0);

        // (3) load phase
        load::LoadPhase phase = load::LoadPhase::Sleep;
        if (latch.on) {
            const double el = device.on_elapsed_s;
            if (el < model.t_boot_s) {
                phase = load::LoadPhase::Boot;
            } else if (el < t_capture_end) {
                phase = load::LoadPhase::Capture;
                if (el - dt < model.t_boot_s)
                    ev.add(Event::CaptureStart);
            } else {
                phase = load::LoadPhase::Idle;
                if (cfg.load.auto_shutdown && !device.shutdown_line_low) {
                    device.shutdown_line_low = true;
                    ev.add(Event::ShutdownRequest);
                }
            }
            device.on_elapsed_s += dt;
        }
        const bool capturing = phase == load::LoadPhase::Capture;
        auto lc = load::load_current_at(phase, model, false);
        double i5 = lc.i_5v_A + control::ext_power_enable(cfg.load.sensors_enabled && capturing, latch.on,
                                                          model.i_sensors_5v_A);
        if (latch.on)
            i5 += rtc.i_quiescent_A;
        const double g_adc = (cfg.adc.sample_on_capture && capturing) ? adc_g : 0.0;

        // (4) input selection
        const double g_sun = harvest::irradiance_at(cfg.irradiance, tod);
        const double p_pv = harvest::pv_available_power(cfg.panel, g_sun);
        const bool reverse = in_any(cfg.reverse_polarity_windows, t);
        if (reverse)
            ev.add(Event::ReversePolarity);
        const bool solar_present = !reverse && p_pv >= cfg.solar_charger.p_min_W;
        const bool usb_present = cfg.usb.p_usb_W > 0.0 && in_any(cfg.usb_windows, t);
        const InputSource source = harvest::select_input(solar_present, usb_present);
        if (k > 0 && source != prev_source)
            ev.add(Event::SourceChange);
        prev_source = source;

        // (5) charger plans
        auto solar_plan = harvest::plan_solar_charge(solar, cfg.solar_charger,
                                                     source == InputSource::Solar ? p_pv : 0.0, pack, dt,
                                                     reverse);
        auto usb_plan = usb::plan_usb_charge(usbc, cfg.usb, source == InputSource::Usb ? cfg.usb.p_usb_W : 0.0,
                                             pack, dt);
        if (solar_plan.became_full || usb_plan.became_full)
            ev.add(Event::ChargeFull);

        powerpath::AllocationRequest req;
        req.source = source;
        req.i_load_5v_A = i5;
        req.i_batt_const_A = lc.i_batt_side_extra_A;
        req.g_batt_S = g_adc;
        req.latch_on = latch.on;
        if (source == InputSource::Solar) {
            req.p_src_available_W = p_pv;
            req.eta_charger = cfg.solar_charger.eta;
            req.charge_limit_A = solar_plan.charge_limit_A;
        } else if (source == InputSource::Usb) {
            req.p_src_available_W = cfg.usb.p_usb_W;
            req.eta_charger = cfg.usb.eta;
            req.charge_limit_A = usb_plan.charge_limit_A;
        }

        // (6) allocation, (7) protection; a new trip re-runs the allocation.
        powerpath::Allocation alloc = powerpath::allocate(req, pack);
        for (int pass = 0; pass < 4; ++pass) {
            const double v_sense = battery::protection_sense_voltage(pack, alloc.flows.i_batt_net_A);
            const auto prot = battery::check_protection(pack, alloc.flows.i_batt_net_A, v_sense);
            if (prot == pack.protection)
                break;
            if (prot.fault != pack.protection.fault && prot.fault != battery::Fault::None)
                ev.add(fault_event(prot.fault));
            pack.protection = prot;
            alloc = powerpath::allocate(req, pack);
        }
        ev.merge(alloc.events);
        if (alloc.latch_forced_off && latch.on) {
            latch = powerpath::latch_force_off(latch);
            device.power_off();
            ev.add(Event::LatchOff);
        }
        if (alloc.brownout) {
            // Rail collapsed: the charger restarts from idle.
            solar_plan.next.mode = harvest::SolarMode::Idle;
            solar_plan.next.led = harvest::SolarLed::Off;
            solar_plan.next.cv_elapsed_s = 0.0;
            usb_plan.next.mode = usb::UsbMode::Idle;
            usb_plan.next.led = usb::UsbLed::Off;
            usb_plan.next.cv_elapsed_s = 0.0;
        }
        solar = solar_plan.next;
        usbc = usb_plan.next;

        const auto& f = alloc.flows;
        const double ocv = battery::ocv_from_soc(pack, pack.soc);

        rec.t_s = t;
        rec.dt_s = dt;
        rec.v_bat_V = f.v_node;
        rec.soc = pack.soc;
        rec.ocv_V = ocv;
        rec.source = source;
        rec.solar_present = solar_present;
        rec.usb_present = usb_present;
        rec.i_solar_A = source == InputSource::Solar ? f.p_src_W / cfg.panel.v_mpp : 0.0;
        rec.i_usb_A = source == InputSource::Usb ? f.p_src_W / powerpath::kOutputVoltage : 0.0;
        rec.i_charge_A = f.i_src_to_batt_A;
        rec.i_charge_limit_A = req.charge_limit_A;
        rec.i_load_5v_A = f.i_load_5v_A;
        rec.i_load_5v_requested_A = req.latch_on ? i5 : 0.0;
        rec.i_batt_net_A = f.i_batt_net_A;
        rec.latch_on = latch.on;
        rec.charger_mode = source == InputSource::Usb     ? mode_of(usbc.mode)
                           : source == InputSource::Solar ? mode_of(solar.mode)
                                                          : ChargerMode::Idle;
        rec.led_solar = solar.led;
        rec.led_usb = usbc.led;
        rec.p_loss_W = f.p_loss_W;

        // (8) integrate
        auto upd = battery::integrate_soc(std::move(pack), f.i_batt_net_A, dt);
        pack = std::move(upd.pack);
        if (upd.clamped)
            ev.add(Event::SocClamp);

        // (9) ledger
        e_h += f.p_src_W * dt;
        e_c += (f.p_load_5v_W + f.p_batt_side_W) * dt;
        e_l += f.p_loss_W * dt;
        e_b += f.v_node * f.i_batt_net_A * dt;
        rec.e_harvested_J = e_h;
        rec.e_consumed_J = e_c;
        rec.e_loss_J = e_l;
        rec.e_battery_J = e_b;
        rec.events = ev;

        sink(rec);
    }
}

std::vector<SimStep> simulate(const SimConfig& cfg)
{
    std::vector<SimStep> out;
    validate(cfg);
    out.reserve(static_cast<std::size_t>(total_steps(cfg)));
    simulate(cfg, [&out](const SimStep& s) { out.push_back(s); });
    return out;
}

Report run_report(const SimConfig& cfg)
{
    ReportBuilder b;
    simulate(cfg, [&b](const SimStep& s) { b.add(s); });
    return b.finish(cfg.threshold_V);
}

} // namespace pmcs::engine
