/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/battery.hpp"
#include "pmcs/control.hpp"
#include "pmcs/events.hpp"
#include "pmcs/harvest.hpp"
#include "pmcs/load.hpp"
#include "pmcs/powerpath.hpp"
#include "pmcs/usbcharge.hpp"

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pmcs::engine {

struct TimeWindow
{
    double start_s;
    double end_s;

    bool contains(double t) const { return t >= start_s && t < end_s; }
};

struct ButtonPress
{
    double t_s;
    double duration_s;
};

struct RtcConfig
{
    bool enabled = true;
    std::optional<double> wake_period_s;  // defaults to the capture interval
    std::optional<double> first_wake_s;   // defaults to the first sunrise
    double pulse_width_s = 0.25;
    // Pulses outside the capture window are masked (interrupt disabled by
    // the firmware overnight).
    bool gate_to_schedule = true;
};

struct AdcConfig
{
    bool sample_on_capture = true;
    control::AdcDivider divider{};
};

struct LoadConfig
{
    load::LoadModel model{};
    bool sensors_enabled = true;
    bool auto_shutdown = true;  // firmware pulls the shutdown line after a capture
};

struct SimConfig
{
    double dt_s = 1.0;
    int duration_days = 1;
    double threshold_V = 4.0;
    int output_stride = 60;

    battery::BatteryPack battery{};
    std::vector<double> protection_reset_times_s;

    harvest::SolarPanel panel{};
    harvest::IrradianceProfile irradiance{};
    harvest::SolarChargerParams solar_charger{};
    std::vector<TimeWindow> reverse_polarity_windows;

    usb::UsbChargerParams usb{};
    std::vector<TimeWindow> usb_windows;

    LoadConfig load{};
    load::DutyCycleSchedule schedule{};
    RtcConfig rtc{};
    AdcConfig adc{};

    powerpath::LatchParams latch{};
    bool latch_on_at_start = false;
    std::vector<ButtonPress> presses;
    std::vector<double> shutdown_times_s;
};

/// Throws ConfigError naming the offending field.
void validate(const SimConfig& cfg);

long total_steps(const SimConfig& cfg);

enum class ChargerMode { Idle, Trickle, CC, CV, Full };

const char* to_string(ChargerMode m);

struct SimStep
{
    double t_s = 0.0;
    double v_bat_V = 0.0;
    double soc = 0.0;
    harvest::InputSource source = harvest::InputSource::None;
    double i_solar_A = 0.0;   // panel current at the MPP voltage
    double i_usb_A = 0.0;     // USB input current at 5 V
    double i_charge_A = 0.0;
    double i_load_5v_A = 0.0;
    double i_batt_net_A = 0.0;
    bool latch_on = false;
    ChargerMode charger_mode = ChargerMode::Idle;
    harvest::SolarLed led_solar = harvest::SolarLed::Off;
    usb::UsbLed led_usb = usb::UsbLed::Off;
    double p_loss_W = 0.0;
    double e_harvested_J = 0.0;  // cumulative
    double e_consumed_J = 0.0;
    double e_loss_J = 0.0;
    EventSet events;

    // Not part of the CSV contract.
    double dt_s = 0.0;
    double ocv_V = 0.0;
    double i_load_5v_requested_A = 0.0;
    double i_charge_limit_A = 0.0;
    double e_battery_J = 0.0;  // cumulative terminal energy into the pack
    bool solar_present = false;
    bool usb_present = false;
};

using StepSink = std::function<void(const SimStep&)>;

/// Runs the scenario, handing every step to `sink` as it is produced.
void simulate(const SimConfig& cfg, const StepSink& sink);

/// Convenience for short runs: collects the whole series.
std::vector<SimStep> simulate(const SimConfig& cfg);

struct Report
{
    double min_v_bat_V = 0.0;
    double max_v_bat_V = 0.0;
    double min_soc = 0.0;
    double min_daily_avg_v_bat_V = 0.0;
    double threshold_V = 4.0;
    bool self_sustainable = false;
    long total_captures = 0;
    long wake_count = 0;
    long charge_full_count = 0;
    long brownout_count = 0;
    long load_shed_count = 0;
    long fault_count = 0;
    double e_harvested_J = 0.0;
    double e_consumed_J = 0.0;
    double e_loss_J = 0.0;
    double e_battery_J = 0.0;
    double energy_residual_J = 0.0;
    double avg_batt_power_W = 0.0;   // mean of v * i_net, + = charging
    double avg_batt_current_A = 0.0;
    double duration_s = 0.0;
    long steps = 0;

    /// Residual relative to max(E_harvested, E_consumed, 1 J).
    double relative_residual() const;

    bool operator==(const Report&) const = default;
};

/// One sample of the series as seen by the report: either a full-resolution
/// step or a (possibly decimated) CSV row.
struct ReportSample
{
    double t_s = 0.0;
    double dt_s = 0.0;  // time this sample stands for
    double v_bat_V = 0.0;
    double soc = 0.0;
    double i_batt_net_A = 0.0;
    double e_harvested_J = 0.0;
    double e_consumed_J = 0.0;
    double e_loss_J = 0.0;
    std::array<int, kEventCount> event_counts{};
};

ReportSample sample_of(const SimStep& step);

/// Streaming aggregation; no series buffering.
class ReportBuilder
{
public:
    void add(const ReportSample& s);
    void add(const SimStep& step) { add(sample_of(step)); }
    bool empty() const { return steps_ == 0; }

    /// Throws DomainError when nothing was added.
    Report finish(double threshold_V) const;

private:
    long steps_ = 0;
    double min_v_ = 0.0, max_v_ = 0.0, min_soc_ = 0.0;
    double sum_dt_ = 0.0, sum_vi_dt_ = 0.0, sum_i_dt_ = 0.0;
    double e_h_ = 0.0, e_c_ = 0.0, e_l_ = 0.0;
    std::array<long, kEventCount> counts_{};
    long day_ = -1;
    double day_v_dt_ = 0.0, day_dt_ = 0.0;
    double min_day_avg_ = 0.0;
    bool have_day_ = false;

    void close_day();
};

/// |dE_battery - (E_harvested - E_consumed - E_loss)| over a series.
double ledger_residual(std::span<const SimStep> steps);

Report summarize(std::span<const SimStep> steps, double threshold_V);

/// Runs a scenario and reports without keeping the series.
Report run_report(const SimConfig& cfg);

} // namespace pmcs::engine
