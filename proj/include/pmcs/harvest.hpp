/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/battery.hpp"

#include <vector>

namespace pmcs::harvest {

struct SolarPanel
{
    double p_rated_W = 5.0;
    double v_oc = 21.6;
    double v_mpp = 18.0;
    // Tracking loss of the fixed-voltage MPP divider versus true MPP.
    double k_mppt = 0.85;
};

void validate(const SolarPanel& panel);

enum class IrradianceKind { ClearSky, Constant, Trace };

struct TracePoint
{
    double t_s;
    double fraction;
};

struct IrradianceProfile
{
    IrradianceKind kind = IrradianceKind::ClearSky;
    double sunrise_s = 6.5 * 3600.0;
    double sunset_s = 17.5 * 3600.0;
    double peak_fraction = 0.8;
    std::vector<TracePoint> trace;
};

void validate(const IrradianceProfile& profile);

/// Irradiance as a fraction of standard conditions at a time of day.
double irradiance_at(const IrradianceProfile& profile, double t_s);

/// Power the charger can draw from the panel at irradiance fraction g.
double pv_available_power(const SolarPanel& panel, double g);

enum class InputSource { None, Solar, Usb };

const char* to_string(InputSource s);

/// Auto-switch: USB wins whenever it is present.
InputSource select_input(bool solar_present, bool usb_present);

enum class SolarMode { Idle, CC, CV, Full };
enum class SolarLed { Off, Red, Green };

const char* to_string(SolarMode m);
const char* to_string(SolarLed l);

struct SolarChargerParams
{
    bool jumper_3A = false;
    double eta = 0.94;
    double v_cv = 4.2;
    double term_fraction = 0.1;
    double tau_cv_s = 1800.0;
    double p_min_W = 0.05;
    double v_recharge = 4.1;
};

void validate(const SolarChargerParams& params);

struct SolarChargerState
{
    SolarMode mode = SolarMode::Idle;
    double i_setpoint_A = 2.0;
    SolarLed led = SolarLed::Off;
    double eta = 0.94;
    bool warning_led = false;  // reverse polarity on the panel input
    double cv_elapsed_s = 0.0;
    double cv_entry_A = 0.0;
};

SolarChargerState make_solar_charger(const SolarChargerParams& params);

/// Mode update and the charge-current ceiling for one step.
struct ChargePlan
{
    SolarChargerState next;
    double charge_limit_A = 0.0;
    double p_node_W = 0.0;  // power available at the battery node
    bool became_full = false;
};

ChargePlan plan_solar_charge(const SolarChargerState& st, const SolarChargerParams& params,
                             double p_pv_W, const battery::BatteryPack& pack, double dt_s,
                             bool reverse_polarity = false);

struct ChargerStepResult
{
    SolarChargerState state;
    double i_charge_A = 0.0;
    double i_to_load_A = 0.0;
    double p_loss_W = 0.0;
};

/// One step of the solar charger with the battery-side load tapped ahead of
/// the sense resistor: the load is served first, the remainder charges.
ChargerStepResult solar_charger_step(const SolarChargerState& st, const SolarChargerParams& params,
                                     double p_pv_W, const battery::BatteryPack& pack,
                                     double i_load_batt_side_A, double dt_s,
                                     bool reverse_polarity = false);

} // namespace pmcs::harvest
