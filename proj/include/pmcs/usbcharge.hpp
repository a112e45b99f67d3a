/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/battery.hpp"

namespace pmcs::usb {

enum class UsbMode { Idle, Trickle, CC, CV, Full };
enum class UsbLed { Off, Blink05Hz, Solid };

const char* to_string(UsbMode m);
const char* to_string(UsbLed l);

struct UsbChargerParams
{
    double p_usb_W = 10.0;      // available input power (5 V x 2 A)
    double p_rated_max_W = 15.0;
    double i_cc_A = 2.65;
    double i_trickle_A = 0.10;
    double v_trickle = 3.0;
    double i_term_A = 0.265;
    double v_cv = 4.2;
    double tau_cv_s = 1800.0;
    double v_recharge = 4.1;
    double eta = 0.94;
    bool usb_data_connected = false;  // data pass-through is not modelled further
};

void validate(const UsbChargerParams& params);

struct UsbChargerState
{
    UsbMode mode = UsbMode::Idle;
    UsbLed led = UsbLed::Off;
    double i_cc_A = 2.65;
    double i_trickle_A = 0.10;
    double eta = 0.94;
    double cv_elapsed_s = 0.0;
    double cv_entry_A = 0.0;
};

UsbChargerState make_usb_charger(const UsbChargerParams& params);

struct UsbChargePlan
{
    UsbChargerState next;
    double charge_limit_A = 0.0;
    bool became_full = false;
};

/// Mode update for one step with USB power present (or absent when
/// `p_usb_W` is 0). Trickle/CC decisions use the rested pack voltage.
UsbChargePlan plan_usb_charge(const UsbChargerState& st, const UsbChargerParams& params,
                              double p_usb_W, const battery::BatteryPack& pack, double dt_s);

struct UsbStepResult
{
    UsbChargerState state;
    double i_charge_A = 0.0;
    double i_to_load_A = 0.0;
    double p_loss_W = 0.0;
};

/// USB charger step with the battery-side load fed from USB first.
UsbStepResult usb_charger_step(const UsbChargerState& st, const UsbChargerParams& params,
                               double p_usb_W, const battery::BatteryPack& pack,
                               double i_load_batt_side_A, double dt_s);

} // namespace pmcs::usb
