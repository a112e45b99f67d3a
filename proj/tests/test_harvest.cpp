/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/battery.hpp"
#include "pmcs/errors.hpp"
#include "pmcs/harvest.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pmcs;
using namespace pmcs::harvest;

namespace {

battery::BatteryPack at_soc(double soc)
{
    battery::BatteryPack p;
    p.soc = soc;
    return p;
}

} // namespace

TEST_CASE("clear sky irradiance")
{
    IrradianceProfile p;
    p.peak_fraction = 1.0;
    const double mid = 0.5 * (p.sunrise_s + p.sunset_s);
    CHECK(irradiance_at(p, mid) == doctest::Approx(1.0));
    CHECK(irradiance_at(p, p.sunrise_s) == 0.0);
    CHECK(irradiance_at(p, p.sunset_s) == 0.0);
    CHECK(irradiance_at(p, p.sunrise_s + 0.25 * (p.sunset_s - p.sunrise_s)) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
    CHECK(irradiance_at(p, 3600.0) == 0.0);
    CHECK(irradiance_at(p, 80000.0) == 0.0);
    CHECK_THROWS_AS(irradiance_at(p, -1.0), DomainError);
    CHECK_THROWS_AS(irradiance_at(p, 86400.0), DomainError);
}

TEST_CASE("constant and trace irradiance")
{
    IrradianceProfile c;
    c.kind = IrradianceKind::Constant;
    c.peak_fraction = 0.3;
    CHECK(irradiance_at(c, c.sunrise_s) == 0.3);
    CHECK(irradiance_at(c, 1000.0) == 0.0);

    IrradianceProfile t;
    t.kind = IrradianceKind::Trace;
    t.trace = {{30000.0, 0.0}, {40000.0, 1.0}, {50000.0, 0.5}};
    CHECK(irradiance_at(t, 0.0) == 0.0);
    CHECK(irradiance_at(t, 35000.0) == doctest::Approx(0.5));
    CHECK(irradiance_at(t, 45000.0) == doctest::Approx(0.75));
    CHECK(irradiance_at(t, 80000.0) == 0.5);
}

TEST_CASE("pv power")
{
    SolarPanel p;
    CHECK(pv_available_power(p, 0.0) == 0.0);
    CHECK(pv_available_power(p, 1.0) == doctest::Approx(4.25));
    p.p_rated_W = 50.0;
    CHECK(pv_available_power(p, 1.0) == doctest::Approx(42.5));
    CHECK_THROWS_AS(pv_available_power(p, 1.2), DomainError);
}

TEST_CASE("input priority")
{
    CHECK(select_input(true, true) == InputSource::Usb);
    CHECK(select_input(true, false) == InputSource::Solar);
    CHECK(select_input(false, true) == InputSource::Usb);
    CHECK(select_input(false, false) == InputSource::None);
}

TEST_CASE("solar charger CC at setpoint")
{
    SolarChargerParams params;
    auto st = make_solar_charger(params);
    auto r = solar_charger_step(st, params, 20.0, at_soc(0.5), 0.0, 1.0);
    CHECK(r.i_charge_A == 2.0);
    CHECK(r.state.mode == SolarMode::CC);
    CHECK(r.state.led == SolarLed::Red);
    CHECK(r.i_to_load_A == 0.0);

    params.jumper_3A = true;
    st = make_solar_charger(params);
    r = solar_charger_step(st, params, 20.0, at_soc(0.5), 0.0, 1.0);
    CHECK(r.i_charge_A == 3.0);
    CHECK(r.state.mode == SolarMode::CC);
}

TEST_CASE("solar charger at night and with reversed panel")
{
    SolarChargerParams params;
    auto st = make_solar_charger(params);
    auto r = solar_charger_step(st, params, 0.0, at_soc(0.5), 0.0, 1.0);
    CHECK(r.state.mode == SolarMode::Idle);
    CHECK(r.i_charge_A == 0.0);
    CHECK(r.i_to_load_A == 0.0);
    CHECK(r.state.led == SolarLed::Off);

    r = solar_charger_step(st, params, 20.0, at_soc(0.5), 0.0, 1.0, true);
    CHECK(r.state.mode == SolarMode::Idle);
    CHECK(r.state.warning_led);
    CHECK(r.i_charge_A == 0.0);
}

TEST_CASE("load is served before charging")
{
    SolarChargerParams params;
    auto st = make_solar_charger(params);
    // ~1.5 W at the node: carries 0.3 A of load, the rest charges
    auto r = solar_charger_step(st, params, 1.6, at_soc(0.5), 0.3, 1.0);
    CHECK(r.i_to_load_A == doctest::Approx(0.3));
    CHECK(r.i_charge_A > 0.0);
    CHECK(r.i_charge_A < 2.0);
}

TEST_CASE("CV taper ends in Full with a green led")
{
    SolarChargerParams params;
    auto st = make_solar_charger(params);
    auto pack = at_soc(0.85);
    bool saw_cv = false;
    int steps = 0;
    while (st.mode != SolarMode::Full && steps < 100000) {
        auto r = solar_charger_step(st, params, 20.0, pack, 0.0, 1.0);
        st = r.state;
        saw_cv |= st.mode == SolarMode::CV;
        if (st.mode == SolarMode::CV)
            CHECK(battery::terminal_voltage(pack, r.i_charge_A) <= 4.2 + 1e-9);
        pack = battery::step_soc(pack, r.i_charge_A, 1.0);
        ++steps;
    }
    CHECK(saw_cv);
    CHECK(st.mode == SolarMode::Full);
    CHECK(st.led == SolarLed::Green);
    CHECK(battery::ocv_from_soc(pack, pack.soc) <= 4.2);
    CHECK(battery::ocv_from_soc(pack, pack.soc) > 4.1);

    // full stays full while the pack sits above the recharge level
    auto again = solar_charger_step(st, params, 20.0, pack, 0.0, 1.0);
    CHECK(again.state.mode == SolarMode::Full);
    CHECK(again.i_charge_A == 0.0);
}

TEST_CASE("solar charger invariants over random inputs")
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> soc(0.0, 1.0), ppv(0.0, 30.0), load(0.0, 3.0);
    std::bernoulli_distribution jumper(0.5);
    for (int k = 0; k < 3000; ++k) {
        SolarChargerParams params;
        params.jumper_3A = jumper(rng);
        auto st = make_solar_charger(params);
        auto pack = at_soc(soc(rng));
        for (int s = 0; s < 5; ++s) {
            const double p = ppv(rng), il = load(rng);
            auto r = solar_charger_step(st, params, p, pack, il, 1.0);
            st = r.state;
            const double v = battery::terminal_voltage(pack, r.i_charge_A - (il - r.i_to_load_A));
            CHECK(r.i_charge_A <= st.i_setpoint_A + 1e-12);
            CHECK(r.i_charge_A >= 0.0);
            CHECK(params.eta * p >= v * (r.i_charge_A + r.i_to_load_A) - 1e-9);
            CHECK((st.led == SolarLed::Green) == (st.mode == SolarMode::Full));
            CHECK((st.led == SolarLed::Red) == (st.mode == SolarMode::CC || st.mode == SolarMode::CV));
            pack = battery::step_soc(pack, r.i_charge_A - (il - r.i_to_load_A), 1.0);
            CHECK(battery::ocv_from_soc(pack, pack.soc) <= 4.2);
        }
    }
}
