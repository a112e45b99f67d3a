/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/batch.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

namespace pmcs::batch {

namespace {

constexpr double kTol = 1e-9;

struct Auditor
{
    const engine::SimConfig& cfg;
    InvariantTally tally;
    double ocv_full;
    double prev_e_h = 0.0, prev_e_c = 0.0, prev_e_l = 0.0;
    harvest::InputSource prev_source = harvest::InputSource::None;

    explicit Auditor(const engine::SimConfig& c)
        : cfg(c), ocv_full(c.battery.ocv_anchors.back().volts)
    {}

    void operator()(const engine::SimStep& s)
    {
        auto& t = tally;
        ++t.steps;
        if (s.i_load_5v_A > 0.0 && s.v_bat_V < cfg.battery.thresholds.v_overdischarge)
            ++t.v_below_cutoff_while_loaded;
        if (s.i_load_5v_A > powerpath::kBoostCurrentLimitA + kTol ||
            (s.i_load_5v_requested_A > powerpath::kBoostCurrentLimitA && !s.events.has(Event::LoadShed)))
            ++t.load_over_limit_unshed;
        if (s.ocv_V > ocv_full + kTol)
            ++t.ocv_above_full;
        if (s.solar_present && s.usb_present)
            ++t.both_sources_present;
        if (s.events.has(Event::SourceChange) && s.source != harvest::InputSource::None &&
            prev_source != harvest::InputSource::None)
            ++t.source_handoffs;
        prev_source = s.source;
        if (s.events.has(Event::Brownout))
            ++t.brownouts;
        if (s.solar_present && s.usb_present &&
            (s.i_solar_A != 0.0 || s.source != harvest::InputSource::Usb))
            ++t.solar_current_with_usb;
        if (!(s.soc >= 0.0 && s.soc <= 1.0))
            ++t.soc_out_of_range;
        const double setpoint = s.source == harvest::InputSource::Usb ? cfg.usb.i_cc_A
                                : cfg.solar_charger.jumper_3A       ? 3.0
                                                                    : 2.0;
        if (s.i_charge_A > setpoint + kTol)
            ++t.charge_above_setpoint;
        if (s.events.has(Event::Brownout) && s.i_charge_A >= setpoint - kTol)
            ++t.charge_at_setpoint_and_brownout;
        if (s.i_batt_net_A < 0.0 && s.events.has(Event::BatteryDisconnected))
            ++t.discharge_while_disabled;
        if (s.e_harvested_J < prev_e_h || s.e_consumed_J < prev_e_c || s.e_loss_J < prev_e_l)
            ++t.energy_not_monotone;
        prev_e_h = s.e_harvested_J;
        prev_e_c = s.e_consumed_J;
        prev_e_l = s.e_loss_J;
    }
};

} // namespace

long InvariantTally::violations() const
{
    return v_below_cutoff_while_loaded + load_over_limit_unshed + ocv_above_full + solar_current_with_usb +
           soc_out_of_range + charge_above_setpoint + charge_at_setpoint_and_brownout +
           discharge_while_disabled + energy_not_monotone;
}

RunResult run_audited(const engine::SimConfig& cfg)
{
    Auditor audit(cfg);
    engine::ReportBuilder builder;
    engine::simulate(cfg, [&](const engine::SimStep& s) {
        audit(s);
        builder.add(s);
    });
    return {builder.finish(cfg.threshold_V), audit.tally};
}

std::vector<RunResult> run_batch_serial(std::span<const engine::SimConfig> configs)
{
    std::vector<RunResult> out;
    out.reserve(configs.size());
    for (const auto& cfg : configs)
        out.push_back(run_audited(cfg));
    return out;
}

std::vector<RunResult> run_batch(std::span<const engine::SimConfig> configs, int threads)
{
    std::vector<RunResult> out(configs.size());
    const auto n = static_cast<long>(configs.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

    // Exceptions must not escape the parallel region; keep the first one.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = run_audited(configs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(pmcs_batch_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace pmcs::batch
