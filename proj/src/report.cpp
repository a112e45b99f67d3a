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

namespace {

constexpr double kDay = 86400.0;

long count_of(const std::array<long, kEventCount>& c, Event e)
{
    return c[static_cast<std::size_t>(e)];
}

} // namespace

double Report::relative_residual() const
{
    return energy_residual_J / std::max({e_harvested_J, e_consumed_J, 1.0});
}

ReportSample sample_of(const SimStep& step)
{
    ReportSample s;
    s.t_s = step.t_s;
    s.dt_s = step.dt_s;
    s.v_bat_V = step.v_bat_V;
    s.soc = step.soc;
    s.i_batt_net_A = step.i_batt_net_A;
    s.e_harvested_J = step.e_harvested_J;
    s.e_consumed_J = step.e_consumed_J;
    s.e_loss_J = step.e_loss_J;
    for (int k = 0; k < kEventCount; ++k)
        s.event_counts[k] = step.events.has(static_cast<Event>(k)) ? 1 : 0;
    return s;
}

void ReportBuilder::close_day()
{
    if (day_dt_ <= 0.0)
        return;
    const double avg = day_v_dt_ / day_dt_;
    min_day_avg_ = have_day_ ? std::min(min_day_avg_, avg) : avg;
    have_day_ = true;
    day_v_dt_ = 0.0;
    day_dt_ = 0.0;
}

void ReportBuilder::add(const ReportSample& s)
{
    if (steps_ == 0) {
        min_v_ = max_v_ = s.v_bat_V;
        min_soc_ = s.soc;
    } else {
        min_v_ = std::min(min_v_, s.v_bat_V);
        max_v_ = std::max(max_v_, s.v_bat_V);
        min_soc_ = std::min(min_soc_, s.soc);
    }
    ++steps_;

    const long day = static_cast<long>(std::floor(s.t_s / kDay));
    if (day != day_) {
        close_day();
        day_ = day;
    }
    day_v_dt_ += s.v_bat_V * s.dt_s;
    day_dt_ += s.dt_s;

    sum_dt_ += s.dt_s;
    sum_vi_dt_ += s.v_bat_V * s.i_batt_net_A * s.dt_s;
    sum_i_dt_ += s.i_batt_net_A * s.dt_s;
    e_h_ = s.e_harvested_J;
    e_c_ = s.e_consumed_J;
    e_l_ = s.e_loss_J;
    for (int k = 0; k < kEventCount; ++k)
        counts_[k] += s.event_counts[k];
}

Report ReportBuilder::finish(double threshold_V) const
{
    if (steps_ == 0)
        throw DomainError("summarize: empty series");

    ReportBuilder tail = *this;
    tail.close_day();

    Report r;
    r.min_v_bat_V = min_v_;
    r.max_v_bat_V = max_v_;
    r.min_soc = min_soc_;
    r.min_daily_avg_v_bat_V = tail.min_day_avg_;
    r.threshold_V = threshold_V;
    r.self_sustainable = min_v_ >= threshold_V;
    r.total_captures = count_of(counts_, Event::CaptureStart);
    r.wake_count = count_of(counts_, Event::LatchOn);
    r.charge_full_count = count_of(counts_, Event::ChargeFull);
    r.brownout_count = count_of(counts_, Event::Brownout);
    r.load_shed_count = count_of(counts_, Event::LoadShed);
    r.fault_count = count_of(counts_, Event::FaultOverDischarge) + count_of(counts_, Event::FaultOverCharge) +
                    count_of(counts_, Event::FaultOverCurrent) + count_of(counts_, Event::FaultShortCircuit);
    r.e_harvested_J = e_h_;
    r.e_consumed_J = e_c_;
    r.e_loss_J = e_l_;
    r.e_battery_J = sum_vi_dt_;
    r.energy_residual_J = std::fabs(sum_vi_dt_ - (e_h_ - e_c_ - e_l_));
    r.duration_s = sum_dt_;
    r.avg_batt_power_W = sum_dt_ > 0.0 ? sum_vi_dt_ / sum_dt_ : 0.0;
    r.avg_batt_current_A = sum_dt_ > 0.0 ? sum_i_dt_ / sum_dt_ : 0.0;
    r.steps = steps_;
    return r;
}

Report summarize(std::span<const SimStep> steps, double threshold_V)
{
    ReportBuilder b;
    for (const auto& s : steps)
        b.add(s);
    return b.finish(threshold_V);
}

double ledger_residual(std::span<const SimStep> steps)
{
    if (steps.empty())
        throw DomainError("ledger_residual: empty series");
    return summarize(steps, 0.0).energy_residual_J;
}

} // namespace pmcs::engine
