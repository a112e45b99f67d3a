/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/batch.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

#include <vector>

namespace {

// Two simulated days per scenario, spread over sky conditions and start SoC.
std::vector<pmcs::engine::SimConfig> make_batch(int n)
{
    std::vector<pmcs::engine::SimConfig> out;
    for (int k = 0; k < n; ++k) {
        pmcs::engine::SimConfig cfg;
        cfg.duration_days = 2;
        cfg.schedule.day_count = 2;
        cfg.rtc.enabled = true;
        cfg.rtc.wake_period_s = 1800.0;
        cfg.rtc.first_wake_s = cfg.schedule.sunrise_s;
        cfg.irradiance.peak_fraction = 0.2 + 0.8 * (k % 5) / 4.0;
        cfg.battery.soc = 0.3 + 0.7 * (k % 7) / 6.0;
        out.push_back(cfg);
    }
    return out;
}

void BM_BatchSerial(benchmark::State& state)
{
    const auto cfgs = make_batch(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pmcs::batch::run_batch_serial(cfgs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchOpenMP(benchmark::State& state)
{
    const auto cfgs = make_batch(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pmcs::batch::run_batch(cfgs, omp_get_max_threads()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchOpenMP)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
