/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/engine.hpp"

#include <span>
#include <vector>

namespace pmcs::batch {

// Per-run invariant audit gathered while the scenario streams through.
struct InvariantTally
{
    long steps = 0;
    long v_below_cutoff_while_loaded = 0;  // v_term < 2.4 V with a 5 V load served
    long load_over_limit_unshed = 0;       // request > 2.4 A without LOAD_SHED, or served > 2.4 A
    long ocv_above_full = 0;               // OCV > 4.2 V
    long solar_current_with_usb = 0;       // both inputs present but solar current or source != USB
    long soc_out_of_range = 0;
    long charge_above_setpoint = 0;
    long charge_at_setpoint_and_brownout = 0;
    long discharge_while_disabled = 0;
    long energy_not_monotone = 0;

    // Coverage, not violations: how often the run exercised these paths.
    long both_sources_present = 0;
    long source_handoffs = 0;     // solar <-> USB
    long brownouts = 0;

    long violations() const;
    bool operator==(const InvariantTally&) const = default;
};

struct RunResult
{
    engine::Report report;
    InvariantTally tally;
};

/// Single scenario with the invariant audit attached.
RunResult run_audited(const engine::SimConfig& cfg);

/// Reference path: scenarios one after another on the calling thread.
std::vector<RunResult> run_batch_serial(std::span<const engine::SimConfig> configs);

/// OpenMP path: scenarios share nothing, so each one is an independent work
/// item. Results are identical to the serial path.
std::vector<RunResult> run_batch(std::span<const engine::SimConfig> configs, int threads = 0);

} // namespace pmcs::batch
