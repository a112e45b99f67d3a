/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

namespace pmcs::battery {

// Demand drawn at the battery node, split by how it depends on node voltage:
// constant power (boost input), constant current (quiescent floor) and a
// conductance (resistive divider).
struct NodeDemand
{
    double p_const_W = 0.0;
    double i_const_A = 0.0;
    double g_S = 0.0;

    double current_at(double v) const { return p_const_W / v + i_const_A + g_S * v; }
};

struct NodeSolution
{
    bool feasible = true;
    double v = 0.0;               // node (= battery terminal) voltage
    double i_load_A = 0.0;        // total demand current at v
    double i_src_to_load_A = 0.0;
    double i_src_to_batt_A = 0.0;
    double i_shortfall_A = 0.0;   // drawn from the battery
    double i_net_A = 0.0;         // battery current, + = charging

    double source_power_W() const { return v * (i_src_to_load_A + i_src_to_batt_A); }
};

/// Solves the battery node self-consistently: v = ocv + r * i_net, where a
/// power-limited source feeds the load first and charges with what remains,
/// capped at `charge_limit_A`. Closed form, no iteration.
NodeSolution solve_battery_node(double ocv, double r_ohm, double p_source_W,
                                double charge_limit_A, const NodeDemand& demand);

} // namespace pmcs::battery
