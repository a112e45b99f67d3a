/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/battery_node.hpp"

#include <algorithm>
#include <cmath>

namespace pmcs::battery {

NodeSolution solve_battery_node(double ocv, double r_ohm, double p_source_W,
                                double charge_limit_A, const NodeDemand& demand)
{
    NodeSolution s;
    const double p_src = std::max(p_source_W, 0.0);
    const double c = std::max(charge_limit_A, 0.0);

    // Source covers the whole demand plus the full charge limit.
    const double v_full = ocv + r_ohm * c;
    if (v_full > 0.0) {
        const double i_load = demand.current_at(v_full);
        if (p_src >= v_full * (i_load + c)) {
            s.v = v_full;
            s.i_load_A = i_load;
            s.i_src_to_load_A = i_load;
            s.i_src_to_batt_A = c;
            s.i_net_A = c;
            return s;
        }
    }

    // Source fully used: i_net = P/v - demand(v), v = ocv + r*i_net
    //   => (1 + r g) v^2 - (ocv - r b) v - r (P - a) = 0
    const double qa = 1.0 + r_ohm * demand.g_S;
    const double qb = ocv - r_ohm * demand.i_const_A;
    const double disc = qb * qb + 4.0 * qa * r_ohm * (p_src - demand.p_const_W);
    if (disc < 0.0) {
        s.feasible = false;
        return s;
    }
    const double v = (qb + std::sqrt(disc)) / (2.0 * qa);
    if (!(v > 0.0)) {
        s.feasible = false;
        return s;
    }
    s.v = v;
    s.i_load_A = demand.current_at(v);
    const double i_src = p_src / v;
    s.i_net_A = std::min(i_src - s.i_load_A, c);
    if (s.i_net_A >= 0.0) {
        s.i_src_to_load_A = s.i_load_A;
        s.i_src_to_batt_A = s.i_net_A;
    } else {
        s.i_src_to_load_A = i_src;
        s.i_shortfall_A = -s.i_net_A;
    }
    return s;
}

} // namespace pmcs::battery
