/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

// CC/CV helpers shared by the solar and USB charger models.

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmcs::detail {

inline bool reaches_cv(double ocv, double i_cc_A, double r_ohm, double v_cv)
{
    return ocv + i_cc_A * r_ohm >= v_cv;
}

// CV current ceiling: the exponential taper from the CV entry current, never
// more than what keeps the terminal at v_cv.
inline double cv_current_limit(double i_entry_A, double elapsed_s, double tau_s,
                               double v_cv, double ocv, double r_ohm)
{
    const double taper = i_entry_A * std::exp(-elapsed_s / tau_s);
    const double hold = r_ohm > 0.0 ? std::max(0.0, (v_cv - ocv) / r_ohm)
                                    : std::numeric_limits<double>::infinity();
    return std::min(taper, hold);
}

} // namespace pmcs::detail
