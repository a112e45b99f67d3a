/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/events.hpp"

#include <array>

namespace pmcs {

namespace {

constexpr std::array<std::string_view, kEventCount> kTokens = {
    "RTC_PULSE",
    "RTC_PULSE_MASKED",
    "BUTTON_PRESS",
    "BUTTON_RELEASE",
    "LATCH_ON",
    "LATCH_OFF",
    "BOOT",
    "CAPTURE_START",
    "SHUTDOWN_REQUEST",
    "LOAD_SHED",
    "DROPOUT",
    "BROWNOUT",
    "BATTERY_DISCONNECTED",
    "SOC_CLAMP",
    "FAULT_OVER_DISCHARGE",
    "FAULT_OVER_CHARGE",
    "FAULT_OVER_CURRENT",
    "FAULT_SHORT_CIRCUIT",
    "PROTECTION_RESET",
    "REVERSE_POLARITY",
    "CHARGE_FULL",
    "SOURCE_CHANGE",
};

} // namespace

std::string_view token(Event e)
{
    return kTokens[static_cast<std::size_t>(e)];
}

std::optional<Event> parse_event(std::string_view tok)
{
    for (int k = 0; k < kEventCount; ++k)
        if (kTokens[k] == tok)
            return static_cast<Event>(k);
    return std::nullopt;
}

std::string EventSet::to_string() const
{
    std::string out;
    for (int k = 0; k < kEventCount; ++k) {
        if (!has(static_cast<Event>(k)))
            continue;
        if (!out.empty())
            out += ';';
        out += kTokens[k];
    }
    return out;
}

} // namespace pmcs
