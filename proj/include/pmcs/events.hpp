/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pmcs {

enum class Event : std::uint8_t {
    RtcPulse,
    RtcPulseMasked,
    ButtonPress,
    ButtonRelease,
    LatchOn,
    LatchOff,
    Boot,
    CaptureStart,
    ShutdownRequest,
    LoadShed,
    Dropout,
    Brownout,
    BatteryDisconnected,
    SocClamp,
    FaultOverDischarge,
    FaultOverCharge,
    FaultOverCurrent,
    FaultShortCircuit,
    ProtectionReset,
    ReversePolarity,
    ChargeFull,
    SourceChange,
    Count_
};

inline constexpr int kEventCount = static_cast<int>(Event::Count_);

std::string_view token(Event e);
std::optional<Event> parse_event(std::string_view token);

/// Set of events raised during one step.
class EventSet
{
public:
    void add(Event e) { bits_ |= bit(e); }
    bool has(Event e) const { return (bits_ & bit(e)) != 0; }
    bool empty() const { return bits_ == 0; }
    void merge(EventSet other) { bits_ |= other.bits_; }
    std::uint32_t bits() const { return bits_; }

    /// `;`-joined tokens in enum order, empty string for no events.
    std::string to_string() const;

    bool operator==(const EventSet&) const = default;

private:
    static std::uint32_t bit(Event e) { return 1u << static_cast<unsigned>(e); }
    std::uint32_t bits_ = 0;
};

static_assert(kEventCount <= 32);

} // namespace pmcs
