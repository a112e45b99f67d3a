/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace pmcs {

/// Raised when a scenario or component configuration is invalid. `field()`
/// names the offending entry as `section.key` (or just `section`).
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// File could not be read or written.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (e.g. a CSV that breaks the column contract).
class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (e.g. soc > 1).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

} // namespace pmcs
