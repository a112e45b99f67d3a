/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "pmcs/engine.hpp"

#include <filesystem>
#include <string_view>

namespace pmcs::scenario {

// Scenario files are line-oriented `key = value` pairs under `[section]`
// headers; `#` starts a comment. Unknown sections and keys are rejected.
// [sim] and [battery] are required, everything else has defaults.

/// Parses scenario text. Throws ConfigError naming `section.key`.
engine::SimConfig parse_scenario(std::string_view text);

/// Throws IoError when the file cannot be read, ConfigError when invalid.
engine::SimConfig load_scenario(const std::filesystem::path& path);

} // namespace pmcs::scenario
