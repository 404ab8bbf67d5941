// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>

#include "cutstack/tower.hpp"

namespace cutstack {

// Versioned structured-text snapshot of a tower. Widths are written as
// "num/den" strings, so round-trips are bit-exact at any denominator scale.
std::string snapshot_to_string(const Tower& t);
void save_snapshot(const Tower& t, const std::string& path);

// Parse errors carry byte positions (from the JSON reader) or the offending
// field path.
Tower snapshot_from_string(const std::string& text);
Tower load_snapshot(const std::string& path);

}  // namespace cutstack
