#pragma once

namespace confmodels {

/// Bumped whenever a change can alter computed results; part of the cache key.
inline constexpr const char* engine_version = "confmodels-engine-1";

}  // namespace confmodels
