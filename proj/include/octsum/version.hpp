#pragma once

namespace octsum {

// Bump on any behaviour change: certificates and persisted caches are keyed
// by this string.
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace octsum
