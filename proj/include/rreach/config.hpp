#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace rreach {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

inline long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || parsed <= 0) return fallback;
  return parsed;
}

}  // namespace detail

// Resource caps, overridable through the environment (documented in --help).

// Largest reach accepted by the transition-matrix builder (matrix side 2^{2r}).
inline int max_reach() { return static_cast<int>(detail::env_long("RREACH_MAX_R", 6)); }

// Largest k^{2n} accepted by the all-string-pairs oracle.
inline std::uint64_t max_string_enumeration() {
  return static_cast<std::uint64_t>(detail::env_long("RREACH_MAX_ENUM", 100000000L));
}

// Largest banded-cell count accepted by the 2^{cells} epsilon-enumeration oracle.
inline int max_band_cells() {
  return static_cast<int>(detail::env_long("RREACH_MAX_BAND_CELLS", 25));
}

}  // namespace rreach
