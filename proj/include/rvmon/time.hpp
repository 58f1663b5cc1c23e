#pragma once
#include <cmath>
#include <cstdint>

namespace rvmon {

// Timestamps are kept in integer milliseconds so that values on the 0.1 s
// sampling grid (and attack times like 3.1 s) compare exactly.
struct TimePoint {
  std::int64_t ms = 0;

  static TimePoint from_seconds(double s) {
    return TimePoint{static_cast<std::int64_t>(std::llround(s * 1000.0))};
  }
  double seconds() const { return static_cast<double>(ms) / 1000.0; }

  auto operator<=>(const TimePoint&) const = default;
};

}  // namespace rvmon
