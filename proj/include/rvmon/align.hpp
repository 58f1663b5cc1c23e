#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rvmon/stream.hpp"

namespace rvmon {

// Sample-and-hold alignment of several streams over the sorted union of
// their timestamps. A channel with no event yet is undefined at a tick.
struct AlignedTrace {
  std::vector<std::string> channels;
  std::vector<TimePoint> times;
  // values[tick][channel index]
  std::vector<std::vector<std::optional<Value>>> values;

  std::size_t channel_index(const std::string& name) const;
  // Smallest positive gap between consecutive ticks, 0 if fewer than 2.
  std::int64_t sample_period_ms() const;
};

AlignedTrace align(const std::vector<const EventStream*>& streams);

}  // namespace rvmon
