#include "rvmon/align.hpp"

#include <algorithm>

#include "rvmon/errors.hpp"

namespace rvmon {

std::size_t AlignedTrace::channel_index(const std::string& name) const {
  for (std::size_t i = 0; i < channels.size(); ++i)
    if (channels[i] == name) return i;
  throw UnknownChannel("channel not aligned: " + name);
}

std::int64_t AlignedTrace::sample_period_ms() const {
  std::int64_t best = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    std::int64_t gap = times[i].ms - times[i - 1].ms;
    if (gap > 0 && (best == 0 || gap < best)) best = gap;
  }
  return best;
}

AlignedTrace align(const std::vector<const EventStream*>& streams) {
  AlignedTrace out;
  std::vector<TimePoint> all;
  for (const auto* s : streams) {
    out.channels.push_back(s->channel());
    for (const auto& e : s->events()) all.push_back(e.t);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  out.times = std::move(all);

  std::vector<std::size_t> cursor(streams.size(), 0);
  out.values.reserve(out.times.size());
  for (const auto& t : out.times) {
    std::vector<std::optional<Value>> row(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
      const auto& evs = streams[i]->events();
      while (cursor[i] < evs.size() && evs[cursor[i]].t <= t) ++cursor[i];
      if (cursor[i] > 0) row[i] = evs[cursor[i] - 1].value;
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

}  // namespace rvmon
