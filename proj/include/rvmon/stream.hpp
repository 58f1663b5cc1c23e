#pragma once
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rvmon/time.hpp"
#include "rvmon/value.hpp"

namespace rvmon {

struct Event {
  TimePoint t;
  Value value;
};

// One named channel of timestamped events. Timestamps are strictly
// increasing and all events carry the same value kind.
class EventStream {
 public:
  EventStream() = default;
  explicit EventStream(std::string channel) : channel_(std::move(channel)) {}

  const std::string& channel() const { return channel_; }
  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }

  std::optional<Kind> kind() const {
    if (events_.empty()) return std::nullopt;
    return kind_of(events_.front().value);
  }

  // Throws NonMonotoneTimestamp / KindMismatch.
  void append(const Event& e);

  // Prefix of all events with t <= cut.
  EventStream truncated(TimePoint cut) const;

 private:
  std::string channel_;
  std::vector<Event> events_;
};

using Trace = std::map<std::string, EventStream>;

// The last depth+1 samples of one channel; realizes a bounded prefix window.
class StreamWindow {
 public:
  StreamWindow(std::string channel, std::size_t depth)
      : channel_(std::move(channel)), depth_(depth) {}

  const std::string& channel() const { return channel_; }
  std::size_t depth() const { return depth_; }
  std::size_t size() const { return buf_.size(); }

  void push(const Event& e);

  std::optional<Event> latest() const;
  // Event immediately before the most recent one; absent with <2 samples.
  std::optional<Event> prev() const;
  // k counts back from the latest sample (0 = latest).
  std::optional<Event> at_back(std::size_t k) const;

 private:
  std::string channel_;
  std::size_t depth_;
  std::deque<Event> buf_;
};

}  // namespace rvmon
