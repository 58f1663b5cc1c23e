#include "rvmon/stream.hpp"

#include "rvmon/errors.hpp"

namespace rvmon {

void EventStream::append(const Event& e) {
  if (e.t.ms < 0)
    throw NonMonotoneTimestamp("negative timestamp on channel " + channel_);
  if (!events_.empty()) {
    if (e.t <= events_.back().t)
      throw NonMonotoneTimestamp(
          "channel " + channel_ + ": t=" + std::to_string(e.t.seconds()) +
          " not after t=" + std::to_string(events_.back().t.seconds()));
    if (kind_of(e.value) != kind_of(events_.front().value))
      throw KindMismatch("channel " + channel_ + ": event kind " +
                         kind_name(kind_of(e.value)) + " differs from stream kind " +
                         kind_name(kind_of(events_.front().value)));
  }
  events_.push_back(e);
}

EventStream EventStream::truncated(TimePoint cut) const {
  EventStream out(channel_);
  for (const auto& e : events_) {
    if (e.t > cut) break;
    out.events_.push_back(e);
  }
  return out;
}

void StreamWindow::push(const Event& e) {
  if (!buf_.empty() && e.t <= buf_.back().t)
    throw NonMonotoneTimestamp("window " + channel_ + ": non-increasing timestamp");
  buf_.push_back(e);
  while (buf_.size() > depth_ + 1) buf_.pop_front();
}

std::optional<Event> StreamWindow::latest() const {
  if (buf_.empty()) return std::nullopt;
  return buf_.back();
}

std::optional<Event> StreamWindow::prev() const { return at_back(1); }

std::optional<Event> StreamWindow::at_back(std::size_t k) const {
  if (buf_.size() <= k) return std::nullopt;
  return buf_[buf_.size() - 1 - k];
}

}  // namespace rvmon
