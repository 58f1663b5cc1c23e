#include "rvmon/attack.hpp"

#include <algorithm>
#include <cmath>

#include "rvmon/errors.hpp"

namespace rvmon {

void validate_attack(const AttackSpec& spec, double run_duration) {
  switch (spec.kind) {
    case AttackKind::None:
      return;
    case AttackKind::DataSpoof: {
      std::vector<std::pair<double, double>> windows;
      for (const auto& w : spec.schedule) {
        if (w.t_start < 0 || w.duration <= 0 ||
            w.t_start + w.duration > run_duration)
          throw ScheduleOutOfRange(
              "spoof window [" + std::to_string(w.t_start) + ", " +
              std::to_string(w.t_start + w.duration) +
              ") outside run duration " + std::to_string(run_duration));
        windows.emplace_back(w.t_start, w.t_start + w.duration);
      }
      std::sort(windows.begin(), windows.end());
      for (std::size_t i = 1; i < windows.size(); ++i)
        if (windows[i].first < windows[i - 1].second)
          throw ScheduleOutOfRange("overlapping spoof windows on channel " +
                                   spec.target);
      return;
    }
    case AttackKind::FunctionalFault:
      if (spec.clamp_value < 0 || spec.clamp_value > 3)
        throw InvalidClampValue("clamp value must be in 0..3, got " +
                                std::to_string(spec.clamp_value));
      if (spec.fault_t_start < 0 || spec.fault_t_start > run_duration)
        throw ScheduleOutOfRange("fault start outside run duration");
      return;
  }
}

double spoof_offset(const AttackSpec& spec, const std::string& channel,
                    TimePoint t) {
  if (spec.kind != AttackKind::DataSpoof || channel != spec.target) return 0;
  for (const auto& w : spec.schedule) {
    std::int64_t lo = TimePoint::from_seconds(w.t_start).ms;
    std::int64_t hi = TimePoint::from_seconds(w.t_start + w.duration).ms;
    if (t.ms >= lo && t.ms < hi) return w.magnitude;
  }
  return 0;
}

EventStream inject_data_spoof(const EventStream& stream,
                              const AttackSpec& spec) {
  EventStream out(stream.channel());
  for (const auto& e : stream.events()) {
    double off = spoof_offset(spec, stream.channel(), e.t);
    if (off == 0) {
      out.append(e);
      continue;
    }
    Value v = e.value;
    if (auto* d = std::get_if<double>(&v))
      v = Value{*d + off};
    else if (auto* i = std::get_if<std::int64_t>(&v))
      v = Value{*i + static_cast<std::int64_t>(std::llround(off))};
    else
      throw KindMismatch("cannot spoof boolean channel " + stream.channel());
    out.append(Event{e.t, v});
  }
  return out;
}

Trace inject_data_spoof(const Trace& trace, const AttackSpec& spec) {
  if (spec.kind == AttackKind::DataSpoof &&
      trace.find(spec.target) == trace.end())
    throw UnknownChannel("spoof target channel not in trace: " + spec.target);
  Trace out;
  for (const auto& [name, stream] : trace)
    out.emplace(name, name == spec.target ? inject_data_spoof(stream, spec)
                                          : stream);
  return out;
}

EventStream position_replay() {
  EventStream x("x");
  const std::int64_t values[] = {1, 5, 10, 15, 100, 20};
  for (int i = 0; i < 6; ++i)
    x.append(Event{TimePoint::from_seconds(i), Value{values[i]}});
  return x;
}

}  // namespace rvmon
