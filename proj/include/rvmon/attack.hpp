#pragma once
#include <string>
#include <vector>

#include "rvmon/stream.hpp"

namespace rvmon {

enum class AttackKind { None, DataSpoof, FunctionalFault };

struct SpoofWindow {
  double t_start = 0;    // s
  double duration = 0.1; // s, one sample on the default grid
  double magnitude = 0;  // additive offset in channel units
};

struct AttackSpec {
  AttackKind kind = AttackKind::None;
  // DataSpoof: sensed channel to offset
  std::string target = "rel_vel";
  std::vector<SpoofWindow> schedule;
  // FunctionalFault: controller output clamped to min(stage, clamp_value)
  // from fault_t_start onward
  double fault_t_start = 0;
  int clamp_value = 3;
};

// Throws ScheduleOutOfRange / InvalidClampValue; duration is the run length
// the schedule must fit into.
void validate_attack(const AttackSpec& spec, double run_duration);

// Additive offset the spoof applies to `channel` at time t (0 outside the
// scheduled windows). Windows are half-open [t_start, t_start + duration).
double spoof_offset(const AttackSpec& spec, const std::string& channel,
                    TimePoint t);

// Offline application to a recorded stream: values offset inside the
// scheduled windows, timestamps unchanged.
EventStream inject_data_spoof(const EventStream& stream,
                              const AttackSpec& spec);
Trace inject_data_spoof(const Trace& trace, const AttackSpec& spec);

// The position exemplar stream x = (0->1, 1->5, 2->10, 3->15, 4->100,
// 5->20) m, for end-to-end tests of the position-rate property.
EventStream position_replay();

}  // namespace rvmon
