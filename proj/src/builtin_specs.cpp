#include "rvmon/builtin_specs.hpp"

#include "rvmon/errors.hpp"

namespace rvmon {

namespace {

// P1: bounded position rate. Verdict channel is "attack".
const char* kP1 = R"(in x: Events[Int]
def attack := x - prev(x) > 5 || x - prev(x) < -5
out x
out attack
)";

// P2: per-sample rate bound on the sensed relative velocity (Data level).
const char* kP2 = R"(in rel_vel: Events[Float]
def delta := rel_vel - prev(rel_vel)
def violation := abs(delta) > 1.0
out delta
out violation
)";

// P3: closing TTC inside the PB2 stopping time demands braking stage >= 2
// (Functional level).
const char* kP3 = R"(in ttc: Events[Float]
in pb2_stop_time: Events[Float]
in aeb_status: Events[Int]
def braking_needed := ttc < 0.0 && abs(ttc) < pb2_stop_time
def violation := !(braking_needed -> aeb_status >= 2)
out braking_needed
out violation
)";

// P4: any braking stage requires the forward collision warning.
const char* kP4 = R"(in fcw_active: Events[Int]
in aeb_status: Events[Int]
def ok := (aeb_status >= 1) -> (fcw_active == 1)
def violation := !ok
out ok
out violation
)";

}  // namespace

const std::vector<BuiltinSpec>& builtin_specs() {
  static const std::vector<BuiltinSpec> specs = {
      {"p1", "p1_position_rate.tsl", MonitorLevel::Data, kP1},
      {"p2", "p2_velocity_rate.tsl", MonitorLevel::Data, kP2},
      {"p3", "p3_ttc_pb2.tsl", MonitorLevel::Functional, kP3},
      {"p4", "p4_fcw_consistency.tsl", MonitorLevel::Functional, kP4},
  };
  return specs;
}

const BuiltinSpec* find_builtin(const std::string& name) {
  for (const auto& s : builtin_specs())
    if (s.name == name || s.file_name == name) return &s;
  return nullptr;
}

MonitorInstance builtin_monitor(const std::string& name) {
  const BuiltinSpec* s = find_builtin(name);
  if (!s) throw ConfigError("unknown built-in monitor: " + name);
  return make_monitor(s->name, s->level, s->text);
}

}  // namespace rvmon
