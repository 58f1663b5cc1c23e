#pragma once
#include <optional>
#include <random>
#include <string>

#include "rvmon/attack.hpp"
#include "rvmon/stream.hpp"

namespace rvmon {

struct StoppingTimes {
  double t_fcw = 0;   // driver reaction + braking at a_driver
  double t_pb1 = 0;   // ego_v / a_pb1
  double t_pb2 = 0;   // ego_v / a_pb2
  double t_fb = 0;    // ego_v / a_fb
};

struct SimConfig {
  double dt = 0.1;        // s; the monitored sampling grid
  double duration = 10.0; // s

  double ego_v0 = 10.0;   // m/s

  // MIO before the pedestrian reveal. With lead_enabled = false the lead
  // vehicles sit in the adjacent lane (concealing the pedestrian) and are
  // not the MIO; rel_* channels start at the reveal.
  bool lead_enabled = false;
  double lead_gap = 60.0;    // m
  double lead_speed = 10.0;  // m/s

  double reveal_time = 1.5;     // s; pedestrian becomes the MIO
  double pedestrian_gap = 12.0; // m ahead of ego at the reveal

  // Staged braking decelerations (m/s^2), a_pb1 < a_pb2 < a_fb.
  double a_driver = 4.0;
  double a_pb1 = 3.8;
  double a_pb2 = 5.3;
  double a_fb = 9.8;
  double t_react = 1.2;  // s, driver reaction for the FCW band

  double headway_stop = 0.0;  // m, standoff subtracted from sensed distance

  // Optional zero-mean gaussian noise on the sensed quantities; off by
  // default (the sensor is a pass-through of the true state).
  double sensor_noise = 0.0;
  unsigned seed = 0;

  AttackSpec attack;

  void validate() const;  // throws ConfigError
};

enum class MioKind { None, Lead, Pedestrian };

struct SimState {
  TimePoint t;
  double ego_pos = 0, ego_v = 0;
  double mio_pos = 0, mio_v = 0;
  MioKind mio = MioKind::None;

  // Sensed quantities (spoof applied), valid only while mio != None.
  double rel_dist = 0;  // headway, m
  double rel_vel = 0;   // v_mio - v_ego; negative when closing
  std::optional<double> ttc;  // rel_dist / rel_vel; absent when rel_vel == 0
  StoppingTimes stop_times;

  int aeb_status = 0;   // 0 none, 1 PB1, 2 PB2, 3 FB
  int fcw_active = 0;

  bool collided = false;
};

// rel_dist / rel_vel; negative when closing, absent when rel_vel == 0.
std::optional<double> ttc(double rel_dist, double rel_vel);

StoppingTimes stopping_times(double ego_v, const SimConfig& cfg);

// Memoryless staging from TTC against the stopping times; returns
// (aeb_status, fcw_active).
std::pair<int, int> decide_stage(std::optional<double> ttc,
                                 const StoppingTimes& st);

struct RunResult {
  Trace trace;
  bool collision = false;
  std::optional<double> collision_time;
  double min_headway = 0;  // over the MIO-present portion of the run
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);

  const SimState& state() const { return state_; }
  bool done() const;

  // Advance one dt. The deceleration applied over the step is the stage
  // emitted at the current tick. Throws nothing; a collision latches and
  // the run keeps emitting with the headway floored at zero.
  void step();

  RunResult run();  // steps to the end and returns the emitted trace

 private:
  void sense_and_decide();
  void emit();

  SimConfig cfg_;
  SimState state_;
  std::int64_t dt_ms_;
  std::int64_t step_index_ = 0;
  int prev_status_ = 0;
  std::mt19937 rng_;
  std::normal_distribution<double> noise_;
  Trace trace_;
  double min_headway_ = 0;
  bool headway_seen_ = false;
  std::optional<double> collision_time_;
};

RunResult run_scenario(const SimConfig& cfg);

}  // namespace rvmon
