#include "rvmon/sim.hpp"

#include <algorithm>
#include <cmath>

#include "rvmon/errors.hpp"

namespace rvmon {

void SimConfig::validate() const {
  if (dt <= 0) throw ConfigError("dt must be positive");
  if (duration <= 0) throw ConfigError("duration must be positive");
  if (ego_v0 < 0) throw ConfigError("ego_v0 must be non-negative");
  if (a_driver <= 0 || a_pb1 <= 0 || a_pb2 <= 0 || a_fb <= 0)
    throw ConfigError("decelerations must be positive");
  if (!(a_pb1 < a_pb2 && a_pb2 < a_fb))
    throw ConfigError("staging requires a_pb1 < a_pb2 < a_fb");
  if (t_react < 0) throw ConfigError("t_react must be non-negative");
  if (pedestrian_gap <= 0) throw ConfigError("pedestrian_gap must be positive");
  if (reveal_time < 0 || reveal_time > duration)
    throw ConfigError("reveal_time must lie within the run duration");
  if (sensor_noise < 0) throw ConfigError("sensor_noise must be non-negative");
  validate_attack(attack, duration);
}

std::optional<double> ttc(double rel_dist, double rel_vel) {
  if (rel_dist < 0) throw ConfigError("ttc: rel_dist must be non-negative");
  if (rel_vel == 0) return std::nullopt;
  return rel_dist / rel_vel;
}

StoppingTimes stopping_times(double ego_v, const SimConfig& cfg) {
  StoppingTimes st;
  st.t_pb1 = ego_v / cfg.a_pb1;
  st.t_pb2 = ego_v / cfg.a_pb2;
  st.t_fb = ego_v / cfg.a_fb;
  st.t_fcw = cfg.t_react + ego_v / cfg.a_driver;
  return st;
}

std::pair<int, int> decide_stage(std::optional<double> ttc,
                                 const StoppingTimes& st) {
  if (!ttc || *ttc >= 0) return {0, 0};
  double mag = -*ttc;
  int status = mag < st.t_fb ? 3 : mag < st.t_pb2 ? 2 : mag < st.t_pb1 ? 1 : 0;
  int fcw = (status >= 1 || mag < st.t_fcw) ? 1 : 0;
  return {status, fcw};
}

Simulator::Simulator(const SimConfig& cfg)
    : cfg_(cfg),
      dt_ms_(TimePoint::from_seconds(cfg.dt).ms),
      rng_(cfg.seed),
      noise_(0.0, cfg.sensor_noise > 0 ? cfg.sensor_noise : 1.0) {
  cfg_.validate();
  state_.ego_v = cfg_.ego_v0;
  if (cfg_.lead_enabled) {
    state_.mio = MioKind::Lead;
    state_.mio_pos = cfg_.lead_gap;
    state_.mio_v = cfg_.lead_speed;
  }
  sense_and_decide();
}

bool Simulator::done() const {
  return state_.t.ms >= TimePoint::from_seconds(cfg_.duration).ms;
}

void Simulator::sense_and_decide() {
  // Pedestrian reveal: the MIO switches at the configured time, with the
  // configured gap ahead of the ego car.
  if (state_.mio != MioKind::Pedestrian &&
      state_.t.ms >= TimePoint::from_seconds(cfg_.reveal_time).ms) {
    state_.mio = MioKind::Pedestrian;
    state_.mio_pos = state_.ego_pos + cfg_.pedestrian_gap;
    state_.mio_v = 0;
  }

  auto sensed = [&](const char* channel, double truth) {
    double v = truth;
    if (cfg_.sensor_noise > 0) v += noise_(rng_);
    return v + spoof_offset(cfg_.attack, channel, state_.t);
  };

  double ego_v_sensed = sensed("ego_v", state_.ego_v);
  state_.stop_times = stopping_times(std::max(0.0, ego_v_sensed), cfg_);

  int raw = 0, fcw = 0;
  if (state_.mio != MioKind::None) {
    double true_dist = std::max(0.0, state_.mio_pos - state_.ego_pos);
    if (!headway_seen_ || true_dist < min_headway_) min_headway_ = true_dist;
    headway_seen_ = true;
    state_.rel_dist = std::max(0.0, sensed("rel_dist", true_dist));
    state_.rel_vel = sensed("rel_vel", state_.mio_v - state_.ego_v);
    double effective = std::max(0.0, state_.rel_dist - cfg_.headway_stop);
    state_.ttc = ttc(effective, state_.rel_vel);
    std::tie(raw, fcw) = decide_stage(state_.ttc, state_.stop_times);
  } else {
    state_.ttc.reset();
  }

  // Escalation latch: once engaged, braking holds at least its stage while
  // the ego is moving and an MIO is tracked. Without it the memoryless
  // TTC thresholds disengage near standstill and the ego creeps into the
  // obstacle.
  int status = raw;
  if (state_.mio != MioKind::None && state_.ego_v > 0)
    status = std::max(raw, prev_status_);
  if (status >= 1) fcw = 1;

  // Functional-level fault: output clamp. FCW and the sensed quantities
  // are unaffected.
  if (cfg_.attack.kind == AttackKind::FunctionalFault &&
      state_.t.ms >= TimePoint::from_seconds(cfg_.attack.fault_t_start).ms)
    status = std::min(status, cfg_.attack.clamp_value);

  state_.aeb_status = status;
  state_.fcw_active = fcw;
  prev_status_ = status;
}

void Simulator::emit() {
  auto put = [&](const std::string& channel, Value v) {
    auto [it, inserted] = trace_.try_emplace(channel, channel);
    it->second.append(Event{state_.t, v});
  };
  put("ego_v", Value{state_.ego_v});
  put("aeb_status", Value{static_cast<std::int64_t>(state_.aeb_status)});
  put("fcw_active", Value{static_cast<std::int64_t>(state_.fcw_active)});
  put("pb2_stop_time", Value{state_.stop_times.t_pb2});
  if (state_.mio != MioKind::None) {
    put("rel_dist", Value{state_.rel_dist});
    put("rel_vel", Value{state_.rel_vel});
    put("headway", Value{std::max(0.0, state_.mio_pos - state_.ego_pos)});
    if (state_.ttc) put("ttc", Value{*state_.ttc});
  }
}

void Simulator::step() {
  double dt = cfg_.dt;
  double decels[4] = {0.0, cfg_.a_pb1, cfg_.a_pb2, cfg_.a_fb};
  double a = decels[state_.aeb_status];

  // Exact integration of the piecewise-constant deceleration over the
  // step, clamping at standstill.
  if (a <= 0 || state_.ego_v <= 0) {
    state_.ego_pos += std::max(0.0, state_.ego_v) * dt;
    if (state_.ego_v < 0) state_.ego_v = 0;
  } else {
    double t_stop = state_.ego_v / a;
    if (t_stop >= dt) {
      state_.ego_pos += state_.ego_v * dt - 0.5 * a * dt * dt;
      state_.ego_v -= a * dt;
      if (state_.ego_v < 1e-12) state_.ego_v = 0;
    } else {
      state_.ego_pos += state_.ego_v * state_.ego_v / (2.0 * a);
      state_.ego_v = 0;
    }
  }
  if (state_.mio == MioKind::Lead) state_.mio_pos += state_.mio_v * dt;

  ++step_index_;
  state_.t = TimePoint{step_index_ * dt_ms_};

  if (state_.mio != MioKind::None) {
    double headway = state_.mio_pos - state_.ego_pos;
    if (headway <= 0 && !state_.collided) {
      state_.collided = true;
      collision_time_ = state_.t.seconds();
    }
    if (headway < min_headway_) min_headway_ = std::max(0.0, headway);
  }

  sense_and_decide();
}

RunResult Simulator::run() {
  emit();
  while (!done()) {
    step();
    emit();
  }
  RunResult r;
  r.trace = std::move(trace_);
  r.collision = state_.collided;
  r.collision_time = collision_time_;
  r.min_headway = headway_seen_ ? min_headway_ : 0.0;
  return r;
}

RunResult run_scenario(const SimConfig& cfg) { return Simulator(cfg).run(); }

}  // namespace rvmon
