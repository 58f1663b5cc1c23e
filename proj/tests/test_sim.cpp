#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rvmon/builtin_specs.hpp"
#include "rvmon/engine.hpp"
#include "rvmon/errors.hpp"
#include "rvmon/sim.hpp"
#include "rvmon/trace_io.hpp"

using namespace rvmon;

TEST_CASE("ttc: ratio and sign convention") {
  CHECK(*ttc(20.0, -10.0) == doctest::Approx(-2.0));
  CHECK(!ttc(20.0, 0.0));
  CHECK(*ttc(10.0, 5.0) == doctest::Approx(2.0));

  // independent scalar recomputation
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    double d = static_cast<double>(rng() % 1000) / 10.0;
    double v = static_cast<double>(rng() % 400) / 10.0 - 20.0;
    auto got = ttc(d, v);
    if (v == 0) {
      CHECK(!got);
    } else {
      CHECK(*got == doctest::Approx(d / v));
    }
  }
}

TEST_CASE("stopping times") {
  SimConfig cfg;
  StoppingTimes st = stopping_times(10.0, cfg);
  CHECK(st.t_pb2 == doctest::Approx(10.0 / 5.3));  // about 1.887 s
  CHECK(st.t_pb1 == doctest::Approx(10.0 / 3.8));
  CHECK(st.t_fb == doctest::Approx(10.0 / 9.8));
  CHECK(st.t_fcw == doctest::Approx(1.2 + 10.0 / 4.0));

  StoppingTimes zero = stopping_times(0.0, cfg);
  CHECK(zero.t_pb1 == 0.0);
  CHECK(zero.t_pb2 == 0.0);
  CHECK(zero.t_fb == 0.0);
  CHECK(zero.t_fcw == doctest::Approx(cfg.t_react));

  // ordering follows a_pb1 < a_pb2 < a_fb
  for (double v : {0.5, 3.0, 12.0, 40.0}) {
    StoppingTimes s = stopping_times(v, cfg);
    CHECK(s.t_fb < s.t_pb2);
    CHECK(s.t_pb2 < s.t_pb1);
  }
}

TEST_CASE("decide_stage thresholds") {
  StoppingTimes st;
  st.t_pb1 = 2.6;
  st.t_pb2 = 2.0;
  st.t_fb = 1.0;
  st.t_fcw = 3.6;

  CHECK(decide_stage(-1.5, st) == std::pair<int, int>{2, 1});
  CHECK(decide_stage(-0.5, st) == std::pair<int, int>{3, 1});
  CHECK(decide_stage(-2.3, st) == std::pair<int, int>{1, 1});
  CHECK(decide_stage(-3.0, st) == std::pair<int, int>{0, 1});  // alert band
  CHECK(decide_stage(-4.0, st) == std::pair<int, int>{0, 0});
  CHECK(decide_stage(5.0, st) == std::pair<int, int>{0, 0});
  CHECK(decide_stage(std::nullopt, st) == std::pair<int, int>{0, 0});
}

TEST_CASE("decide_stage is consistent with the braking-demand predicate") {
  // brute force over a parameter grid: whenever ttc < 0 and |ttc| is
  // inside the PB2 stopping time, the stage must be at least 2
  SimConfig cfg;
  for (int vi = 0; vi <= 60; ++vi) {
    double v = vi * 0.5;
    StoppingTimes st = stopping_times(v, cfg);
    for (int ti = -80; ti <= 20; ++ti) {
      double t = ti * 0.1;
      auto [stage, fcw] = decide_stage(t, st);
      if (t < 0 && -t < st.t_pb2) CHECK(stage >= 2);
      if (stage >= 1) CHECK(fcw == 1);
    }
  }
}

TEST_CASE("single braking step arithmetic") {
  SimConfig cfg;
  cfg.reveal_time = 0.0;
  cfg.pedestrian_gap = 1.0;  // immediate full braking
  cfg.ego_v0 = 10.0;
  Simulator sim(cfg);
  REQUIRE(sim.state().aeb_status == 3);
  sim.step();
  CHECK(sim.state().ego_v == doctest::Approx(10.0 - 9.8 * 0.1));
}

TEST_CASE("clean pedestrian scenario avoids the collision") {
  SimConfig cfg;
  RunResult r = run_scenario(cfg);
  CHECK(!r.collision);
  CHECK(r.min_headway > 0.0);
}

TEST_CASE("kinematic sanity and stage monotonicity on the clean run") {
  SimConfig cfg;
  RunResult r = run_scenario(cfg);

  const auto& ego_v = r.trace.at("ego_v").events();
  double prev_pos = -1;
  for (const auto& e : ego_v) CHECK(std::get<double>(e.value) >= 0.0);
  (void)prev_pos;

  const auto& headway = r.trace.at("headway").events();
  for (std::size_t i = 1; i < headway.size(); ++i)
    CHECK(std::get<double>(headway[i].value) <=
          std::get<double>(headway[i - 1].value) + 1e-9);

  // status non-decreasing until the ego stops
  const auto& status = r.trace.at("aeb_status").events();
  int last = 0;
  for (std::size_t i = 0; i < status.size(); ++i) {
    double v = std::get<double>(ego_v[i].value);
    int s = static_cast<int>(std::get<std::int64_t>(status[i].value));
    if (v > 0) CHECK(s >= last);
    last = s;
  }
}

TEST_CASE("coarse step agrees with a fine-step oracle on min headway") {
  SimConfig coarse;
  SimConfig fine = coarse;
  fine.dt = 0.001;
  RunResult a = run_scenario(coarse);
  RunResult b = run_scenario(fine);
  CHECK(std::abs(a.min_headway - b.min_headway) < 0.5);
}

TEST_CASE("emitted trace sits on the dt grid") {
  SimConfig cfg;
  cfg.duration = 0.2;
  cfg.reveal_time = 0.0;
  cfg.pedestrian_gap = 50.0;
  RunResult r = run_scenario(cfg);
  for (const char* ch : {"ego_v", "aeb_status", "fcw_active", "pb2_stop_time",
                         "rel_dist", "rel_vel", "headway"}) {
    const auto& evs = r.trace.at(ch).events();
    REQUIRE(evs.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(evs[k].t.ms == k * 100);
  }
}

TEST_CASE("determinism: identical configs give identical traces") {
  SimConfig cfg;
  cfg.sensor_noise = 0.05;
  cfg.seed = 42;
  RunResult a = run_scenario(cfg);
  RunResult b = run_scenario(cfg);
  std::ostringstream sa, sb;
  write_trace(a.trace, sa);
  write_trace(b.trace, sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("trace round-trips through the JSON Lines format") {
  SimConfig cfg;
  RunResult r = run_scenario(cfg);
  std::stringstream buf;
  write_trace(r.trace, buf);
  Trace back = read_trace(buf);
  REQUIRE(back.size() == r.trace.size());
  for (const auto& [name, s] : r.trace) {
    const EventStream& rs = back.at(name);
    REQUIRE(rs.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(rs.events()[i].t == s.events()[i].t);
      CHECK(rs.events()[i].value == s.events()[i].value);
    }
  }
}

TEST_CASE("functional and FCW monitors never fire on clean runs") {
  MonitorInstance p3 = builtin_monitor("p3");
  MonitorInstance p4 = builtin_monitor("p4");
  std::mt19937 rng(11);
  for (int i = 0; i < 25; ++i) {
    SimConfig cfg;
    cfg.ego_v0 = 5.0 + static_cast<double>(rng() % 200) / 10.0;
    cfg.pedestrian_gap = 5.0 + static_cast<double>(rng() % 500) / 10.0;
    cfg.reveal_time = static_cast<double>(rng() % 40) / 10.0;
    RunResult r = run_scenario(cfg);
    VerdictReport rep = run_set_serial({p3, p4}, r.trace);
    CHECK(rep.monitors[0].violation_ticks == 0);
    CHECK(rep.monitors[1].violation_ticks == 0);
  }
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.a_pb2 = 3.0;  // violates a_pb1 < a_pb2
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  SimConfig neg;
  neg.dt = 0.0;
  CHECK_THROWS_AS(neg.validate(), ConfigError);
}
