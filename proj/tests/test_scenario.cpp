#include <doctest.h>

#include "rvmon/errors.hpp"
#include "rvmon/scenario.hpp"

using namespace rvmon;

TEST_CASE("default scenario text parses to the default config") {
  SimConfig cfg = parse_scenario(default_scenario_toml());
  SimConfig def;
  CHECK(cfg.dt == def.dt);
  CHECK(cfg.duration == def.duration);
  CHECK(cfg.ego_v0 == def.ego_v0);
  CHECK(cfg.lead_enabled == def.lead_enabled);
  CHECK(cfg.reveal_time == def.reveal_time);
  CHECK(cfg.pedestrian_gap == def.pedestrian_gap);
  CHECK(cfg.a_pb1 == def.a_pb1);
  CHECK(cfg.a_pb2 == def.a_pb2);
  CHECK(cfg.a_fb == def.a_fb);
  CHECK(cfg.t_react == def.t_react);
  CHECK(cfg.attack.kind == AttackKind::None);
}

TEST_CASE("scenario parsing: values, comments, strings") {
  SimConfig cfg = parse_scenario(
      "# pedestrian cut-out\n"
      "[sim]\n"
      "dt = 0.05   # fine grid\n"
      "duration = 6.0\n"
      "seed = 7\n"
      "[ego]\n"
      "v0 = 12.5\n"
      "[mio]\n"
      "lead_enabled = true\n"
      "lead_gap = 40.0\n"
      "lead_speed = 11.0\n"
      "pedestrian_reveal_time = 2.0\n"
      "pedestrian_gap = 15.0\n");
  CHECK(cfg.dt == 0.05);
  CHECK(cfg.duration == 6.0);
  CHECK(cfg.seed == 7u);
  CHECK(cfg.ego_v0 == 12.5);
  CHECK(cfg.lead_enabled);
  CHECK(cfg.lead_gap == 40.0);
  CHECK(cfg.lead_speed == 11.0);
  CHECK(cfg.reveal_time == 2.0);
  CHECK(cfg.pedestrian_gap == 15.0);
}

TEST_CASE("attack section: spoof schedule") {
  SimConfig cfg = parse_scenario(
      "[attack]\n"
      "kind = \"data_spoof\"\n"
      "channel = \"rel_vel\"\n"
      "schedule = [[3.1, 0.1, 12.0], [4.4, 0.1, 12.0]]\n");
  CHECK(cfg.attack.kind == AttackKind::DataSpoof);
  CHECK(cfg.attack.target == "rel_vel");
  REQUIRE(cfg.attack.schedule.size() == 2);
  CHECK(cfg.attack.schedule[0].t_start == 3.1);
  CHECK(cfg.attack.schedule[0].duration == 0.1);
  CHECK(cfg.attack.schedule[0].magnitude == 12.0);
  CHECK(cfg.attack.schedule[1].t_start == 4.4);
}

TEST_CASE("attack section: functional fault") {
  SimConfig cfg = parse_scenario(
      "[attack]\n"
      "kind = \"functional_fault\"\n"
      "t_start = 0.0\n"
      "clamp = 1\n");
  CHECK(cfg.attack.kind == AttackKind::FunctionalFault);
  CHECK(cfg.attack.fault_t_start == 0.0);
  CHECK(cfg.attack.clamp_value == 1);
}

TEST_CASE("shipped scenario files parse") {
#ifdef RVMON_SCENARIO_DIR
  const std::string dir = RVMON_SCENARIO_DIR;
  SimConfig base = parse_scenario_file(dir + "/pedestrian.toml");
  CHECK(base.attack.kind == AttackKind::None);

  SimConfig data = parse_scenario_file(dir + "/attack_data.toml");
  CHECK(data.attack.kind == AttackKind::DataSpoof);
  CHECK(data.attack.schedule.size() == 2);

  SimConfig fault = parse_scenario_file(dir + "/attack_functional.toml");
  CHECK(fault.attack.kind == AttackKind::FunctionalFault);
  CHECK(fault.attack.clamp_value == 1);

  AttackSpec only = parse_attack_file(dir + "/attack_data.toml");
  CHECK(only.kind == AttackKind::DataSpoof);
#endif
}

TEST_CASE("scenario parsing: errors") {
  CHECK_THROWS_AS(parse_scenario("[sim]\nwarp = 9\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[simulator]\ndt = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("dt = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = \n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = 0.1\ndt = 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim\ndt = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = zero\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = \"0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[attack]\nkind = \"quantum\"\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario("[attack]\nschedule = [[1.0, 0.1]]\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = true\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[mio]\nlead_enabled = 1\n"), ConfigError);
  // semantic validation still runs on parsed configs
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_scenario("[attack]\nkind = \"functional_fault\"\nclamp = 9\n"),
      InvalidClampValue);
}
