#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ethsim/scenario.hpp"

using namespace ethsim;
using nlohmann::json;

TEST_CASE("params default to the standard constants") {
  Params p;
  CHECK(p.proximity_radius == 0.5);
  CHECK(p.motion_threshold == 0.05);
  CHECK(p.beta == 10.0);
  CHECK(p.t_shift == 0.25);
  CHECK(p.danger_threshold == 0.75);
  CHECK(p.enforce_threshold == 0.2);
  CHECK(p.tick_hz == 30);
  CHECK(p.governor_period_ticks == 30);
}

TEST_CASE("every preset validates and round-trips through JSON") {
  auto names = preset_names();
  CHECK(names.size() == 8);
  for (const auto& name : names) {
    CAPTURE(name);
    Scenario sc = preset(name);
    CHECK(sc.name == name);
    json j = serialize(sc);
    Scenario back = load_scenario(j);
    CHECK(serialize(back) == j);
  }
}

TEST_CASE("preset geometry spot checks") {
  Scenario e1 = preset("exp1");
  CHECK(e1.goals.size() == 2);
  CHECK(e1.goal("A").position == Vec2{2.5, 0.6});
  CHECK(e1.goal("B").position == Vec2{2.5, 1.9});
  CHECK_FALSE(e1.goal("A").dangerous);
  CHECK(e1.goal("B").dangerous);
  CHECK(e1.robot_id() == "robot");
  CHECK(e1.agent("robot").base_goal == "B");
  CHECK(e1.agent("robot").nominal_speed == 0.08);
  CHECK_FALSE(e1.agent("human").base_goal.has_value());
  CHECK_FALSE(e1.command.has_value());
  CHECK(e1.params.motion_threshold == 0.02);
  CHECK(e1.duration_s == 180.0);

  Scenario e2 = preset("exp2");
  CHECK(e2.command == "B");

  Scenario e3 = preset("exp3");
  CHECK(e3.goal("A").dangerous);
  CHECK_FALSE(e3.goal("B").dangerous);
  CHECK(e3.agent("human").base_goal == "A");

  Scenario e4a = preset("exp4-alt");
  CHECK(e4a.command == "B");
  CHECK(e4a.goal("B").dangerous);
  CHECK_FALSE(e4a.goal("A").dangerous);

  Scenario mfa = preset("multi-human-fast-A");
  CHECK(mfa.agents.size() == 3);
  CHECK_FALSE(mfa.agent("robot").base_goal.has_value());
  CHECK(mfa.agent("robot").start.position == Vec2{1.5, 1.25});
  CHECK(mfa.agent("humanA").nominal_speed == 0.08);
  CHECK(mfa.agent("humanB").nominal_speed == 0.03);
  CHECK(mfa.goal("A").dangerous);
  CHECK(mfa.goal("B").dangerous);

  Scenario meq = preset("multi-human-equal");
  CHECK(meq.agent("humanA").nominal_speed == 0.03);
  CHECK(meq.agent("humanA").speed_noise_sigma == 0.15);
  CHECK(meq.agent("humanB").speed_noise_sigma == 0.15);
  CHECK(meq.agent("robot").speed_noise_sigma == 0.0);

  CHECK_THROWS_AS(preset("nope"), ScenarioError);
}

TEST_CASE("dangerous_sites collects only flagged goals") {
  CHECK(preset("exp1").dangerous_sites().size() == 1);
  CHECK(preset("multi-human-equal").dangerous_sites().size() == 2);
  CHECK(preset("exp1").dangerous_sites()[0] == Vec2{2.5, 1.9});
}

TEST_CASE("loader applies defaults and normalizes headings") {
  json doc = {
      {"name", "tiny"},
      {"goals",
       json::array({{{"id", "A"}, {"position", {2.5, 0.6}}},
                    {{"id", "B"}, {"position", {2.5, 1.9}}, {"dangerous", true}}})},
      {"agents", json::array({{{"id", "r"},
                               {"role", "robot"},
                               {"start",
                                {{"position", {0.4, 1.25}},
                                 {"heading", {3.0, 0.0}}}},
                               {"nominal_speed", 0.08}}})},
  };
  Scenario sc = load_scenario(doc);
  CHECK(sc.schema_version == 1);
  CHECK(sc.arena_width == 3.0);
  CHECK(sc.arena_height == 2.5);
  CHECK(sc.agents[0].start.heading == Vec2{1.0, 0.0});  // normalized
  CHECK_FALSE(sc.goals[0].dangerous);
  CHECK(sc.goals[1].dangerous);
  CHECK_FALSE(sc.command.has_value());
  CHECK(sc.params.motion_threshold == 0.05);  // schema default
  CHECK(sc.seed == 1);
  CHECK(sc.duration_s == 180.0);
}

TEST_CASE("loader rejects malformed documents with field-specific errors") {
  json good = serialize(preset("exp1"));

  json no_name = good;
  no_name.erase("name");
  CHECK_THROWS_WITH_AS(load_scenario(no_name), "name: missing field",
                       ScenarioError);

  json one_goal = good;
  one_goal["goals"].erase(1);
  CHECK_THROWS_WITH_AS(load_scenario(one_goal),
                       "goals: expected exactly 2 sites", ScenarioError);

  json dup_agent = good;
  dup_agent["agents"][1]["id"] = "robot";
  CHECK_THROWS_AS(load_scenario(dup_agent), ScenarioError);

  json bad_base = good;
  bad_base["agents"][0]["base_goal"] = "Z";
  CHECK_THROWS_AS(load_scenario(bad_base), ScenarioError);

  json bad_cmd = good;
  bad_cmd["command"] = "Z";
  CHECK_THROWS_AS(load_scenario(bad_cmd), ScenarioError);

  json outside = good;
  outside["agents"][0]["start"]["position"] = {9.0, 1.0};
  CHECK_THROWS_AS(load_scenario(outside), ScenarioError);

  json zero_heading = good;
  zero_heading["agents"][0]["start"]["heading"] = {0.0, 0.0};
  CHECK_THROWS_AS(load_scenario(zero_heading), ScenarioError);

  json two_robots = good;
  two_robots["agents"][1]["role"] = "robot";
  CHECK_THROWS_AS(load_scenario(two_robots), ScenarioError);

  json bad_version = good;
  bad_version["schema_version"] = 2;
  CHECK_THROWS_AS(load_scenario(bad_version), ScenarioError);

  json bad_pos = good;
  bad_pos["goals"][0]["position"] = {1.0};
  CHECK_THROWS_AS(load_scenario(bad_pos), ScenarioError);
}

TEST_CASE("scenario files load from disk") {
  auto path = std::filesystem::temp_directory_path() / "ethsim_scn_test.json";
  {
    std::ofstream out(path);
    out << serialize(preset("exp3")).dump(2);
  }
  Scenario sc = load_scenario_file(path.string());
  CHECK(sc.name == "exp3");
  CHECK(serialize(sc) == serialize(preset("exp3")));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/x.json"), ScenarioError);
}
