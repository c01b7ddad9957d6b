#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ethsim/vec2.hpp"

namespace ethsim {

struct Pose {
  Vec2 position;
  Vec2 heading;  // unit length after validation
};

struct GoalSite {
  std::string id;
  Vec2 position;
  bool dangerous = false;
};

enum class Role { Robot, Human };

struct AgentSpec {
  std::string id;
  Role role = Role::Human;
  Pose start;
  std::optional<std::string> base_goal;  // goal id; nullopt = stay put
  double nominal_speed = 0.0;            // m/s
  double speed_noise_sigma = 0.0;        // relative per-tick speed jitter
};

struct Params {
  double proximity_radius = 0.5;   // m; halting / interaction distance
  double motion_threshold = 0.05;  // m/s; below this an agent reads as stationary
  double beta = 10.0;              // danger score steepness
  double t_shift = 0.25;           // m; danger score midpoint distance
  double danger_threshold = 0.75;  // per-human score above which humans dominate
  double enforce_threshold = 0.2;  // minimum score spread that triggers an override
  int tick_hz = 30;                // world update rate
  int governor_period_ticks = 30;  // ticks between governor cycles
};

struct Scenario {
  int schema_version = 1;
  std::string name;
  double arena_width = 3.0;   // m
  double arena_height = 2.5;  // m
  std::vector<GoalSite> goals;
  std::vector<AgentSpec> agents;
  std::optional<std::string> command;  // operator-ordered goal id for the robot
  Params params;
  double duration_s = 180.0;
  std::uint64_t seed = 1;

  const GoalSite* find_goal(const std::string& id) const;
  const GoalSite& goal(const std::string& id) const;      // throws on unknown id
  const AgentSpec* find_agent(const std::string& id) const;
  const AgentSpec& agent(const std::string& id) const;    // throws on unknown id
  std::string robot_id() const;                            // the unique robot agent
  std::vector<Vec2> dangerous_sites() const;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ScenarioError naming the offending field. Also normalizes nothing:
// call sites rely on load_scenario/presets to hand over normalized headings.
void validate(const Scenario& sc);

// JSON <-> Scenario. load_scenario normalizes agent headings and validates;
// serialize(load) == identity on already-valid documents.
Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);
nlohmann::json serialize(const Scenario& sc);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);  // throws ScenarioError on unknown name

}  // namespace ethsim
