#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ethsim/rng.hpp"
#include "ethsim/scenario.hpp"
#include "ethsim/vec2.hpp"

namespace ethsim {

struct AgentState {
  std::string id;
  Vec2 position;
  Vec2 heading;              // unit; last direction of travel
  std::optional<Vec2> goal;  // current goal position; nullopt = no goal
  bool halted = false;       // latched until the goal is reassigned
};

struct WorldState {
  std::int64_t tick = 0;
  double time = 0.0;  // seconds, tick / tick_hz
  std::vector<AgentState> agents;  // scenario order
  Rng rng;

  const AgentState* find_agent(const std::string& id) const;
  const AgentState& agent(const std::string& id) const;  // throws on unknown id
};

// World at tick 0: agents at their start poses, aimed at their base goals.
WorldState init_world(const Scenario& sc);

// One kinematic tick (dt = 1 / tick_hz). Per agent with a goal and no halt
// latch: move min(speed * dt, remaining) straight toward the goal, where
// speed = nominal * (1 + sigma * z) clamped at 0 (one gaussian draw per
// moving agent with sigma > 0, in agent order). After all moves:
//   - an agent within proximity_radius of its own goal halts (latched);
//   - any pair whose distance crossed from >= proximity_radius to below it
//     during this tick halts, both members (latched). Pairs that were
//     already inside the radius before the tick are left alone, so a halted
//     pair does not re-trigger and a released agent can walk out of the
//     radius without being re-caught.
WorldState step(const WorldState& w, const Scenario& sc);

// Reassign an agent's goal: clears the halt latch and re-aims the heading
// at the new goal (heading kept when the goal is nullopt or coincident).
WorldState set_goal(const WorldState& w, const std::string& agent_id,
                    std::optional<Vec2> goal);

// Net-displacement speed over the trailing `window_s` of history (oldest
// qualifying state to newest): ||p_new - p_old|| / (t_new - t_old).
// Returns 0 with fewer than two states in the window.
double observed_speed(std::span<const WorldState> history,
                      const std::string& agent_id, double window_s = 0.5);

}  // namespace ethsim
