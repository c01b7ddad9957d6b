#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ethsim/engine.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

struct InferredIntent {
  std::string agent_id;
  std::string inferred_goal;  // goal id
  bool moving = false;
  double observed_speed = 0.0;
  std::array<Vec2, 2> path;  // current position -> inferred goal position
};

// Which of the two goal sites the pose is headed for: the one whose bearing
// makes the smaller angle with the heading (larger normalized dot product).
// Ties and a zero-distance bearing resolve to the first-listed goal that
// qualifies.
std::string infer_goal(const Pose& pose, const Scenario& sc);

// Intent for one human from observed history alone (positions + headings);
// never reads the agent's scripted goal. moving = observed speed at or above
// params.motion_threshold.
InferredIntent build_intent(std::span<const WorldState> history,
                            const std::string& agent_id, const Scenario& sc);

// Intents for every human, in scenario agent order.
std::vector<InferredIntent> build_intents(std::span<const WorldState> history,
                                          const Scenario& sc);

}  // namespace ethsim
