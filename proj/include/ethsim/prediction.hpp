#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ethsim/engine.hpp"
#include "ethsim/generation.hpp"
#include "ethsim/intent.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

enum class StopCause { ReachedGoal, ProximityStop, Horizon };

const char* to_string(StopCause c);

struct PredictedOutcome {
  int alternative_index = 0;
  // Final positions / stop causes in agent order (robot + every human).
  std::vector<std::pair<std::string, Vec2>> finals;
  std::vector<std::pair<std::string, StopCause>> stop_causes;

  Vec2 final_of(const std::string& agent_id) const;  // throws on unknown id
};

// Noise-free constant-speed rollout of one alternative, dt = 1 / tick_hz,
// capped at `horizon_s`. The robot walks at its nominal speed to the
// alternative's target; each moving human walks at its OBSERVED speed to its
// inferred goal site; stationary humans hold position (stopped from the
// start, cause reached-goal). Agents snap onto their destination on the
// arrival step and stop there; a pair whose distance crosses from
// >= proximity_radius to below it stops both members for good
// (proximity-stop). Anyone still walking at the horizon stops with cause
// horizon.
PredictedOutcome predict(const WorldState& w,
                         const std::vector<InferredIntent>& intents,
                         const Alternative& alt, const Scenario& sc,
                         double horizon_s = 120.0);

// Distance from an agent's predicted final position to a site.
double final_distance(const PredictedOutcome& out, const std::string& agent_id,
                      Vec2 site);

}  // namespace ethsim
