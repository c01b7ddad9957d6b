#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ethsim/engine.hpp"
#include "ethsim/evaluation.hpp"
#include "ethsim/generation.hpp"
#include "ethsim/intent.hpp"
#include "ethsim/prediction.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

struct OverrideState {
  Vec2 target;
  Provenance provenance;
};

struct GovernorState {
  std::string robot_id;
  std::optional<std::string> base_goal;  // robot's standing goal id
  bool command_issued = false;
  std::optional<OverrideState> active_override;
};

struct GoalMutation {
  std::string agent_id;
  std::optional<Vec2> goal;
};

struct CycleOutput {
  GovernorState state;
  std::optional<GoalMutation> mutation;  // world change to apply, if any
  std::vector<InferredIntent> intents;
  std::vector<Alternative> alternatives;
  std::vector<PredictedOutcome> outcomes;
  EvaluationRecord record;
};

GovernorState init_governor(const Scenario& sc);

// Fold the scenario's operator command (if any) into the standing goal.
GovernorState apply_command(GovernorState g, const Scenario& sc);

// One governor cycle over the trailing history (newest state last):
// infer intents, generate alternatives, predict and score each, decide.
// An enforce decision makes the winning target the robot's goal and records
// the override; a no-action decision with an override active restores the
// standing goal (or clears the goal when there is none). Goal mutations are
// emitted only when they would actually change the robot's current goal, so
// re-enforcing the same target does not release the robot's halt latch.
CycleOutput governor_cycle(std::span<const WorldState> history,
                           const GovernorState& g, const Scenario& sc,
                           int cycle_no);

}  // namespace ethsim
