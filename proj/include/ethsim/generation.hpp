#pragma once

#include <string>
#include <vector>

#include "ethsim/intent.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

struct Provenance {
  enum class Kind { GoalA, GoalB, PathPoint };
  Kind kind = Kind::GoalA;
  std::string human_id;  // PathPoint only
  int k = 0;             // PathPoint only: 1..3 (fraction k/4 along the path)
};

struct Alternative {
  int index = 0;  // dense, 0-based
  Vec2 target;
  Provenance provenance;
};

// Candidate robot goals for one governor cycle: the two goal sites (in goal
// order), then for each MOVING human (intent order) the points 1/4, 1/2 and
// 3/4 of the way along its inferred path. Always 2 + 3 * moving_humans
// entries; stationary humans contribute none.
std::vector<Alternative> generate(const std::vector<InferredIntent>& intents,
                                  const Scenario& sc);

}  // namespace ethsim
