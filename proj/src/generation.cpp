#include "ethsim/generation.hpp"

#include <stdexcept>

namespace ethsim {

std::vector<Alternative> generate(const std::vector<InferredIntent>& intents,
                                  const Scenario& sc) {
  if (sc.goals.size() != 2)
    throw std::invalid_argument("generate: expected exactly 2 goal sites");
  std::vector<Alternative> out;
  out.push_back({0, sc.goals[0].position, {Provenance::Kind::GoalA, "", 0}});
  out.push_back({1, sc.goals[1].position, {Provenance::Kind::GoalB, "", 0}});
  for (const auto& intent : intents) {
    if (!intent.moving) continue;
    Vec2 from = intent.path[0];
    Vec2 to = intent.path[1];
    for (int k = 1; k <= 3; ++k) {
      double f = static_cast<double>(k) / 4.0;
      Alternative alt;
      alt.index = static_cast<int>(out.size());
      alt.target = from + f * (to - from);
      alt.provenance = {Provenance::Kind::PathPoint, intent.agent_id, k};
      out.push_back(alt);
    }
  }
  return out;
}

}  // namespace ethsim
