#include "ethsim/intent.hpp"

#include <stdexcept>

namespace ethsim {

std::string infer_goal(const Pose& pose, const Scenario& sc) {
  // Normalized dot of heading with the bearing to each site; the larger
  // value (smaller angle) wins, first-listed site on ties. Standing on a
  // site means heading straight for it.
  double best = -2.0;
  const GoalSite* pick = nullptr;
  for (const auto& g : sc.goals) {
    Vec2 bearing = g.position - pose.position;
    double d = norm(bearing);
    if (d == 0.0) return g.id;
    double c = dot(pose.heading, bearing) / d;
    if (!pick || c > best) {
      best = c;
      pick = &g;
    }
  }
  if (!pick) throw std::invalid_argument("scenario has no goal sites");
  return pick->id;
}

InferredIntent build_intent(std::span<const WorldState> history,
                            const std::string& agent_id, const Scenario& sc) {
  if (history.empty())
    throw std::invalid_argument("build_intent: empty history");
  if (sc.agent(agent_id).role != Role::Human)
    throw std::invalid_argument("build_intent: '" + agent_id +
                                "' is not a human");
  const AgentState& s = history.back().agent(agent_id);
  InferredIntent intent;
  intent.agent_id = agent_id;
  intent.observed_speed = observed_speed(history, agent_id);
  intent.moving = intent.observed_speed >= sc.params.motion_threshold;
  intent.inferred_goal = infer_goal({s.position, s.heading}, sc);
  intent.path = {s.position, sc.goal(intent.inferred_goal).position};
  return intent;
}

std::vector<InferredIntent> build_intents(std::span<const WorldState> history,
                                          const Scenario& sc) {
  std::vector<InferredIntent> out;
  for (const auto& spec : sc.agents)
    if (spec.role == Role::Human)
      out.push_back(build_intent(history, spec.id, sc));
  return out;
}

}  // namespace ethsim
