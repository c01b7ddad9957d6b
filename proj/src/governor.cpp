#include "ethsim/governor.hpp"

#include <stdexcept>

namespace ethsim {

GovernorState init_governor(const Scenario& sc) {
  GovernorState g;
  g.robot_id = sc.robot_id();
  g.base_goal = sc.agent(g.robot_id).base_goal;
  return g;
}

GovernorState apply_command(GovernorState g, const Scenario& sc) {
  if (sc.command) {
    g.base_goal = sc.command;
    g.command_issued = true;
  }
  return g;
}

CycleOutput governor_cycle(std::span<const WorldState> history,
                           const GovernorState& g, const Scenario& sc,
                           int cycle_no) {
  if (history.empty())
    throw std::invalid_argument("governor_cycle: empty history");
  const WorldState& world = history.back();

  CycleOutput out;
  out.state = g;
  out.intents = build_intents(history, sc);
  out.alternatives = generate(out.intents, sc);
  for (const auto& alt : out.alternatives)
    out.outcomes.push_back(predict(world, out.intents, alt, sc));
  out.record = evaluate_cycle(out.outcomes, sc, g.command_issued);
  out.record.cycle = cycle_no;

  const AgentState& robot = world.agent(g.robot_id);
  if (out.record.decision.enforce) {
    const Alternative& win = out.alternatives[out.record.decision.index];
    // Re-aiming at the goal the robot already holds would release its halt
    // latch for nothing; mutate only on a real change.
    if (!robot.goal || *robot.goal != win.target)
      out.mutation = GoalMutation{g.robot_id, win.target};
    out.state.active_override = OverrideState{win.target, win.provenance};
  } else if (g.active_override) {
    // Override ran its course: hand the robot back its standing goal.
    out.state.active_override.reset();
    std::optional<Vec2> base;
    if (g.base_goal) base = sc.goal(*g.base_goal).position;
    if (robot.goal != base) out.mutation = GoalMutation{g.robot_id, base};
  }
  return out;
}

}  // namespace ethsim
