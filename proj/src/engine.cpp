#include "ethsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace ethsim {

const AgentState* WorldState::find_agent(const std::string& id) const {
  for (const auto& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

const AgentState& WorldState::agent(const std::string& id) const {
  const AgentState* a = find_agent(id);
  if (!a) throw std::invalid_argument("unknown agent id '" + id + "'");
  return *a;
}

WorldState init_world(const Scenario& sc) {
  WorldState w;
  w.rng = Rng(sc.seed);
  for (const auto& spec : sc.agents) {
    AgentState s;
    s.id = spec.id;
    s.position = spec.start.position;
    s.heading = spec.start.heading;
    if (spec.base_goal) {
      Vec2 g = sc.goal(*spec.base_goal).position;
      s.goal = g;
      Vec2 d = g - s.position;
      if (norm(d) > 0.0) s.heading = normalized(d);
    }
    w.agents.push_back(std::move(s));
  }
  return w;
}

WorldState step(const WorldState& w, const Scenario& sc) {
  const double dt = 1.0 / sc.params.tick_hz;
  const double r = sc.params.proximity_radius;

  WorldState next = w;
  next.tick = w.tick + 1;
  next.time = static_cast<double>(next.tick) * dt;

  std::vector<Vec2> pre(w.agents.size());
  for (size_t i = 0; i < w.agents.size(); ++i) pre[i] = w.agents[i].position;

  for (size_t i = 0; i < next.agents.size(); ++i) {
    AgentState& a = next.agents[i];
    if (a.halted || !a.goal) continue;
    Vec2 to_goal = *a.goal - a.position;
    double remaining = norm(to_goal);
    if (remaining == 0.0) continue;
    const AgentSpec& spec = sc.agents[i];
    double speed = spec.nominal_speed;
    if (spec.speed_noise_sigma > 0.0)
      speed = std::max(
          0.0, speed * (1.0 + spec.speed_noise_sigma * next.rng.gaussian()));
    double move = std::min(speed * dt, remaining);
    if (move == 0.0) continue;
    Vec2 dir = normalized(to_goal);
    a.heading = dir;
    if (move >= remaining)
      a.position = *a.goal;  // snap, no overshoot past the goal
    else
      a.position = a.position + move * dir;
  }

  // Post-move halts. Own-goal arrival latches the agent in place.
  for (auto& a : next.agents)
    if (a.goal && dist(a.position, *a.goal) < r) a.halted = true;

  // A pair that entered the proximity radius this tick freezes, both
  // members. Entry means crossing from >= r to < r, so pairs already inside
  // stay untouched and cannot re-latch a freshly released agent.
  for (size_t i = 0; i < next.agents.size(); ++i)
    for (size_t j = i + 1; j < next.agents.size(); ++j) {
      double before = dist(pre[i], pre[j]);
      double after = dist(next.agents[i].position, next.agents[j].position);
      if (before >= r && after < r) {
        next.agents[i].halted = true;
        next.agents[j].halted = true;
      }
    }

  return next;
}

WorldState set_goal(const WorldState& w, const std::string& agent_id,
                    std::optional<Vec2> goal) {
  WorldState next = w;
  for (auto& a : next.agents) {
    if (a.id != agent_id) continue;
    a.goal = goal;
    a.halted = false;
    if (goal) {
      Vec2 d = *goal - a.position;
      if (norm(d) > 0.0) a.heading = normalized(d);
    }
    return next;
  }
  throw std::invalid_argument("unknown agent id '" + agent_id + "'");
}

double observed_speed(std::span<const WorldState> history,
                      const std::string& agent_id, double window_s) {
  if (history.size() < 2) return 0.0;
  const WorldState& newest = history.back();
  const double cutoff = newest.time - window_s - 1e-9;
  const WorldState* oldest = nullptr;
  for (const auto& w : history) {
    if (w.time >= cutoff) {
      oldest = &w;
      break;
    }
  }
  if (!oldest || oldest == &newest) return 0.0;
  double span = newest.time - oldest->time;
  if (span <= 0.0) return 0.0;
  return dist(newest.agent(agent_id).position, oldest->agent(agent_id).position) /
         span;
}

}  // namespace ethsim
