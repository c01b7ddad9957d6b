#include "ethsim/prediction.hpp"

#include <cmath>
#include <stdexcept>

namespace ethsim {

const char* to_string(StopCause c) {
  switch (c) {
    case StopCause::ReachedGoal: return "reached-goal";
    case StopCause::ProximityStop: return "proximity-stop";
    case StopCause::Horizon: return "horizon";
  }
  return "?";
}

Vec2 PredictedOutcome::final_of(const std::string& agent_id) const {
  for (const auto& [id, pos] : finals)
    if (id == agent_id) return pos;
  throw std::invalid_argument("unknown agent id '" + agent_id + "'");
}

namespace {

struct Sim {
  std::string id;
  Vec2 position;
  Vec2 dest;
  double speed = 0.0;
  bool stopped = false;
  StopCause cause = StopCause::Horizon;
};

}  // namespace

PredictedOutcome predict(const WorldState& w,
                         const std::vector<InferredIntent>& intents,
                         const Alternative& alt, const Scenario& sc,
                         double horizon_s) {
  const double dt = 1.0 / sc.params.tick_hz;
  const double r = sc.params.proximity_radius;

  std::vector<Sim> sims;
  for (const auto& spec : sc.agents) {
    Sim s;
    s.id = spec.id;
    s.position = w.agent(spec.id).position;
    if (spec.role == Role::Robot) {
      s.dest = alt.target;
      s.speed = spec.nominal_speed;
    } else {
      const InferredIntent* intent = nullptr;
      for (const auto& it : intents)
        if (it.agent_id == spec.id) intent = &it;
      if (!intent)
        throw std::invalid_argument("predict: no intent for '" + spec.id + "'");
      if (intent->moving) {
        s.dest = intent->path[1];
        s.speed = intent->observed_speed;
      } else {
        // Stationary humans are modelled as already arrived.
        s.dest = s.position;
        s.stopped = true;
        s.cause = StopCause::ReachedGoal;
      }
    }
    sims.push_back(std::move(s));
  }

  const long max_steps = std::lround(horizon_s * sc.params.tick_hz);
  std::vector<Vec2> pre(sims.size());
  for (long step = 0; step < max_steps; ++step) {
    bool any_walking = false;
    for (const auto& s : sims)
      if (!s.stopped) any_walking = true;
    if (!any_walking) break;

    for (size_t i = 0; i < sims.size(); ++i) pre[i] = sims[i].position;

    for (auto& s : sims) {
      if (s.stopped) continue;
      Vec2 to_dest = s.dest - s.position;
      double remaining = norm(to_dest);
      double move = s.speed * dt;
      if (remaining <= move) {
        // Walks through to the destination itself and stops there.
        s.position = s.dest;
        s.stopped = true;
        s.cause = StopCause::ReachedGoal;
      } else {
        s.position = s.position + move * normalized(to_dest);
      }
    }

    for (size_t i = 0; i < sims.size(); ++i)
      for (size_t j = i + 1; j < sims.size(); ++j) {
        double before = dist(pre[i], pre[j]);
        double after = dist(sims[i].position, sims[j].position);
        if (before >= r && after < r) {
          // Whoever was still walking freezes here; an already-stopped
          // member keeps its original cause.
          if (!sims[i].stopped) {
            sims[i].stopped = true;
            sims[i].cause = StopCause::ProximityStop;
          }
          if (!sims[j].stopped) {
            sims[j].stopped = true;
            sims[j].cause = StopCause::ProximityStop;
          }
        }
      }
  }

  PredictedOutcome out;
  out.alternative_index = alt.index;
  for (const auto& s : sims) {
    out.finals.emplace_back(s.id, s.position);
    out.stop_causes.emplace_back(s.id, s.stopped ? s.cause : StopCause::Horizon);
  }
  return out;
}

double final_distance(const PredictedOutcome& out, const std::string& agent_id,
                      Vec2 site) {
  return dist(out.final_of(agent_id), site);
}

}  // namespace ethsim
