#include "ethsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ethsim {

double sigmoid_q(double distance, double beta, double t_shift) {
  return 1.0 / (1.0 + std::exp(-beta * (distance - t_shift)));
}

double combine(double q_e, double q_h, bool command_issued,
               double danger_threshold) {
  if (!command_issued && q_h > danger_threshold) return q_e + q_h;
  return q_h;
}

Decision decide(const std::vector<double>& q_t, double enforce_threshold) {
  if (q_t.empty()) throw std::invalid_argument("decide: no scores");
  size_t best = 0;
  double lo = q_t[0], hi = q_t[0];
  for (size_t i = 1; i < q_t.size(); ++i) {
    if (q_t[i] > hi) {
      hi = q_t[i];
      best = i;  // strictly greater: ties keep the lowest index
    }
    lo = std::min(lo, q_t[i]);
  }
  if (hi - lo > enforce_threshold)
    return {true, static_cast<int>(best)};
  return {false, -1};
}

namespace {

double site_score(Vec2 final_pos, const std::vector<Vec2>& dangerous,
                  const Params& p) {
  if (dangerous.empty()) return 1.0;  // nothing to be near: fully safe
  double d = std::numeric_limits<double>::infinity();
  for (Vec2 site : dangerous) d = std::min(d, dist(final_pos, site));
  return sigmoid_q(d, p.beta, p.t_shift);
}

}  // namespace

EvaluationRecord evaluate_cycle(const std::vector<PredictedOutcome>& outcomes,
                                const Scenario& sc, bool command_issued) {
  const std::vector<Vec2> dangerous = sc.dangerous_sites();
  const std::string robot = sc.robot_id();

  EvaluationRecord rec;
  std::vector<double> q_ts;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const PredictedOutcome& out = outcomes[i];
    if (out.alternative_index != static_cast<int>(i))
      throw std::invalid_argument(
          "evaluate_cycle: outcomes must carry dense indices in order");
    AlternativeScore row;
    row.index = out.alternative_index;
    row.q_e = site_score(out.final_of(robot), dangerous, sc.params);
    for (const auto& spec : sc.agents) {
      if (spec.role != Role::Human) continue;
      double q = site_score(out.final_of(spec.id), dangerous, sc.params);
      row.q_h_each.emplace_back(spec.id, q);
      row.q_h += q;
    }
    row.q_t = combine(row.q_e, row.q_h, command_issued,
                      sc.params.danger_threshold);
    q_ts.push_back(row.q_t);
    rec.rows.push_back(std::move(row));
  }

  if (!q_ts.empty()) {
    auto [lo, hi] = std::minmax_element(q_ts.begin(), q_ts.end());
    rec.delta_q = *hi - *lo;
    rec.decision = decide(q_ts, sc.params.enforce_threshold);
  }
  return rec;
}

}  // namespace ethsim
