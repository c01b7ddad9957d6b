#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ethsim/prediction.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

// Safety score of a final position: 1 / (1 + exp(-beta * (d - t_shift)))
// where d is the distance to the nearest dangerous site. Approaches 0 close
// to danger, 0.5 exactly at d = t_shift, 1 far away.
double sigmoid_q(double distance, double beta, double t_shift);

// Total score for one alternative. Human safety dominates: when no command
// is issued and the summed human score q_h exceeds danger_threshold, the
// robot's own score is added on top (q_e + q_h); otherwise the humans alone
// decide (q_h).
double combine(double q_e, double q_h, bool command_issued,
               double danger_threshold);

struct Decision {
  bool enforce = false;
  int index = -1;  // enforced alternative; -1 when not enforcing
};

// Enforce the highest-scoring alternative (first index on ties) iff the
// spread max(q_t) - min(q_t) exceeds enforce_threshold.
Decision decide(const std::vector<double>& q_t, double enforce_threshold);

struct AlternativeScore {
  int index = 0;
  double q_e = 0.0;  // robot's own safety score
  std::vector<std::pair<std::string, double>> q_h_each;  // per human
  double q_h = 0.0;  // sum over humans
  double q_t = 0.0;  // combined
};

struct EvaluationRecord {
  int cycle = 0;  // 1-based governor cycle
  std::vector<AlternativeScore> rows;  // one per alternative, index order
  double delta_q = 0.0;                // max q_t - min q_t
  Decision decision;
};

// Score every predicted outcome. When the scenario has no dangerous site,
// every agent's safety score is exactly 1. Outcomes must carry dense
// alternative indices 0..n-1 in order.
EvaluationRecord evaluate_cycle(const std::vector<PredictedOutcome>& outcomes,
                                const Scenario& sc, bool command_issued);

}  // namespace ethsim
