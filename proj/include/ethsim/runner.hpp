#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ethsim/evaluation.hpp"
#include "ethsim/scenario.hpp"
#include "ethsim/vec2.hpp"

namespace ethsim {

struct TraceRow {
  std::int64_t tick = 0;
  double t_s = 0.0;
  std::string agent_id;
  Vec2 position;
  Vec2 heading;
  std::optional<Vec2> goal;
  bool halted = false;
};

struct RunOptions {
  std::filesystem::path out_dir = "out";
  bool write_files = true;
  bool plot = false;
  std::optional<std::uint64_t> seed_override;
};

struct AgentSummary {
  std::string id;
  Role role = Role::Human;
  Vec2 final_position;
  std::vector<std::pair<std::string, double>> final_goal_distance;
  double min_danger_distance = 0.0;  // +inf when nothing is dangerous
  std::optional<std::int64_t> first_halt_tick;
  bool saved = false;  // humans only: halted near the robot, never near danger
};

struct RunResult {
  std::string scenario_name;
  std::uint64_t seed = 0;
  int ticks = 0;
  int cycles = 0;
  int overrides_enforced = 0;  // cycles that decided to enforce
  std::vector<AgentSummary> agents;
  std::vector<std::string> humans_saved;  // chronological by first halt
  std::vector<TraceRow> trace;
  std::vector<EvaluationRecord> records;          // one per cycle
  std::vector<nlohmann::json> report_rows;        // one per cycle
  std::filesystem::path trace_path, report_path, plot_path;  // empty if unwritten
};

// Full closed-loop run: step the world at tick_hz, run the governor every
// governor_period_ticks, apply its goal mutations, and record everything.
// With write_files, emits <name>-s<seed>.trace.csv / .report.jsonl (and
// .svg with plot) under out_dir. Byte-identical outputs for identical
// scenario + seed.
RunResult run(const Scenario& sc, const RunOptions& opt = {});

// Per-agent endpoint facts recomputed from a trace alone. A human counts as
// saved when it halted, its distance to the robot at that first halted tick
// was below proximity_radius, and it never came within proximity_radius of
// a dangerous site.
std::vector<AgentSummary> summarize(const std::vector<TraceRow>& trace,
                                    const Scenario& sc);

std::string trace_to_csv(const std::vector<TraceRow>& trace);
std::vector<TraceRow> trace_from_csv(const std::string& csv);

nlohmann::json run_result_to_json(const RunResult& r);

struct SweepResult {
  std::string preset_name;
  int seeds = 0;
  // seed -> id of the chronologically first saved human, or "none".
  std::vector<std::pair<std::uint64_t, std::string>> saved_by_seed;
  std::vector<std::pair<std::string, int>> tally;  // id (or "none") -> count
};

// Run a multi-human preset with seeds 1..n and tally which human was saved.
SweepResult sweep(const std::string& preset_name, int n_seeds,
                  const RunOptions& opt = {});

nlohmann::json sweep_result_to_json(const SweepResult& s);

}  // namespace ethsim
