#include "ethsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ethsim/engine.hpp"
#include "ethsim/governor.hpp"
#include "ethsim/plot.hpp"

namespace ethsim {

namespace {

using nlohmann::json;

json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }

json provenance_to_json(const Provenance& p) {
  switch (p.kind) {
    case Provenance::Kind::GoalA: return {{"kind", "goal-A"}};
    case Provenance::Kind::GoalB: return {{"kind", "goal-B"}};
    case Provenance::Kind::PathPoint:
      return {{"kind", "path-point"}, {"human", p.human_id}, {"k", p.k}};
  }
  return nullptr;
}

json report_row(const CycleOutput& out, double t) {
  json row;
  row["cycle"] = out.record.cycle;
  row["t"] = t;

  json intents = json::array();
  for (const auto& it : out.intents)
    intents.push_back({{"agent", it.agent_id},
                       {"inferred_goal", it.inferred_goal},
                       {"moving", it.moving},
                       {"observed_speed", it.observed_speed},
                       {"path", json::array({vec2_to_json(it.path[0]),
                                             vec2_to_json(it.path[1])})}});
  row["intents"] = intents;

  json alts = json::array();
  for (const auto& alt : out.alternatives)
    alts.push_back({{"index", alt.index},
                    {"target", vec2_to_json(alt.target)},
                    {"provenance", provenance_to_json(alt.provenance)}});
  row["alternatives"] = alts;

  json outs = json::array();
  for (const auto& o : out.outcomes) {
    json finals, causes;
    for (const auto& [id, pos] : o.finals) finals[id] = vec2_to_json(pos);
    for (const auto& [id, c] : o.stop_causes) causes[id] = to_string(c);
    outs.push_back({{"index", o.alternative_index},
                    {"finals", finals},
                    {"stop_causes", causes}});
  }
  row["outcomes"] = outs;

  json table = json::array();
  for (const auto& r : out.record.rows) {
    json each;
    for (const auto& [id, q] : r.q_h_each) each[id] = q;
    table.push_back({{"index", r.index},
                     {"q_e", r.q_e},
                     {"q_h_each", each},
                     {"q_h", r.q_h},
                     {"q_t", r.q_t}});
  }
  row["q_table"] = table;
  row["delta_q"] = out.record.delta_q;

  if (out.record.decision.enforce)
    row["decision"] = {{"type", "enforce"},
                       {"enforced_index", out.record.decision.index}};
  else
    row["decision"] = {{"type", "no-action"}};

  if (out.state.active_override)
    row["override_state"] = {
        {"active", true},
        {"target", vec2_to_json(out.state.active_override->target)},
        {"provenance", provenance_to_json(out.state.active_override->provenance)}};
  else
    row["override_state"] = {{"active", false}};

  return row;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string csv =
      "tick,t_s,agent_id,x_m,y_m,heading_x,heading_y,goal_x,goal_y,halted\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  char buf[320];
  for (const auto& r : trace) {
    Vec2 goal = r.goal.value_or(Vec2{nan, nan});
    std::snprintf(buf, sizeof(buf),
                  "%lld,%.9g,%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n",
                  static_cast<long long>(r.tick), r.t_s, r.agent_id.c_str(),
                  r.position.x, r.position.y, r.heading.x, r.heading.y, goal.x,
                  goal.y, r.halted ? 1 : 0);
    csv += buf;
  }
  return csv;
}

std::vector<TraceRow> trace_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line !=
          "tick,t_s,agent_id,x_m,y_m,heading_x,heading_y,goal_x,goal_y,halted")
    throw std::runtime_error("trace csv: bad header");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 10)
      throw std::runtime_error("trace csv: bad row '" + line + "'");
    TraceRow r;
    r.tick = std::stoll(f[0]);
    r.t_s = std::stod(f[1]);
    r.agent_id = f[2];
    r.position = {std::stod(f[3]), std::stod(f[4])};
    r.heading = {std::stod(f[5]), std::stod(f[6])};
    double gx = std::stod(f[7]), gy = std::stod(f[8]);
    if (!std::isnan(gx) && !std::isnan(gy)) r.goal = Vec2{gx, gy};
    r.halted = f[9] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AgentSummary> summarize(const std::vector<TraceRow>& trace,
                                    const Scenario& sc) {
  const double r = sc.params.proximity_radius;
  const std::vector<Vec2> dangerous = sc.dangerous_sites();
  const std::string robot = sc.robot_id();

  // Robot position by tick (ticks are contiguous from 0).
  std::vector<Vec2> robot_at;
  for (const auto& row : trace)
    if (row.agent_id == robot) {
      if (static_cast<std::int64_t>(robot_at.size()) != row.tick)
        throw std::runtime_error("summarize: non-contiguous trace ticks");
      robot_at.push_back(row.position);
    }

  std::vector<AgentSummary> out;
  for (const auto& spec : sc.agents) {
    AgentSummary s;
    s.id = spec.id;
    s.role = spec.role;
    s.min_danger_distance = std::numeric_limits<double>::infinity();
    Vec2 halt_pos;
    for (const auto& row : trace) {
      if (row.agent_id != spec.id) continue;
      s.final_position = row.position;
      for (Vec2 site : dangerous)
        s.min_danger_distance =
            std::min(s.min_danger_distance, dist(row.position, site));
      if (row.halted && !s.first_halt_tick) {
        s.first_halt_tick = row.tick;
        halt_pos = row.position;
      }
    }
    for (const auto& g : sc.goals)
      s.final_goal_distance.emplace_back(g.id, dist(s.final_position, g.position));
    if (spec.role == Role::Human && s.first_halt_tick &&
        s.min_danger_distance > r) {
      Vec2 rp = robot_at.at(static_cast<size_t>(*s.first_halt_tick));
      s.saved = dist(halt_pos, rp) < r;
    }
    out.push_back(std::move(s));
  }
  return out;
}

RunResult run(const Scenario& sc_in, const RunOptions& opt) {
  Scenario sc = sc_in;
  if (opt.seed_override) sc.seed = *opt.seed_override;
  validate(sc);

  const int hz = sc.params.tick_hz;
  const int period = sc.params.governor_period_ticks;
  const auto n_ticks = std::llround(sc.duration_s * hz);
  // History window: enough for the 0.5 s speed estimate.
  const size_t hist_cap =
      static_cast<size_t>(std::max(2.0, std::ceil(0.5 * hz) + 1.0));

  RunResult result;
  result.scenario_name = sc.name;
  result.seed = sc.seed;
  result.ticks = static_cast<int>(n_ticks);

  WorldState world = init_world(sc);
  GovernorState gov = apply_command(init_governor(sc), sc);
  if (sc.command)
    world = set_goal(world, gov.robot_id, sc.goal(*sc.command).position);

  auto append_rows = [&](const WorldState& w) {
    for (const auto& a : w.agents)
      result.trace.push_back(
          {w.tick, w.time, a.id, a.position, a.heading, a.goal, a.halted});
  };

  std::vector<WorldState> history;
  history.push_back(world);
  append_rows(world);

  for (std::int64_t tick = 1; tick <= n_ticks; ++tick) {
    world = step(world, sc);
    history.push_back(world);
    if (history.size() > hist_cap) history.erase(history.begin());
    append_rows(world);

    if (tick % period == 0) {
      int cycle = static_cast<int>(tick / period);
      CycleOutput out = governor_cycle(history, gov, sc, cycle);
      gov = out.state;
      if (out.mutation) {
        world = set_goal(world, out.mutation->agent_id, out.mutation->goal);
        history.back() = world;
      }
      if (out.record.decision.enforce) ++result.overrides_enforced;
      ++result.cycles;
      result.records.push_back(out.record);
      result.report_rows.push_back(report_row(out, world.time));
    }
  }

  result.agents = summarize(result.trace, sc);

  // Saved humans in the order they were halted.
  std::vector<const AgentSummary*> saved;
  for (const auto& a : result.agents)
    if (a.saved) saved.push_back(&a);
  std::stable_sort(saved.begin(), saved.end(),
                   [](const AgentSummary* x, const AgentSummary* y) {
                     return *x->first_halt_tick < *y->first_halt_tick;
                   });
  for (const auto* a : saved) result.humans_saved.push_back(a->id);

  if (opt.write_files) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string stem = sc.name + "-s" + std::to_string(sc.seed);
    result.trace_path = opt.out_dir / (stem + ".trace.csv");
    write_text_file(result.trace_path, trace_to_csv(result.trace));
    std::string report;
    for (const auto& row : result.report_rows) {
      report += row.dump();
      report += '\n';
    }
    result.report_path = opt.out_dir / (stem + ".report.jsonl");
    write_text_file(result.report_path, report);
    if (opt.plot) {
      std::string svg = render_plot(result.trace, result.report_rows, sc);
      result.plot_path = opt.out_dir / (stem + ".svg");
      write_text_file(result.plot_path, svg);
    }
  }
  return result;
}

nlohmann::json run_result_to_json(const RunResult& r) {
  json doc;
  doc["scenario"] = r.scenario_name;
  doc["seed"] = r.seed;
  doc["ticks"] = r.ticks;
  doc["cycles"] = r.cycles;
  doc["overrides_enforced"] = r.overrides_enforced;
  json agents = json::array();
  for (const auto& a : r.agents) {
    json goals;
    for (const auto& [id, d] : a.final_goal_distance) goals[id] = d;
    json ja = {{"id", a.id},
               {"role", a.role == Role::Robot ? "robot" : "human"},
               {"final_position", vec2_to_json(a.final_position)},
               {"final_goal_distance", goals},
               {"saved", a.saved}};
    ja["min_danger_distance"] = std::isinf(a.min_danger_distance)
                                    ? json(nullptr)
                                    : json(a.min_danger_distance);
    ja["first_halt_tick"] =
        a.first_halt_tick ? json(*a.first_halt_tick) : json(nullptr);
    agents.push_back(ja);
  }
  doc["agents"] = agents;
  doc["humans_saved"] = r.humans_saved;
  doc["trace_path"] = r.trace_path.empty() ? json(nullptr)
                                           : json(r.trace_path.string());
  doc["report_path"] = r.report_path.empty() ? json(nullptr)
                                             : json(r.report_path.string());
  doc["plot_path"] =
      r.plot_path.empty() ? json(nullptr) : json(r.plot_path.string());
  return doc;
}

SweepResult sweep(const std::string& preset_name, int n_seeds,
                  const RunOptions& opt) {
  Scenario sc = preset(preset_name);
  int humans = 0;
  for (const auto& a : sc.agents)
    if (a.role == Role::Human) ++humans;
  if (humans < 2)
    throw std::invalid_argument("sweep: preset '" + preset_name +
                                "' has fewer than two humans");
  if (n_seeds < 1) throw std::invalid_argument("sweep: need at least one seed");

  SweepResult res;
  res.preset_name = preset_name;
  res.seeds = n_seeds;

  std::vector<std::string> buckets;
  for (const auto& a : sc.agents)
    if (a.role == Role::Human) buckets.push_back(a.id);
  buckets.push_back("none");
  std::vector<int> counts(buckets.size(), 0);

  for (int s = 1; s <= n_seeds; ++s) {
    RunOptions ro = opt;
    ro.write_files = false;
    ro.plot = false;
    ro.seed_override = static_cast<std::uint64_t>(s);
    RunResult r = run(sc, ro);
    std::string who = r.humans_saved.empty() ? "none" : r.humans_saved.front();
    res.saved_by_seed.emplace_back(static_cast<std::uint64_t>(s), who);
    for (size_t i = 0; i < buckets.size(); ++i)
      if (buckets[i] == who) ++counts[i];
  }
  for (size_t i = 0; i < buckets.size(); ++i)
    res.tally.emplace_back(buckets[i], counts[i]);

  if (opt.write_files) {
    std::filesystem::create_directories(opt.out_dir);
    auto path = opt.out_dir / ("sweep-" + preset_name + "-n" +
                               std::to_string(n_seeds) + ".json");
    write_text_file(path, sweep_result_to_json(res).dump(2) + "\n");
  }
  return res;
}

nlohmann::json sweep_result_to_json(const SweepResult& s) {
  json doc;
  doc["preset"] = s.preset_name;
  doc["seeds"] = s.seeds;
  json by_seed = json::array();
  for (const auto& [seed, who] : s.saved_by_seed)
    by_seed.push_back({{"seed", seed}, {"saved", who}});
  doc["saved_by_seed"] = by_seed;
  json tally;
  for (const auto& [id, n] : s.tally) tally[id] = n;
  doc["tally"] = tally;
  return doc;
}

}  // namespace ethsim
