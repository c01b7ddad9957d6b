#include "ethsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ethsim {

const GoalSite* Scenario::find_goal(const std::string& id) const {
  for (const auto& g : goals)
    if (g.id == id) return &g;
  return nullptr;
}

const GoalSite& Scenario::goal(const std::string& id) const {
  const GoalSite* g = find_goal(id);
  if (!g) throw ScenarioError("unknown goal id '" + id + "'");
  return *g;
}

const AgentSpec* Scenario::find_agent(const std::string& id) const {
  for (const auto& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

const AgentSpec& Scenario::agent(const std::string& id) const {
  const AgentSpec* a = find_agent(id);
  if (!a) throw ScenarioError("unknown agent id '" + id + "'");
  return *a;
}

std::string Scenario::robot_id() const {
  for (const auto& a : agents)
    if (a.role == Role::Robot) return a.id;
  throw ScenarioError("scenario has no robot agent");
}

std::vector<Vec2> Scenario::dangerous_sites() const {
  std::vector<Vec2> out;
  for (const auto& g : goals)
    if (g.dangerous) out.push_back(g.position);
  return out;
}

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw ScenarioError(msg);
}

bool inside_arena(Vec2 p, const Scenario& sc) {
  return p.x >= 0.0 && p.x <= sc.arena_width && p.y >= 0.0 &&
         p.y <= sc.arena_height;
}

}  // namespace

void validate(const Scenario& sc) {
  check(sc.schema_version == 1, "schema_version: expected 1");
  check(!sc.name.empty(), "name: must be non-empty");
  check(sc.arena_width > 0.0, "arena.width: must be positive");
  check(sc.arena_height > 0.0, "arena.height: must be positive");

  check(sc.goals.size() == 2, "goals: expected exactly 2 sites");
  std::set<std::string> goal_ids;
  for (size_t i = 0; i < sc.goals.size(); ++i) {
    const auto& g = sc.goals[i];
    const std::string at = "goals[" + std::to_string(i) + "]";
    check(!g.id.empty(), at + ".id: must be non-empty");
    check(goal_ids.insert(g.id).second, at + ".id: duplicate '" + g.id + "'");
    check(inside_arena(g.position, sc), at + ".position: outside arena");
  }

  check(!sc.agents.empty(), "agents: must be non-empty");
  std::set<std::string> agent_ids;
  int robots = 0;
  for (size_t i = 0; i < sc.agents.size(); ++i) {
    const auto& a = sc.agents[i];
    const std::string at = "agents[" + std::to_string(i) + "]";
    check(!a.id.empty(), at + ".id: must be non-empty");
    check(agent_ids.insert(a.id).second, at + ".id: duplicate '" + a.id + "'");
    if (a.role == Role::Robot) ++robots;
    check(inside_arena(a.start.position, sc),
          at + ".start.position: outside arena");
    double hn = norm(a.start.heading);
    check(hn > 0.0, at + ".start.heading: must be non-zero");
    check(std::abs(hn - 1.0) < 1e-9, at + ".start.heading: must be unit length");
    check(a.nominal_speed >= 0.0, at + ".nominal_speed: must be >= 0");
    check(a.speed_noise_sigma >= 0.0, at + ".speed_noise_sigma: must be >= 0");
    if (a.base_goal)
      check(sc.find_goal(*a.base_goal) != nullptr,
            at + ".base_goal: unknown goal id '" + *a.base_goal + "'");
  }
  check(robots == 1, "agents: expected exactly one robot role");

  if (sc.command)
    check(sc.find_goal(*sc.command) != nullptr,
          "command: unknown goal id '" + *sc.command + "'");

  const Params& p = sc.params;
  check(p.proximity_radius > 0.0, "params.proximity_radius: must be positive");
  check(p.motion_threshold >= 0.0, "params.motion_threshold: must be >= 0");
  check(p.beta > 0.0, "params.beta: must be positive");
  check(p.t_shift >= 0.0, "params.t_shift: must be >= 0");
  check(p.danger_threshold >= 0.0, "params.danger_threshold: must be >= 0");
  check(p.enforce_threshold >= 0.0, "params.enforce_threshold: must be >= 0");
  check(p.tick_hz >= 1, "params.tick_hz: must be >= 1");
  check(p.governor_period_ticks >= 1,
        "params.governor_period_ticks: must be >= 1");
  check(sc.duration_s >= 0.0, "duration_s: must be >= 0");
}

namespace {

using nlohmann::json;

const json& require(const json& doc, const std::string& key,
                    const std::string& at) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ScenarioError(at + key + ": missing field");
  return *it;
}

double as_number(const json& j, const std::string& at) {
  if (!j.is_number()) throw ScenarioError(at + ": expected a number");
  return j.get<double>();
}

Vec2 as_vec2(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2)
    throw ScenarioError(at + ": expected [x, y]");
  return {as_number(j[0], at + "[0]"), as_number(j[1], at + "[1]")};
}

std::string as_string(const json& j, const std::string& at) {
  if (!j.is_string()) throw ScenarioError(at + ": expected a string");
  return j.get<std::string>();
}

json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

Scenario load_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("document: expected an object");
  Scenario sc;

  if (doc.contains("schema_version")) {
    const json& v = doc["schema_version"];
    if (!v.is_number_integer())
      throw ScenarioError("schema_version: expected an integer");
    sc.schema_version = v.get<int>();
  }
  sc.name = as_string(require(doc, "name", ""), "name");

  if (doc.contains("arena")) {
    const json& a = doc["arena"];
    if (!a.is_object()) throw ScenarioError("arena: expected an object");
    sc.arena_width = as_number(require(a, "width", "arena."), "arena.width");
    sc.arena_height = as_number(require(a, "height", "arena."), "arena.height");
  }

  const json& goals = require(doc, "goals", "");
  if (!goals.is_array()) throw ScenarioError("goals: expected an array");
  for (size_t i = 0; i < goals.size(); ++i) {
    const std::string at = "goals[" + std::to_string(i) + "]";
    const json& g = goals[i];
    if (!g.is_object()) throw ScenarioError(at + ": expected an object");
    GoalSite site;
    site.id = as_string(require(g, "id", at + "."), at + ".id");
    site.position = as_vec2(require(g, "position", at + "."), at + ".position");
    if (g.contains("dangerous")) {
      if (!g["dangerous"].is_boolean())
        throw ScenarioError(at + ".dangerous: expected a boolean");
      site.dangerous = g["dangerous"].get<bool>();
    }
    sc.goals.push_back(site);
  }

  const json& agents = require(doc, "agents", "");
  if (!agents.is_array()) throw ScenarioError("agents: expected an array");
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string at = "agents[" + std::to_string(i) + "]";
    const json& a = agents[i];
    if (!a.is_object()) throw ScenarioError(at + ": expected an object");
    AgentSpec spec;
    spec.id = as_string(require(a, "id", at + "."), at + ".id");
    std::string role = as_string(require(a, "role", at + "."), at + ".role");
    if (role == "robot")
      spec.role = Role::Robot;
    else if (role == "human")
      spec.role = Role::Human;
    else
      throw ScenarioError(at + ".role: expected 'robot' or 'human'");
    const json& start = require(a, "start", at + ".");
    if (!start.is_object())
      throw ScenarioError(at + ".start: expected an object");
    spec.start.position = as_vec2(require(start, "position", at + ".start."),
                                  at + ".start.position");
    if (start.contains("heading"))
      spec.start.heading =
          normalized(as_vec2(start["heading"], at + ".start.heading"));
    else
      spec.start.heading = {1.0, 0.0};
    if (norm(spec.start.heading) == 0.0)
      throw ScenarioError(at + ".start.heading: must be non-zero");
    if (a.contains("base_goal") && !a["base_goal"].is_null())
      spec.base_goal = as_string(a["base_goal"], at + ".base_goal");
    spec.nominal_speed = as_number(require(a, "nominal_speed", at + "."),
                                   at + ".nominal_speed");
    if (a.contains("speed_noise_sigma"))
      spec.speed_noise_sigma =
          as_number(a["speed_noise_sigma"], at + ".speed_noise_sigma");
    sc.agents.push_back(spec);
  }

  if (doc.contains("command") && !doc["command"].is_null())
    sc.command = as_string(doc["command"], "command");

  if (doc.contains("params")) {
    const json& p = doc["params"];
    if (!p.is_object()) throw ScenarioError("params: expected an object");
    Params& q = sc.params;
    if (p.contains("proximity_radius"))
      q.proximity_radius =
          as_number(p["proximity_radius"], "params.proximity_radius");
    if (p.contains("motion_threshold"))
      q.motion_threshold =
          as_number(p["motion_threshold"], "params.motion_threshold");
    if (p.contains("beta")) q.beta = as_number(p["beta"], "params.beta");
    if (p.contains("t_shift"))
      q.t_shift = as_number(p["t_shift"], "params.t_shift");
    if (p.contains("danger_threshold"))
      q.danger_threshold =
          as_number(p["danger_threshold"], "params.danger_threshold");
    if (p.contains("enforce_threshold"))
      q.enforce_threshold =
          as_number(p["enforce_threshold"], "params.enforce_threshold");
    if (p.contains("tick_hz")) {
      if (!p["tick_hz"].is_number_integer())
        throw ScenarioError("params.tick_hz: expected an integer");
      q.tick_hz = p["tick_hz"].get<int>();
    }
    if (p.contains("governor_period_ticks")) {
      if (!p["governor_period_ticks"].is_number_integer())
        throw ScenarioError("params.governor_period_ticks: expected an integer");
      q.governor_period_ticks = p["governor_period_ticks"].get<int>();
    }
  }

  if (doc.contains("duration_s"))
    sc.duration_s = as_number(doc["duration_s"], "duration_s");
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !s.is_number_integer())
      throw ScenarioError("seed: expected an integer");
    sc.seed = s.get<std::uint64_t>();
  }

  validate(sc);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario file '" + path + "': " + e.what());
  }
  return load_scenario(doc);
}

nlohmann::json serialize(const Scenario& sc) {
  json doc;
  doc["schema_version"] = sc.schema_version;
  doc["name"] = sc.name;
  doc["arena"] = {{"width", sc.arena_width}, {"height", sc.arena_height}};
  json goals = json::array();
  for (const auto& g : sc.goals)
    goals.push_back({{"id", g.id},
                     {"position", vec2_to_json(g.position)},
                     {"dangerous", g.dangerous}});
  doc["goals"] = goals;
  json agents = json::array();
  for (const auto& a : sc.agents) {
    json j = {{"id", a.id},
              {"role", a.role == Role::Robot ? "robot" : "human"},
              {"start",
               {{"position", vec2_to_json(a.start.position)},
                {"heading", vec2_to_json(a.start.heading)}}},
              {"nominal_speed", a.nominal_speed},
              {"speed_noise_sigma", a.speed_noise_sigma}};
    j["base_goal"] = a.base_goal ? json(*a.base_goal) : json(nullptr);
    agents.push_back(j);
  }
  doc["agents"] = agents;
  doc["command"] = sc.command ? json(*sc.command) : json(nullptr);
  const Params& p = sc.params;
  doc["params"] = {{"proximity_radius", p.proximity_radius},
                   {"motion_threshold", p.motion_threshold},
                   {"beta", p.beta},
                   {"t_shift", p.t_shift},
                   {"danger_threshold", p.danger_threshold},
                   {"enforce_threshold", p.enforce_threshold},
                   {"tick_hz", p.tick_hz},
                   {"governor_period_ticks", p.governor_period_ticks}};
  doc["duration_s"] = sc.duration_s;
  doc["seed"] = sc.seed;
  return doc;
}

namespace {

AgentSpec make_agent(std::string id, Role role, Vec2 pos,
                     std::optional<std::string> base_goal, double speed,
                     double sigma = 0.0) {
  AgentSpec a;
  a.id = std::move(id);
  a.role = role;
  a.start.position = pos;
  a.start.heading = {1.0, 0.0};
  a.base_goal = std::move(base_goal);
  a.nominal_speed = speed;
  a.speed_noise_sigma = sigma;
  return a;
}

// Shared geometry: 3.0 x 2.5 m arena, site A at (2.5, 0.6), site B at
// (2.5, 1.9). Robot walks at 0.08 m/s, humans at 0.03 m/s (0.08 when fast).
// motion_threshold sits at 0.02 m/s so a 0.03 m/s walker reads as moving.
Scenario make_common(std::string name, bool a_dangerous, bool b_dangerous) {
  Scenario sc;
  sc.name = std::move(name);
  sc.goals = {{"A", {2.5, 0.6}, a_dangerous}, {"B", {2.5, 1.9}, b_dangerous}};
  sc.params.motion_threshold = 0.02;
  return sc;
}

Scenario make_single(std::string name, bool a_dangerous, bool b_dangerous,
                     std::optional<std::string> human_goal,
                     std::optional<std::string> command) {
  Scenario sc = make_common(std::move(name), a_dangerous, b_dangerous);
  sc.agents = {
      make_agent("robot", Role::Robot, {0.4, 1.25}, "B", 0.08),
      make_agent("human", Role::Human, {0.8, 0.6}, std::move(human_goal), 0.03),
  };
  sc.command = std::move(command);
  return sc;
}

// Two walkers from opposite corners, both sites dangerous. The robot idles
// mid-arena with no standing goal; both direct routes to the sites stay
// clear of the walkers' paths, so the governor has untainted alternatives
// to compare rescue candidates against.
Scenario make_multi(std::string name, double speed_a, double speed_b,
                    double sigma) {
  Scenario sc = make_common(std::move(name), true, true);
  sc.agents = {
      make_agent("robot", Role::Robot, {1.5, 1.25}, std::nullopt, 0.08),
      make_agent("humanA", Role::Human, {0.8, 0.6}, "A", speed_a, sigma),
      make_agent("humanB", Role::Human, {0.8, 1.9}, "B", speed_b, sigma),
  };
  return sc;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"exp1",
          "exp2",
          "exp3",
          "exp4",
          "exp4-alt",
          "multi-human-fast-A",
          "multi-human-fast-B",
          "multi-human-equal"};
}

Scenario preset(const std::string& name) {
  Scenario sc;
  if (name == "exp1") {
    // Robot headed to dangerous B, bystander human; robot gets diverted.
    sc = make_single(name, false, true, std::nullopt, std::nullopt);
  } else if (name == "exp2") {
    // Same, but B is commanded: the command suppresses the diversion.
    sc = make_single(name, false, true, std::nullopt, "B");
  } else if (name == "exp3") {
    // Human walks toward dangerous A; robot intercepts.
    sc = make_single(name, true, false, "A", std::nullopt);
  } else if (name == "exp4") {
    // Interception wins over a command to B, then the command resumes.
    sc = make_single(name, true, false, "A", "B");
  } else if (name == "exp4-alt") {
    // Human walks toward safe A while commanded B is dangerous: no rescue
    // is needed and the command stands.
    sc = make_single(name, false, true, "A", "B");
  } else if (name == "multi-human-fast-A") {
    sc = make_multi(name, 0.08, 0.03, 0.0);
  } else if (name == "multi-human-fast-B") {
    sc = make_multi(name, 0.03, 0.08, 0.0);
  } else if (name == "multi-human-equal") {
    sc = make_multi(name, 0.03, 0.03, 0.15);
  } else {
    throw ScenarioError("unknown preset '" + name + "'");
  }
  validate(sc);
  return sc;
}

}  // namespace ethsim
