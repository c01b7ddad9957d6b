#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "ethsim/engine.hpp"
#include "ethsim/rng.hpp"
#include "ethsim/scenario.hpp"

using namespace ethsim;

namespace {

Scenario arena_with(std::vector<AgentSpec> agents,
                    Vec2 goal_a = {2.5, 0.6}, Vec2 goal_b = {2.5, 1.9}) {
  Scenario sc;
  sc.name = "test";
  sc.goals = {{"A", goal_a, false}, {"B", goal_b, false}};
  sc.agents = std::move(agents);
  validate(sc);
  return sc;
}

AgentSpec agent(std::string id, Role role, Vec2 pos,
                std::optional<std::string> base, double speed,
                double sigma = 0.0) {
  AgentSpec a;
  a.id = std::move(id);
  a.role = role;
  a.start.position = pos;
  a.start.heading = {1.0, 0.0};
  a.base_goal = std::move(base);
  a.nominal_speed = speed;
  a.speed_noise_sigma = sigma;
  return a;
}

WorldState snapshot(double t, Vec2 pos) {
  WorldState w;
  w.tick = std::llround(t * 30.0);
  w.time = t;
  w.agents.push_back({"h", pos, {1.0, 0.0}, std::nullopt, false});
  return w;
}

}  // namespace

TEST_CASE("init_world aims agents at their base goals") {
  Scenario sc = preset("exp1");
  WorldState w = init_world(sc);
  CHECK(w.tick == 0);
  CHECK(w.time == 0.0);
  REQUIRE(w.agents.size() == 2);
  const AgentState& robot = w.agent("robot");
  CHECK(robot.goal == sc.goal("B").position);
  Vec2 expect = normalized(sc.goal("B").position - Vec2{0.4, 1.25});
  CHECK(std::abs(robot.heading.x - expect.x) < 1e-15);
  CHECK(std::abs(robot.heading.y - expect.y) < 1e-15);
  CHECK_FALSE(robot.halted);
  const AgentState& human = w.agent("human");
  CHECK_FALSE(human.goal.has_value());
  CHECK(human.heading == Vec2{1.0, 0.0});
  CHECK_THROWS(w.agent("ghost"));
}

TEST_CASE("step moves a lone walker straight at constant speed") {
  Scenario sc =
      arena_with({agent("robot", Role::Robot, {0.4, 1.25}, "A", 0.08)});
  WorldState w = init_world(sc);
  Vec2 start = w.agent("robot").position;
  Vec2 dir = normalized(sc.goal("A").position - start);
  for (int k = 1; k <= 100; ++k) {
    w = step(w, sc);
    const AgentState& r = w.agent("robot");
    Vec2 expect = start + (k * 0.08 / 30.0) * dir;
    CHECK(std::abs(r.position.x - expect.x) < 1e-10);
    CHECK(std::abs(r.position.y - expect.y) < 1e-10);
    CHECK(std::abs(cross(r.position - start, dir)) < 1e-10);
    CHECK(std::abs(r.heading.x - dir.x) < 1e-9);
    CHECK(std::abs(r.heading.y - dir.y) < 1e-9);
  }
  CHECK(w.tick == 100);
  CHECK(w.time == doctest::Approx(100.0 / 30.0));
}

TEST_CASE("arrival snaps onto the goal with no overshoot") {
  Scenario sc =
      arena_with({agent("robot", Role::Robot, {2.49, 0.6}, "A", 0.08)});
  sc.params.proximity_radius = 1e-6;  // keep the halt ring out of the way
  WorldState w = init_world(sc);
  for (int k = 0; k < 6; ++k) w = step(w, sc);
  CHECK(w.agent("robot").position == sc.goal("A").position);  // exact
  CHECK(w.agent("robot").halted);  // dist 0 < radius
  WorldState w2 = step(w, sc);
  CHECK(w2.agent("robot").position == sc.goal("A").position);
}

TEST_CASE("a walker halts inside its goal's proximity radius and stays put") {
  Scenario sc =
      arena_with({agent("robot", Role::Robot, {0.4, 0.6}, "A", 0.08)});
  WorldState w = init_world(sc);
  int halted_at = -1;
  for (int k = 1; k <= 5400 && halted_at < 0; ++k) {
    w = step(w, sc);
    if (w.agent("robot").halted) halted_at = k;
  }
  REQUIRE(halted_at > 0);
  double d = dist(w.agent("robot").position, sc.goal("A").position);
  CHECK(d < 0.5);
  CHECK(d >= 0.5 - 0.08 / 30.0 - 1e-12);
  Vec2 frozen = w.agent("robot").position;
  for (int k = 0; k < 50; ++k) w = step(w, sc);
  CHECK(w.agent("robot").position == frozen);
  CHECK(w.agent("robot").halted);
}

TEST_CASE("a pair halts on entering the proximity radius, both members") {
  Scenario sc = arena_with(
      {agent("robot", Role::Robot, {0.5, 1.25}, "A", 0.08),
       agent("human", Role::Human, {1.5, 1.25}, std::nullopt, 0.03)},
      /*goal_a=*/{2.5, 1.25});
  WorldState w = init_world(sc);
  int halted_at = -1;
  for (int k = 1; k <= 1000 && halted_at < 0; ++k) {
    w = step(w, sc);
    if (w.agent("robot").halted) halted_at = k;
  }
  REQUIRE(halted_at > 0);
  CHECK(w.agent("human").halted);  // latched too, though she has no goal
  double d = dist(w.agent("robot").position, w.agent("human").position);
  CHECK(d < 0.5);
  CHECK(d >= 0.5 - (0.08 + 0.03) / 30.0 - 1e-12);
  CHECK(dist(w.agent("robot").position, sc.goal("A").position) > 0.5);

  SUBCASE("a released agent can leave the radius without re-latching") {
    w = set_goal(w, "robot", Vec2{0.1, 1.25});
    Vec2 human_pos = w.agent("human").position;
    for (int k = 0; k < 100; ++k) {
      w = step(w, sc);
      CHECK_FALSE(w.agent("robot").halted);
    }
    CHECK(dist(w.agent("robot").position, human_pos) > 0.5);
    CHECK(w.agent("human").halted);  // her latch is untouched
  }

  SUBCASE("a released agent may pass straight through the radius") {
    w = set_goal(w, "robot", sc.goal("A").position);
    for (int k = 0; k < 1000 && !w.agent("robot").halted; ++k) w = step(w, sc);
    // No re-trigger inside the disk: the robot crosses the human and halts
    // only at its own goal.
    CHECK(w.agent("robot").halted);
    CHECK(dist(w.agent("robot").position, sc.goal("A").position) < 0.5);
    CHECK(w.agent("human").position == Vec2{1.5, 1.25});
  }
}

TEST_CASE("set_goal reassigns, releases the latch and re-aims the heading") {
  Scenario sc =
      arena_with({agent("robot", Role::Robot, {1.0, 1.0}, "A", 0.08)});
  WorldState w = init_world(sc);
  w = set_goal(w, "robot", sc.goal("B").position);
  CHECK(w.agent("robot").goal == sc.goal("B").position);
  Vec2 expect = normalized(sc.goal("B").position - Vec2{1.0, 1.0});
  CHECK(w.agent("robot").heading == expect);
  w = set_goal(w, "robot", std::nullopt);
  CHECK_FALSE(w.agent("robot").goal.has_value());
  CHECK(w.agent("robot").heading == expect);  // heading kept
  Vec2 before = w.agent("robot").position;
  w = step(w, sc);
  CHECK(w.agent("robot").position == before);  // no goal, no motion
  CHECK_THROWS_AS(set_goal(w, "ghost", std::nullopt), std::invalid_argument);
}

TEST_CASE("observed_speed measures net displacement over the trailing window") {
  std::vector<WorldState> h;
  h.push_back(snapshot(0.0, {0.0, 0.0}));
  h.push_back(snapshot(0.5, {0.015, 0.0}));
  CHECK(observed_speed(h, "h") == doctest::Approx(0.03).epsilon(1e-12));

  // Entries older than the window are ignored.
  std::vector<WorldState> h2;
  h2.push_back(snapshot(0.0, {5.0, 5.0}));
  h2.push_back(snapshot(0.2, {0.0, 0.0}));
  h2.push_back(snapshot(0.7, {0.015, 0.0}));
  CHECK(observed_speed(h2, "h") == doctest::Approx(0.03).epsilon(1e-12));

  // Fewer than two states inside the window reads as stationary.
  std::vector<WorldState> h3;
  h3.push_back(snapshot(0.0, {0.0, 0.0}));
  h3.push_back(snapshot(0.7, {0.015, 0.0}));
  CHECK(observed_speed(h3, "h") == 0.0);
  std::vector<WorldState> h4{snapshot(0.0, {0.0, 0.0})};
  CHECK(observed_speed(h4, "h") == 0.0);

  // A round trip nets out to zero.
  std::vector<WorldState> h5;
  h5.push_back(snapshot(0.0, {0.0, 0.0}));
  h5.push_back(snapshot(0.25, {0.3, 0.0}));
  h5.push_back(snapshot(0.5, {0.0, 0.0}));
  CHECK(observed_speed(h5, "h") == 0.0);
}

TEST_CASE("speed noise is seeded, clamped and only drawn where enabled") {
  Scenario sc = arena_with(
      {agent("robot", Role::Robot, {0.4, 1.9}, "B", 0.08),
       agent("human", Role::Human, {0.8, 0.6}, "A", 0.03, 0.15)});

  auto roll = [&](std::uint64_t seed, int ticks) {
    Scenario s = sc;
    s.seed = seed;
    WorldState w = init_world(s);
    for (int k = 0; k < ticks; ++k) w = step(w, s);
    return w;
  };

  WorldState a = roll(1, 60), b = roll(1, 60), c = roll(2, 60);
  CHECK(a.agent("human").position == b.agent("human").position);  // same seed
  CHECK_FALSE(a.agent("human").position == c.agent("human").position);
  // The robot draws nothing (sigma 0), so its path ignores the seed.
  CHECK(a.agent("robot").position == c.agent("robot").position);

  // Huge sigma: speed clamps at zero, never negative, so the distance to
  // the goal never grows.
  Scenario wild = arena_with(
      {agent("robot", Role::Robot, {0.4, 1.9}, "B", 0.08),
       agent("human", Role::Human, {0.8, 0.6}, "A", 0.03, 10.0)});
  WorldState w = init_world(wild);
  double d_prev = dist(w.agent("human").position, wild.goal("A").position);
  for (int k = 0; k < 200; ++k) {
    w = step(w, wild);
    double d = dist(w.agent("human").position, wild.goal("A").position);
    CHECK(d <= d_prev + 1e-12);
    d_prev = d;
  }
}

TEST_CASE("rng stream is reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 5; ++i) CHECK(a.gaussian() == b.gaussian());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("random walkers stay on their segments and respect the pair bound") {
  Rng rng(42);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
  };
  const double dt = 1.0 / 30.0;
  for (int trial = 0; trial < 30; ++trial) {
    CAPTURE(trial);
    std::vector<Vec2> placed;
    auto place = [&]() {
      for (;;) {
        Vec2 p{uni(0.1, 2.9), uni(0.1, 2.4)};
        bool ok = true;
        for (Vec2 q : placed)
          if (dist(p, q) < 0.6) ok = false;
        if (ok) {
          placed.push_back(p);
          return p;
        }
      }
    };
    std::vector<AgentSpec> specs;
    specs.push_back(agent("robot", Role::Robot, place(),
                          rng.uniform01() < 0.5 ? "A" : "B", uni(0.02, 0.1)));
    for (int i = 0; i < 2; ++i) {
      std::optional<std::string> base;
      double roll = rng.uniform01();
      if (roll < 0.4)
        base = "A";
      else if (roll < 0.8)
        base = "B";
      specs.push_back(agent("human" + std::to_string(i), Role::Human, place(),
                            base, uni(0.02, 0.1)));
    }
    Scenario sc = arena_with(specs, {uni(0.2, 2.8), uni(0.2, 2.3)},
                             {uni(0.2, 2.8), uni(0.2, 2.3)});
    std::vector<double> speeds;
    for (const auto& s : sc.agents) speeds.push_back(s.nominal_speed);

    WorldState w = init_world(sc);
    std::vector<Vec2> starts, frozen(sc.agents.size());
    std::vector<bool> was_halted(sc.agents.size(), false);
    for (const auto& a : w.agents) starts.push_back(a.position);

    for (int k = 0; k < 400; ++k) {
      w = step(w, sc);
      for (size_t i = 0; i < w.agents.size(); ++i) {
        const AgentState& a = w.agents[i];
        // On-segment: position between start and goal, zero lateral drift.
        if (sc.agents[i].base_goal) {
          Vec2 seg = sc.goal(*sc.agents[i].base_goal).position - starts[i];
          Vec2 off = a.position - starts[i];
          CHECK(std::abs(cross(off, seg)) / std::max(1e-9, norm(seg)) < 1e-9);
          CHECK(dot(off, seg) >= -1e-12);
          CHECK(norm(off) <= norm(seg) + 1e-12);
        } else {
          CHECK(a.position == starts[i]);
        }
        // Halt latch freezes the agent for good.
        if (was_halted[i]) {
          CHECK(a.position == frozen[i]);
          CHECK(a.halted);
        }
        if (a.halted && !was_halted[i]) {
          was_halted[i] = true;
          frozen[i] = a.position;
        }
      }
      // Entry-halting caps the pairwise overshoot below the radius.
      for (size_t i = 0; i < w.agents.size(); ++i)
        for (size_t j = i + 1; j < w.agents.size(); ++j) {
          double bound = 0.5 - (speeds[i] + speeds[j]) * dt - 1e-9;
          CHECK(dist(w.agents[i].position, w.agents[j].position) >= bound);
        }
    }
  }
}
