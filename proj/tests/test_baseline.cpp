#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pommer/baseline.hpp"
#include "support.hpp"

using namespace pommer;
using namespace pommer::testing;

namespace {

GameState lone_pair() {
  GameState s = board({"0"});
  s.agents[1].position = {10, 10};
  s.agents[2].alive = false;
  s.agents[3].alive = false;
  return s;
}

}  // namespace

TEST_CASE("flees a blast arriving next step through the only safe neighbour") {
  GameState s = board({"#####", "#0..#", "#.###", "#####"}, Cell::RigidWall);
  s.bombs.push_back(bomb({1, 3}, 1, 1, 3));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    CHECK(baseline_act(observe(s, 0), rng) == Action::Down);
  }
}

TEST_CASE("same observation and seed give the same action") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameState s = oracle::random_midgame(seed);
    for (int i = 0; i < kAgentCount; ++i) {
      if (!s.agents[i].alive) continue;
      const Observation obs = observe(s, i);
      std::mt19937_64 a(seed * 7 + i);
      std::mt19937_64 b(seed * 7 + i);
      for (int k = 0; k < 5; ++k) CHECK(baseline_act(obs, a) == baseline_act(obs, b));
    }
  }
}

TEST_CASE("never bombs on an open board with nothing to hit") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GameState s = lone_pair();
    BaselineAgent agent(seed, BaselineParams{1.0});
    for (int step = 0; step < 100; ++step) {
      const Action a = agent.act(observe(s, 0));
      if (a == Action::PlaceBomb) {
        // only ever next to the other agent
        CHECK(manhattan(s.agents[0].position, s.agents[1].position) == 1);
      }
      apply_step(s, joint(a));
    }
  }
}

TEST_CASE("bombs adjacent wood according to the draw") {
  GameState s = lone_pair();
  s.grid[Pos{0, 1}.index()] = Cell::WoodWall;
  std::mt19937_64 rng(1);
  CHECK(baseline_act(observe(s, 0), rng, BaselineParams{1.0}) == Action::PlaceBomb);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 r(seed);
    CHECK(baseline_act(observe(s, 0), r, BaselineParams{0.0}) != Action::PlaceBomb);
  }
  // about half the time at the default probability
  int bombs = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    std::mt19937_64 r(seed);
    bombs += baseline_act(observe(s, 0), r) == Action::PlaceBomb ? 1 : 0;
  }
  CHECK(bombs > 150);
  CHECK(bombs < 250);
}

TEST_CASE("does not bomb when no escape exists") {
  GameState s = board({"#####", "#0w##", "#####"}, Cell::RigidWall);
  std::mt19937_64 rng(3);
  CHECK(baseline_act(observe(s, 0), rng, BaselineParams{1.0}) != Action::PlaceBomb);
}

TEST_CASE("bombs an adjacent enemy") {
  GameState s = board({"01"});
  s.agents[2].alive = false;
  s.agents[3].alive = false;
  std::mt19937_64 rng(4);
  CHECK(baseline_act(observe(s, 0), rng, BaselineParams{1.0}) == Action::PlaceBomb);
}

TEST_CASE("walks toward a visible item") {
  GameState s = lone_pair();
  s.grid[Pos{0, 3}.index()] = Cell::ItemKick;
  std::mt19937_64 rng(2);
  CHECK(baseline_act(observe(s, 0), rng, BaselineParams{0.0}) == Action::Right);
}

TEST_CASE("never steps into a burning cell when another move is open") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GameState s = oracle::random_midgame(seed);
    std::mt19937_64 fire(seed);
    for (int i = 0; i < kAgentCount; ++i) {
      if (!s.agents[i].alive) continue;
      // set some cells around the agent alight
      for (const Action m : {Action::Up, Action::Down, Action::Left, Action::Right}) {
        const Pos p = offset(s.agents[i].position, m);
        if (in_bounds(p) && !is_wall(s.cell(p)) && fire() % 3 == 0) s.flame_life[p.index()] = 2;
      }
    }
    for (int i = 0; i < kAgentCount; ++i) {
      if (!s.agents[i].alive) continue;
      const Observation obs = observe(s, i);
      std::mt19937_64 rng(seed + i);
      const Action a = baseline_act(obs, rng);
      const Pos me = s.agents[i].position;
      auto open = [&](Action m) {
        if (m == Action::Stop) return true;
        const Pos p = offset(me, m);
        if (!in_bounds(p) || is_wall(s.cell(p)) || s.bomb_at(p)) return false;
        for (const AgentState& other : s.agents)
          if (other.alive && other.id != i && other.position == p) return false;
        return true;
      };
      // flames with life above one are still there after this step
      auto burning = [&](Action m) {
        const Pos p = m == Action::PlaceBomb ? me : offset(me, m);
        return in_bounds(p) && s.flame_life[p.index()] > 1;
      };
      bool some_burning = false;
      bool alternative = false;
      for (const Action m : {Action::Stop, Action::Up, Action::Down, Action::Left, Action::Right}) {
        some_burning |= open(m) && burning(m);
        alternative |= open(m) && !burning(m);
      }
      if (!some_burning) continue;
      ++checked;
      if (alternative) CHECK_FALSE(burning(a));
    }
  }
  CHECK(checked > 200);
}
