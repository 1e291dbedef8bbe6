#pragma once

// Hand-derived engine rule fixtures: a state, one or more joint actions and
// the exact state expected afterwards.

#include <optional>
#include <string>
#include <vector>

#include "support.hpp"

namespace pommer::testing {

struct RuleFixture {
  std::string name;
  GameState before;
  std::vector<JointAction> actions;
  GameState expected;
  std::optional<Outcome> expected_outcome;
};

inline std::vector<RuleFixture> rule_fixtures() {
  constexpr Action S = Action::Stop, U = Action::Up, D = Action::Down, L = Action::Left,
                   R = Action::Right, B = Action::PlaceBomb;
  constexpr Cell rigid = Cell::RigidWall;
  std::vector<RuleFixture> out;

  auto add = [&](std::string name, const GameState& before, std::vector<JointAction> actions,
                 auto&& edit, std::optional<Outcome> result = std::nullopt) {
    GameState expected = before;
    expected.step += static_cast<int>(actions.size());
    edit(expected);
    out.push_back({std::move(name), before, std::move(actions), expected, result});
  };
  auto kill = [](GameState& s, int agent) { s.agents[agent].alive = false; };
  auto flame = [](GameState& s, std::initializer_list<Pos> cells, int life = kFlameLife) {
    for (const Pos p : cells) s.flame_life[p.index()] = static_cast<std::uint8_t>(life);
  };

  // movement
  add("move into an open cell", board({"0.."}), {joint(R)},
      [](GameState& s) { s.agents[0].position = {0, 1}; });
  add("rigid wall blocks a move", board({"0#"}), {joint(R)}, [](GameState&) {});
  add("wood blocks a move", board({"0w"}), {joint(R)}, [](GameState&) {});
  add("board edge blocks a move", board({"0"}), {joint(U)}, [](GameState&) {});
  add("board edge blocks a left move", board({"0"}), {joint(L)}, [](GameState&) {});
  add("same target bounces both movers", board({"0.1"}), {joint(R, L)}, [](GameState&) {});
  add("swapping agents bounce", board({"01"}), {joint(R, L)}, [](GameState&) {});
  add("agent follows one that leaves", board({"01."}), {joint(R, R)}, [](GameState& s) {
    s.agents[0].position = {0, 1};
    s.agents[1].position = {0, 2};
  });
  add("walking into a standing agent bounces", board({"01"}), {joint(R, S)}, [](GameState&) {});
  add("bounces cascade down a line", board({"012#"}), {joint(R, R, R)}, [](GameState&) {});
  add("movers in opposite directions both move", board({".01."}), {joint(L, R)},
      [](GameState& s) {
        s.agents[0].position = {0, 0};
        s.agents[1].position = {0, 3};
      });
  {
    GameState s = board({"0."});
    s.agents[0].alive = false;
    add("dead agents do not move", s, {joint(R)}, [](GameState&) {});
  }
  {
    GameState s = board({"0."}, rigid);
    s.bombs = {bomb({0, 1}, 1, 5)};
    add("bomb blocks an agent without kick", s, {joint(R)},
        [](GameState& e) { e.bombs[0].timer = 4; });
  }

  // bomb placement
  add("place a bomb", board({"0"}), {joint(B)}, [](GameState& s) {
    s.bombs = {bomb({0, 0}, 0, kBombLife)};
    s.agents[0].ammo = 0;
  });
  {
    GameState s = board({"0"});
    s.agents[0].ammo = 0;
    add("no bomb without ammo", s, {joint(B)}, [](GameState&) {});
  }
  {
    GameState s = board({"0"});
    s.bombs = {bomb({0, 0}, 0, 5)};
    add("no second bomb on one cell", s, {joint(B)}, [](GameState& e) { e.bombs[0].timer = 4; });
  }
  {
    GameState s = board({"0."});
    s.agents[0].blast_strength = 4;
    add("placed bomb copies blast strength", s, {joint(B)}, [](GameState& e) {
      e.bombs = {bomb({0, 0}, 0, kBombLife, 4)};
      e.agents[0].ammo = 0;
    });
  }
  {
    GameState s = board({"0."});
    s.bombs = {bomb({0, 0}, 0, 5)};
    s.agents[0].ammo = 0;
    add("agent walks off its own bomb", s, {joint(R)}, [](GameState& e) {
      e.agents[0].position = {0, 1};
      e.bombs[0].timer = 4;
    });
  }
  {
    GameState s = board({"0.."});
    add("bomb lives ten steps", s,
        {joint(B), joint(R), joint(R), joint(S), joint(S), joint(S), joint(S), joint(S), joint(S),
         joint(S)},
        [](GameState& e) {
          e.agents[0].position = {0, 2};
          e.agents[0].ammo = 0;
          e.bombs = {bomb({0, 0}, 0, 1)};
        });
    add("bomb explodes on its tenth step", s,
        {joint(B), joint(R), joint(R), joint(S), joint(S), joint(S), joint(S), joint(S), joint(S),
         joint(S), joint(S)},
        [&](GameState& e) {
          e.agents[0].position = {0, 2};
          flame(e, {{0, 0}, {0, 1}, {1, 0}});
        });
  }

  // explosions
  {
    GameState s = board({".....", ".....", ".....", ".....", "....0"}, rigid);
    s.bombs = {bomb({2, 2}, 0, 1, 3)};
    s.agents[0].ammo = 0;
    add("explosion forms a cross", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      flame(e, {{2, 2}, {1, 2}, {0, 2}, {3, 2}, {4, 2}, {2, 1}, {2, 0}, {2, 3}, {2, 4}});
    });
  }
  {
    GameState s = board({"..#.."}, rigid);
    s.bombs = {bomb({0, 1}, 0, 1, 3)};
    s.agents[0].ammo = 0;
    add("rigid wall stops a blast", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({"..w.."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1, 4)};
    s.agents[0].ammo = 0;
    add("wood burns and stops a blast", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.grid[Pos{0, 2}.index()] = Cell::Passage;
      flame(e, {{0, 0}, {0, 1}, {0, 2}});
    });
  }
  {
    GameState s = board({".w"}, rigid);
    s.hidden[Pos{0, 1}.index()] = Cell::ItemKick;
    s.bombs = {bomb({0, 0}, 0, 1)};
    s.agents[0].ammo = 0;
    add("burning wood reveals its item", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.grid[Pos{0, 1}.index()] = Cell::ItemKick;
      e.hidden[Pos{0, 1}.index()] = Cell::Passage;
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({".r"}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1)};
    s.agents[0].ammo = 0;
    add("blast destroys an exposed item", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.grid[Pos{0, 1}.index()] = Cell::Passage;
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({".."}, rigid);
    s.flame_life[Pos{0, 0}.index()] = 2;
    add("flame burns down by one", s, {joint(S)}, [&](GameState& e) { flame(e, {{0, 0}}, 1); });
    add("flame is gone after two steps", s, {joint(S), joint(S)},
        [&](GameState& e) { flame(e, {{0, 0}}, 0); });
  }
  {
    GameState s = board({"0."}, rigid);
    s.bombs = {bomb({0, 1}, 1, 1)};
    s.agents[1].ammo = 0;
    add("agent in a blast dies", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[1].ammo = 1;
      kill(e, 0);
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({"0."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1)};
    s.agents[0].ammo = 0;
    add("agent on its own bomb dies", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      kill(e, 0);
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({"0."}, rigid);
    s.flame_life[Pos{0, 1}.index()] = 2;
    add("walking into flames kills", s, {joint(R)}, [&](GameState& e) {
      e.agents[0].position = {0, 1};
      kill(e, 0);
      flame(e, {{0, 1}}, 1);
    });
  }
  {
    GameState s = board({"0."}, rigid);
    s.flame_life[Pos{0, 1}.index()] = 1;
    add("a dying flame is harmless", s, {joint(R)}, [&](GameState& e) {
      e.agents[0].position = {0, 1};
      flame(e, {{0, 1}}, 0);
    });
  }
  {
    GameState s = board({"0.1"}, rigid);
    s.agents[2].alive = false;
    s.agents[3].alive = false;
    s.bombs = {bomb({0, 1}, 0, 1, 2)};
    s.agents[0].ammo = 0;
    add("last agents of both teams die together", s, {joint(R, L)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      kill(e, 0);
      kill(e, 1);
      flame(e, {{0, 0}, {0, 1}, {0, 2}});
    }, Outcome::Tie);
  }
  {
    GameState s = board({"0.1"}, rigid);
    s.agents[3].alive = false;
    s.bombs = {bomb({0, 2}, 0, 1)};
    s.agents[0].ammo = 0;
    add("last opponent dies", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      kill(e, 1);
      flame(e, {{0, 1}, {0, 2}});
    }, Outcome::WinA);
  }
  {
    GameState s = board({"0.1", "2.3"}, rigid);
    s.bombs = {bomb({0, 1}, 0, 1), bomb({1, 1}, 1, 1)};
    s.agents[0].ammo = 0;
    s.agents[1].ammo = 0;
    add("all four die at once", s, {joint(S, S, S, S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.agents[1].ammo = 1;
      for (int i = 0; i < kAgentCount; ++i) kill(e, i);
      flame(e, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
    }, Outcome::Tie);
  }

  // chains
  {
    GameState s = board({"....."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1), bomb({0, 1}, 1, 8, 3)};
    s.agents[0].ammo = 0;
    s.agents[1].ammo = 0;
    add("blast sets off a neighbouring bomb", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.agents[1].ammo = 1;
      flame(e, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
    });
  }
  {
    GameState s = board({"......."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1), bomb({0, 1}, 1, 9), bomb({0, 2}, 2, 9, 3)};
    for (int i = 0; i < 3; ++i) s.agents[i].ammo = 0;
    add("chain of three bombs", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      for (int i = 0; i < 3; ++i) e.agents[i].ammo = 1;
      flame(e, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
    });
  }
  {
    GameState s = board({"....."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 1), bomb({0, 2}, 1, 5)};
    s.agents[0].ammo = 0;
    add("bomb outside the blast keeps ticking", s, {joint(S)}, [&](GameState& e) {
      e.bombs = {bomb({0, 2}, 1, 4)};
      e.agents[0].ammo = 1;
      flame(e, {{0, 0}, {0, 1}});
    });
  }
  {
    GameState s = board({".w..."}, rigid);
    s.bombs = {bomb({0, 2}, 0, 1), bomb({0, 4}, 1, 1, 5)};
    s.agents[0].ammo = 0;
    s.agents[1].ammo = 0;
    add("blasts use the grid from before the explosion", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[0].ammo = 1;
      e.agents[1].ammo = 1;
      e.grid[Pos{0, 1}.index()] = Cell::Passage;
      flame(e, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    });
  }
  {
    GameState s = board({"...."}, rigid);
    s.bombs = {bomb({0, 0}, 1, 5, 2, R)};
    s.flame_life[Pos{0, 1}.index()] = 2;
    s.agents[1].ammo = 0;
    add("bomb sliding into flames explodes", s, {joint(S)}, [&](GameState& e) {
      e.bombs.clear();
      e.agents[1].ammo = 1;
      flame(e, {{0, 0}, {0, 1}, {0, 2}});
    });
  }

  // kicks and sliding
  {
    GameState s = board({"0.."}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 1, 5)};
    add("kick pushes the bomb one cell", s, {joint(R)}, [](GameState& e) {
      e.agents[0].position = {0, 1};
      e.bombs = {bomb({0, 2}, 1, 4, 2, R)};
    });
  }
  {
    GameState s = board({"0..."}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 1, 5)};
    add("kicked bomb keeps sliding", s, {joint(R), joint(S)}, [](GameState& e) {
      e.agents[0].position = {0, 1};
      e.bombs = {bomb({0, 3}, 1, 3, 2, R)};
    });
  }
  {
    GameState s = board({"0.#"}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 1, 5)};
    add("kick against a wall is refused", s, {joint(R)},
        [](GameState& e) { e.bombs[0].timer = 4; });
  }
  {
    GameState s = board({"0.1"}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 1, 5)};
    add("kick into an agent is refused", s, {joint(R)},
        [](GameState& e) { e.bombs[0].timer = 4; });
  }
  {
    GameState s = board({"..#"}, rigid);
    s.bombs = {bomb({0, 1}, 0, 5, 2, R)};
    add("sliding bomb stops at a wall", s, {joint(S)}, [](GameState& e) {
      e.bombs[0].timer = 4;
      e.bombs[0].velocity = Action::Stop;
    });
  }
  {
    GameState s = board({"..1"}, rigid);
    s.bombs = {bomb({0, 1}, 0, 5, 2, R)};
    add("sliding bomb stops at an agent", s, {joint(S)}, [](GameState& e) {
      e.bombs[0].timer = 4;
      e.bombs[0].velocity = Action::Stop;
    });
  }
  {
    GameState s = board({"..e"}, rigid);
    s.bombs = {bomb({0, 1}, 0, 5, 2, R)};
    add("sliding bomb stops at an item", s, {joint(S)}, [](GameState& e) {
      e.bombs[0].timer = 4;
      e.bombs[0].velocity = Action::Stop;
    });
  }
  {
    GameState s = board({"....."}, rigid);
    s.bombs = {bomb({0, 1}, 0, 5, 2, R), bomb({0, 3}, 1, 5, 2, L)};
    add("sliding bombs colliding both stop", s, {joint(S)}, [](GameState& e) {
      e.bombs = {bomb({0, 1}, 0, 4), bomb({0, 3}, 1, 4)};
    });
  }
  {
    GameState s = board({"....", "...."}, rigid);
    s.bombs = {bomb({0, 0}, 0, 5, 2, D)};
    add("sliding bomb moves down", s, {joint(S)}, [](GameState& e) {
      e.bombs = {bomb({1, 0}, 0, 4, 2, D)};
    });
  }
  {
    GameState s = board({"0..."}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 1, 1)};
    s.agents[1].ammo = 0;
    add("bomb kicked on its last step explodes where it lands", s, {joint(R)},
        [&](GameState& e) {
          e.bombs.clear();
          e.agents[0].position = {0, 1};
          kill(e, 0);
          e.agents[1].ammo = 1;
          flame(e, {{0, 1}, {0, 2}, {0, 3}});
        });
  }
  {
    GameState s = board({"0..", "1.."}, rigid);
    s.agents[0].can_kick = true;
    s.agents[1].can_kick = true;
    s.bombs = {bomb({0, 1}, 2, 5), bomb({1, 1}, 2, 5)};
    add("two kicks on separate rows both succeed", s, {joint(R, R)}, [](GameState& e) {
      e.agents[0].position = {0, 1};
      e.agents[1].position = {1, 1};
      e.bombs = {bomb({0, 2}, 2, 4, 2, R), bomb({1, 2}, 2, 4, 2, R)};
    });
  }
  {
    GameState s = board({"0..", "..2"}, rigid);
    s.agents[0].can_kick = true;
    s.bombs = {bomb({0, 1}, 3, 5)};
    add("kick bounces when another agent steps onto the landing cell", s, {joint(R, S, U)},
        [](GameState& e) {
          e.agents[2].position = {0, 2};
          e.bombs[0].timer = 4;
        });
  }

  // items
  add("pick up an extra bomb", board({"0e"}), {joint(R)}, [](GameState& e) {
    e.agents[0].position = {0, 1};
    e.agents[0].ammo = 2;
    e.grid[Pos{0, 1}.index()] = Cell::Passage;
  });
  add("pick up blast range", board({"0r"}), {joint(R)}, [](GameState& e) {
    e.agents[0].position = {0, 1};
    e.agents[0].blast_strength = 3;
    e.grid[Pos{0, 1}.index()] = Cell::Passage;
  });
  add("pick up kick", board({"0k"}), {joint(R)}, [](GameState& e) {
    e.agents[0].position = {0, 1};
    e.agents[0].can_kick = true;
    e.grid[Pos{0, 1}.index()] = Cell::Passage;
  });
  add("contested item stays put", board({"0e1"}), {joint(R, L)}, [](GameState&) {});
  {
    GameState s = board({"0e"}, rigid);
    s.flame_life[Pos{0, 1}.index()] = 2;
    add("dead agents pick up nothing", s, {joint(R)}, [&](GameState& e) {
      e.agents[0].position = {0, 1};
      kill(e, 0);
      flame(e, {{0, 1}}, 1);
    });
  }

  // episode end
  {
    GameState s = board({"0"});
    s.step = s.max_steps - 1;
    add("step limit ends in a tie", s, {joint(S)}, [](GameState&) {}, Outcome::Tie);
  }
  return out;
}

}  // namespace pommer::testing
