#pragma once

// Board builders shared by the unit tests and the acceptance binary.

#include <stdexcept>
#include <string>
#include <vector>

#include "pommer/engine.hpp"

namespace pommer::testing {

// Agents missing from a drawing stay alive, parked along the bottom row, so
// that both teams remain in the game.
inline Pos parking_spot(int agent) { return {kBoardSize - 1, kBoardSize - 1 - 2 * agent}; }

// Draws rows onto the top-left corner of an otherwise `outside` board.
//   .  passage     #  rigid wall   w  wood
//   e  extra bomb  r  blast range  k  kick
//   0-3 agent on a passage cell
inline GameState board(const std::vector<std::string>& rows, Cell outside = Cell::Passage) {
  GameState s;
  s.grid.fill(outside);
  s.hidden.fill(Cell::Passage);
  std::array<bool, kAgentCount> placed{};
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    for (int c = 0; c < static_cast<int>(rows[r].size()); ++c) {
      const Pos p{r, c};
      Cell cell = Cell::Passage;
      switch (rows[r][c]) {
        case '.': break;
        case '#': cell = Cell::RigidWall; break;
        case 'w': cell = Cell::WoodWall; break;
        case 'e': cell = Cell::ItemExtraBomb; break;
        case 'r': cell = Cell::ItemBlastRange; break;
        case 'k': cell = Cell::ItemKick; break;
        case '0': case '1': case '2': case '3': {
          const int id = rows[r][c] - '0';
          s.agents[id].position = p;
          placed[id] = true;
          break;
        }
        default: throw std::invalid_argument(std::string("board: unknown glyph ") + rows[r][c]);
      }
      s.grid[p.index()] = cell;
    }
  }
  for (int i = 0; i < kAgentCount; ++i) {
    AgentState& a = s.agents[i];
    a.id = i;
    a.team = team_of(i);
    if (!placed[i]) {
      a.position = parking_spot(i);
      s.grid[a.position.index()] = Cell::Passage;
    }
  }
  return s;
}

inline Bomb bomb(Pos p, int owner, int timer, int strength = kInitialBlastStrength,
                 Action velocity = Action::Stop) {
  return Bomb{p, owner, timer, strength, velocity};
}

inline JointAction joint(Action a0, Action a1 = Action::Stop, Action a2 = Action::Stop,
                         Action a3 = Action::Stop) {
  return {a0, a1, a2, a3};
}

}  // namespace pommer::testing
