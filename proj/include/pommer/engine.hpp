#pragma once

// Deterministic forward model of the 2v2 Pommerman game.
//
// The state is a plain value type. step() never mutates its argument; the
// in-place apply_step() exists for hot loops (scenario projection, search
// leaves) that own a scratch copy. RULES.md documents every mechanic.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pommer/bitboard.hpp"

namespace pommer {

inline constexpr int kAgentCount = 4;
inline constexpr int kBombLife = 10;
inline constexpr int kFlameLife = 2;
inline constexpr int kViewRadius = 4;
inline constexpr int kDefaultMaxSteps = 800;
inline constexpr int kInitialAmmo = 1;
inline constexpr int kInitialBlastStrength = 2;

enum class Cell : std::uint8_t {
  Passage,
  RigidWall,
  WoodWall,
  ItemExtraBomb,
  ItemBlastRange,
  ItemKick,
};

constexpr bool is_item(Cell c) {
  return c == Cell::ItemExtraBomb || c == Cell::ItemBlastRange || c == Cell::ItemKick;
}
constexpr bool is_wall(Cell c) { return c == Cell::RigidWall || c == Cell::WoodWall; }

enum class Action : std::uint8_t { Stop, Up, Down, Left, Right, PlaceBomb };
inline constexpr int kActionCount = 6;
inline constexpr std::array<Action, kActionCount> kAllActions = {
    Action::Stop, Action::Up, Action::Down, Action::Left, Action::Right, Action::PlaceBomb};

constexpr bool is_move(Action a) {
  return a == Action::Up || a == Action::Down || a == Action::Left || a == Action::Right;
}

// Target of a movement action; Stop and PlaceBomb stay in place.
constexpr Pos offset(Pos p, Action a) {
  switch (a) {
    case Action::Up: return {p.row - 1, p.col};
    case Action::Down: return {p.row + 1, p.col};
    case Action::Left: return {p.row, p.col - 1};
    case Action::Right: return {p.row, p.col + 1};
    default: return p;
  }
}

std::string_view to_string(Action a);
std::optional<Action> action_from_string(std::string_view s);

using JointAction = std::array<Action, kAgentCount>;

enum class Team : std::uint8_t { A, B };

// Agents 0 and 2 form team A, 1 and 3 team B; teammates start in opposite corners.
constexpr Team team_of(int agent) { return agent % 2 == 0 ? Team::A : Team::B; }
constexpr int teammate_of(int agent) { return (agent + 2) % kAgentCount; }

struct AgentState {
  int id = 0;
  Pos position;
  bool alive = true;
  int ammo = kInitialAmmo;
  int blast_strength = kInitialBlastStrength;
  bool can_kick = false;
  Team team = Team::A;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct Bomb {
  Pos position;
  int owner = 0;
  int timer = kBombLife;
  int blast_strength = kInitialBlastStrength;
  // Stop means the bomb is not sliding; otherwise one of Up/Down/Left/Right.
  Action velocity = Action::Stop;

  friend bool operator==(const Bomb&, const Bomb&) = default;
};

struct Flame {
  Pos position;
  int remaining_life = kFlameLife;

  friend bool operator==(const Flame&, const Flame&) = default;
};

enum class Outcome { Ongoing, WinA, WinB, Tie };
std::string_view to_string(Outcome o);

struct GameState {
  std::array<Cell, kCellCount> grid{};
  // Item revealed when the wood at that cell burns; Passage when nothing is hidden.
  std::array<Cell, kCellCount> hidden{};
  std::array<AgentState, kAgentCount> agents{};
  std::vector<Bomb> bombs;
  // Remaining flame life per cell; 0 means no flame.
  std::array<std::uint8_t, kCellCount> flame_life{};
  int step = 0;
  int max_steps = kDefaultMaxSteps;

  Cell cell(Pos p) const { return grid[p.index()]; }
  bool has_flame(Pos p) const { return flame_life[p.index()] > 0; }
  const Bomb* bomb_at(Pos p) const;
  std::vector<Flame> flames() const;
  // Index of the alive agent standing on p, if any.
  std::optional<int> agent_at(Pos p) const;

  BitBoard walls() const;
  BitBoard wood() const;
  BitBoard bomb_cells() const;
  BitBoard flame_cells() const;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Seeded board generation. Same seed gives a bit-identical state.
GameState initial_state(std::uint64_t seed, int max_steps = kDefaultMaxSteps);

// Throws std::invalid_argument naming the first violated invariant.
void validate(const GameState& state);

// Validated, pure transition.
GameState step(const GameState& state, const JointAction& actions);
// Unchecked in-place transition with identical semantics.
void apply_step(GameState& state, const JointAction& actions);

Outcome outcome(const GameState& state);

// Cells covered by a bomb's explosion on the current grid: the bomb cell plus
// blast_strength - 1 cells per arm, stopping before rigid walls and on wood.
BitBoard blast_cells(const GameState& state, const Bomb& bomb);

struct Observation {
  int step = 0;
  int max_steps = kDefaultMaxSteps;
  int self = 0;
  int view_radius = kViewRadius;
  AgentState self_state;
  BitBoard visible;
  // nullopt is fog.
  std::array<std::optional<Cell>, kCellCount> grid{};
  std::vector<Bomb> bombs;
  std::array<std::uint8_t, kCellCount> flame_life{};
  std::array<std::optional<AgentState>, kAgentCount> agents{};
  // Which agents are still in the game, known board-wide.
  std::array<bool, kAgentCount> alive{};

  bool fog(Pos p) const { return !visible.test(p); }
};

Observation observe(const GameState& state, int agent, int view_radius = kViewRadius);

}  // namespace pommer
