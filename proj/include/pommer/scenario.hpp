#pragma once

// Deterministic pessimistic scenarios: a branch-free sequence of boards in
// which every agent other than the evaluated one is smeared over all cells it
// could have reached.

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pommer/bitboard.hpp"
#include "pommer/engine.hpp"

namespace pommer {

inline constexpr int kDefaultHorizon = 12;
inline constexpr int kNeverOccupied = std::numeric_limits<std::int16_t>::max();

enum class OccupancyMode { Boolean, EarliestTime };

struct PessimismParams {
  // Steps during which other agents keep spreading (Boolean mode only).
  int level = 3;
  int horizon = kDefaultHorizon;
  OccupancyMode mode = OccupancyMode::Boolean;
  // Extension: every smeared agent with ammo drops a bomb on its start cell.
  bool project_bombs = false;
};

// Throws std::invalid_argument on level < 0, level > horizon or horizon < 1.
void validate(const PessimismParams& params);

// Terrain and hazards per step, index 0 being the input state.
struct HazardTimeline {
  std::vector<BitBoard> walls;
  std::vector<BitBoard> bombs;
  std::vector<BitBoard> flames;

  int horizon() const { return static_cast<int>(walls.size()) - 1; }
};

// Runs the engine with all agents removed for `horizon` steps.
HazardTimeline project_hazards(const GameState& state, int horizon);

struct OccupancyBoard {
  OccupancyMode mode = OccupancyMode::Boolean;
  BitBoard occupied;
  // EarliestTime mode: first occupation step if it is <= this board's step.
  std::array<std::int16_t, kCellCount> first_time{};

  bool is_occupied(Pos p) const { return occupied.test(p); }
};

struct Scenario {
  int horizon = kDefaultHorizon;
  OccupancyMode mode = OccupancyMode::Boolean;
  HazardTimeline hazards;
  // Cumulative occupancy by step t, t = 0..horizon.
  std::vector<BitBoard> occupied;
  // First step each cell was occupied, kNeverOccupied otherwise.
  std::array<std::int16_t, kCellCount> first_occupied{};

  OccupancyBoard board(int t) const;
  BitBoard projected_flames(int t) const { return hazards.flames[t]; }
  BitBoard projected_bombs(int t) const { return hazards.bombs[t]; }

  friend bool operator==(const Scenario& a, const Scenario& b);
};

using AgentMask = std::uint8_t;
constexpr AgentMask agent_bit(int agent) { return static_cast<AgentMask>(1u << agent); }
inline constexpr AgentMask kAllAgents = 0b1111;

Scenario generate(const GameState& state, AgentMask excluded, const PessimismParams& params);
// Same, reusing a timeline already projected from `state`.
Scenario generate(const GameState& state, const HazardTimeline& hazards, AgentMask excluded,
                  const PessimismParams& params);

// Hazards only; every alive agent stays frozen on its cell.
Scenario generate_static(const GameState& state, int horizon = kDefaultHorizon);
Scenario generate_static(const GameState& state, const HazardTimeline& hazards);

// Debug dump: one JSON object per board.
std::string dump_jsonl(const Scenario& scenario);

}  // namespace pommer
