#pragma once

// Per-agent fused estimate of the full board, built from the fogged
// observation stream.

#include <array>
#include <optional>
#include <vector>

#include "pommer/engine.hpp"

namespace pommer {

inline constexpr int kNeverSeen = -1;

struct CellEstimate {
  std::optional<Cell> kind;  // nullopt until the cell has been observed
  int last_seen = kNeverSeen;

  friend bool operator==(const CellEstimate&, const CellEstimate&) = default;
};

enum class BombConfidence { Seen, Projected };

struct TrackedBomb {
  Bomb bomb;
  BombConfidence confidence = BombConfidence::Seen;

  friend bool operator==(const TrackedBomb&, const TrackedBomb&) = default;
};

struct Sighting {
  AgentState state;
  int step = 0;
  bool stale = false;

  friend bool operator==(const Sighting&, const Sighting&) = default;
};

struct Belief {
  int self = 0;
  int step = 0;
  int max_steps = kDefaultMaxSteps;
  AgentState self_state;
  BitBoard visible;
  std::array<CellEstimate, kCellCount> grid{};
  std::vector<TrackedBomb> bombs;
  std::array<std::uint8_t, kCellCount> flame_life{};
  // Last sighting of every other agent; nullopt while never seen.
  std::array<std::optional<Sighting>, kAgentCount> agents_last_seen{};
  std::array<bool, kAgentCount> alive{};

  // Other agent currently in view.
  bool sees(int agent) const {
    const auto& s = agents_last_seen[agent];
    return agent != self && alive[agent] && s && !s->stale;
  }

  friend bool operator==(const Belief&, const Belief&) = default;
};

// Belief from a first observation.
Belief initial_belief(const Observation& obs);

// Fuses the next observation. Throws std::logic_error unless
// obs.step == belief.step + 1 and the observer matches.
Belief update(const Belief& belief, const Observation& obs);

// Concrete state for search: unseen cells become Passage, stale agents stay at
// their last-seen cell, projected bombs and flames are kept.
GameState to_search_state(const Belief& belief);

}  // namespace pommer
