#include "pommer/survivability.hpp"

#include <algorithm>

namespace pommer {
namespace {

// In a frozen-agent scenario the agent's own body sits in the step-0
// occupancy; it never blocks itself.
BitBoard self_mask(const Scenario& sc, Pos start) {
  return sc.occupied.front().test(start) ? ~BitBoard::single(start) : BitBoard::full();
}

}  // namespace

MoveRules move_rules(const Scenario& sc, int t, Pos start) {
  const BitBoard occupied = sc.occupied[t] & self_mask(sc, start);
  const BitBoard base = ~(sc.hazards.walls[t] | sc.hazards.flames[t] | occupied);
  return {base & ~sc.hazards.bombs[t], base};
}

std::vector<BitBoard> surviving_pairs(const Scenario& sc, const AgentState& agent) {
  const int horizon = sc.horizon;
  std::vector<BitBoard> kept(horizon + 1);
  if (!agent.alive) return kept;

  std::vector<MoveRules> rules(horizon + 1);
  for (int t = 0; t <= horizon; ++t) rules[t] = move_rules(sc, t, agent.position);

  std::vector<BitBoard> reach(horizon + 1);
  reach[0] = BitBoard::single(agent.position) & rules[0].stay;
  for (int t = 1; t <= horizon; ++t) {
    const BitBoard prev = reach[t - 1];
    reach[t] = (prev.neighbors() & rules[t].enter) | (prev & rules[t].stay);
  }

  kept[horizon] = reach[horizon];
  for (int t = horizon - 1; t >= 0; --t) {
    const BitBoard next = kept[t + 1];
    const BitBoard can_continue = (next & rules[t + 1].stay) | (next & rules[t + 1].enter).neighbors();
    kept[t] = reach[t] & can_continue;
  }
  return kept;
}

int survivability_dypm(const Scenario& sc, const AgentState& agent) {
  int total = 0;
  for (const BitBoard& b : surviving_pairs(sc, agent)) total += b.count();
  return total;
}

double survivability_hakozaki(const Scenario& sc, const AgentState& agent, ArrivalScoring scoring) {
  if (!agent.alive) return 0.0;
  const int horizon = sc.horizon;
  const Pos start = agent.position;
  const BitBoard own = self_mask(sc, start);

  std::array<int, kCellCount> arrival{};
  arrival.fill(kNeverOccupied);

  auto terrain = [&](int t) {
    const BitBoard base = ~(sc.hazards.walls[t] | sc.hazards.flames[t]);
    return MoveRules{base & ~sc.hazards.bombs[t], base};
  };

  BitBoard reach = BitBoard::single(start) & terrain(0).stay;
  reach.for_each([&](Pos p) { arrival[p.index()] = 0; });
  for (int t = 1; t <= horizon && reach.any(); ++t) {
    const MoveRules r = terrain(t);
    const BitBoard next = (reach.neighbors() & r.enter) | (reach & r.stay);
    (next & ~reach).for_each([&](Pos p) {
      if (arrival[p.index()] == kNeverOccupied) arrival[p.index()] = t;
    });
    reach = next;
  }

  double score = 0.0;
  reach.for_each([&](Pos p) {
    const int occupied_at = own.test(p) ? sc.first_occupied[p.index()] : kNeverOccupied;
    const int arrived_at = arrival[p.index()];
    if (occupied_at == kNeverOccupied) {
      score += 1.0;
      return;
    }
    if (arrived_at >= occupied_at) return;
    if (scoring == ArrivalScoring::FirstArrival) {
      score += 1.0;
    } else {
      score += std::min(1.0, static_cast<double>(occupied_at - arrived_at) / (horizon + 1));
    }
  });
  return score;
}

GameState without_agent(const GameState& state, int self) {
  GameState s = state;
  s.agents[self].alive = false;
  std::erase_if(s.bombs, [&](const Bomb& b) { return b.owner == self; });
  return s;
}

double normalized_opponent_survivability(const GameState& state, int self, int opponent,
                                         int horizon) {
  const int with_self =
      survivability_dypm(generate_static(state, horizon), state.agents[opponent]);
  const GameState alone = without_agent(state, self);
  const int without_self =
      survivability_dypm(generate_static(alone, horizon), alone.agents[opponent]);
  if (without_self == 0) return 1.0;
  return static_cast<double>(with_self) / without_self;
}

}  // namespace pommer
