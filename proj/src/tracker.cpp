#include "pommer/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pommer {
namespace {

// Hazards and terrain only; agents are left out so nothing out of view is
// invented about them.
GameState hazard_state(const Belief& b) {
  GameState s;
  for (int i = 0; i < kCellCount; ++i) s.grid[i] = b.grid[i].kind.value_or(Cell::Passage);
  s.hidden.fill(Cell::Passage);
  s.flame_life = b.flame_life;
  for (const TrackedBomb& t : b.bombs) s.bombs.push_back(t.bomb);
  for (int i = 0; i < kAgentCount; ++i) {
    s.agents[i].id = i;
    s.agents[i].team = team_of(i);
    s.agents[i].alive = false;
  }
  s.step = b.step;
  s.max_steps = b.max_steps;
  return s;
}

void absorb(Belief& b, const Observation& obs) {
  for (int i = 0; i < kCellCount; ++i) {
    if (!obs.visible.test(i)) continue;
    b.grid[i].kind = obs.grid[i];
    b.grid[i].last_seen = obs.step;
    b.flame_life[i] = obs.flame_life[i];
  }
  std::erase_if(b.bombs, [&](const TrackedBomb& t) { return obs.visible.test(t.bomb.position); });
  for (const Bomb& bomb : obs.bombs) b.bombs.push_back({bomb, BombConfidence::Seen});
  std::sort(b.bombs.begin(), b.bombs.end(), [](const TrackedBomb& x, const TrackedBomb& y) {
    return x.bomb.position.index() < y.bomb.position.index();
  });

  for (int j = 0; j < kAgentCount; ++j) {
    if (j == obs.self) continue;
    auto& seen = b.agents_last_seen[j];
    if (obs.agents[j]) {
      seen = Sighting{*obs.agents[j], obs.step, false};
    } else if (seen) {
      seen->stale = true;
      if (!obs.alive[j]) seen->state.alive = false;
    }
  }
  b.alive = obs.alive;
  b.self = obs.self;
  b.self_state = obs.self_state;
  b.visible = obs.visible;
  b.step = obs.step;
  b.max_steps = obs.max_steps;
}

}  // namespace

Belief initial_belief(const Observation& obs) {
  Belief b;
  absorb(b, obs);
  return b;
}

Belief update(const Belief& belief, const Observation& obs) {
  if (obs.step != belief.step + 1)
    throw std::logic_error("tracker: observation step " + std::to_string(obs.step) +
                           " does not follow belief step " + std::to_string(belief.step));
  if (obs.self != belief.self) throw std::logic_error("tracker: observer changed");

  // Roll remembered hazards forward one step with the engine's own rules.
  GameState projected = hazard_state(belief);
  projected.max_steps = std::max(projected.max_steps, projected.step + 1);
  apply_step(projected, JointAction{});

  Belief next = belief;
  for (int i = 0; i < kCellCount; ++i) {
    next.flame_life[i] = projected.flame_life[i];
    // Wood that a projected blast burned is now passable; unknown items stay absent.
    if (next.grid[i].kind == Cell::WoodWall || (next.grid[i].kind && is_item(*next.grid[i].kind)))
      next.grid[i].kind = projected.grid[i];
  }
  next.bombs.clear();
  for (const Bomb& bomb : projected.bombs) next.bombs.push_back({bomb, BombConfidence::Projected});
  absorb(next, obs);
  return next;
}

GameState to_search_state(const Belief& b) {
  GameState s = hazard_state(b);
  s.step = b.step;
  s.max_steps = std::max(b.max_steps, b.step);

  BitBoard taken;
  auto place = [&](const AgentState& a) {
    AgentState& slot = s.agents[a.id];
    slot = a;
    if (!a.alive) return;
    if (taken.test(a.position) || is_wall(s.cell(a.position))) {
      slot.alive = false;
      return;
    }
    taken.set(a.position);
  };

  place(b.self_state);
  // Fresh sightings first, then stale ones from most to least recent.
  std::array<int, kAgentCount> order{};
  int n = 0;
  for (int j = 0; j < kAgentCount; ++j)
    if (j != b.self && b.agents_last_seen[j]) order[n++] = j;
  std::stable_sort(order.begin(), order.begin() + n, [&](int x, int y) {
    const Sighting& sx = *b.agents_last_seen[x];
    const Sighting& sy = *b.agents_last_seen[y];
    if (sx.stale != sy.stale) return !sx.stale;
    return sx.step > sy.step;
  });
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    AgentState a = b.agents_last_seen[j]->state;
    a.alive = a.alive && b.alive[j];
    place(a);
  }
  return s;
}

}  // namespace pommer
