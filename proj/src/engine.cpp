#include "pommer/engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace pommer {
namespace {

constexpr int kRigidWallCount = 36;
constexpr int kWoodWallCount = 36;
constexpr int kItemCount = 20;

constexpr std::array<Pos, kAgentCount> kStartPositions = {
    Pos{1, 1}, Pos{kBoardSize - 2, 1}, Pos{kBoardSize - 2, kBoardSize - 2},
    Pos{1, kBoardSize - 2}};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

// The row/column ring joining the four corners. Kept free of rigid walls so
// every pair of agents is connected through passages and wood.
bool on_ring(Pos p) {
  const bool ring_row = (p.row == 1 || p.row == kBoardSize - 2) && p.col >= 1 &&
                        p.col <= kBoardSize - 2;
  const bool ring_col = (p.col == 1 || p.col == kBoardSize - 2) && p.row >= 1 &&
                        p.row <= kBoardSize - 2;
  return ring_row || ring_col;
}

// Each agent's corner plus two cells along both inward directions.
bool in_start_pocket(Pos p) {
  for (const Pos s : kStartPositions) {
    if (p.row == s.row && std::abs(p.col - s.col) <= 2) return true;
    if (p.col == s.col && std::abs(p.row - s.row) <= 2) return true;
  }
  return false;
}

// Wood segments blocking the ring between neighbouring corners.
bool on_ring_wood(Pos p) {
  if (!on_ring(p)) return false;
  const bool mid_col = p.col >= 4 && p.col <= kBoardSize - 5;
  const bool mid_row = p.row >= 4 && p.row <= kBoardSize - 5;
  return mid_col || mid_row;
}

Pos transpose(Pos p) { return {p.col, p.row}; }

void explode(GameState& s) {
  const std::size_t n = s.bombs.size();
  std::vector<char> exploding(n, 0);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.bombs[i].timer <= 0 || s.has_flame(s.bombs[i].position)) {
      exploding[i] = 1;
      queue.push_back(i);
    }
  }
  if (queue.empty()) return;

  // Blasts are computed against the grid as it was before this step's
  // explosions; wood destroyed by one blast still stops another.
  BitBoard burning;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const BitBoard cells = blast_cells(s, s.bombs[queue[q]]);
    burning |= cells;
    for (std::size_t j = 0; j < n; ++j) {
      if (!exploding[j] && cells.test(s.bombs[j].position)) {
        exploding[j] = 1;
        queue.push_back(j);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (exploding[i]) {
      const int owner = s.bombs[i].owner;
      if (owner >= 0 && owner < kAgentCount) ++s.agents[owner].ammo;
    }
  }
  std::vector<Bomb> remaining;
  remaining.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!exploding[i]) remaining.push_back(s.bombs[i]);
  s.bombs = std::move(remaining);

  burning.for_each([&](Pos p) {
    Cell& c = s.grid[p.index()];
    if (c == Cell::WoodWall) {
      c = s.hidden[p.index()];
      s.hidden[p.index()] = Cell::Passage;
    } else if (is_item(c)) {
      c = Cell::Passage;
    }
    s.flame_life[p.index()] = kFlameLife;
  });
}

void advance_sliding_bombs(GameState& s) {
  const std::size_t n = s.bombs.size();
  std::vector<Pos> target(n);
  std::vector<char> moving(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Bomb& b = s.bombs[i];
    target[i] = b.position;
    if (b.velocity == Action::Stop) continue;
    const Pos t = offset(b.position, b.velocity);
    if (!in_bounds(t) || s.cell(t) != Cell::Passage || s.agent_at(t)) {
      b.velocity = Action::Stop;
      continue;
    }
    target[i] = t;
    moving[i] = 1;
  }
  // Stop bombs colliding with each other; a stopped bomb may block another.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!moving[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || target[i] != target[j]) continue;
        moving[i] = 0;
        target[i] = s.bombs[i].position;
        s.bombs[i].velocity = Action::Stop;
        if (moving[j]) {
          moving[j] = 0;
          target[j] = s.bombs[j].position;
          s.bombs[j].velocity = Action::Stop;
        }
        changed = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) s.bombs[i].position = target[i];
}

void resolve_agents(GameState& s, const JointAction& actions) {
  std::array<Pos, kAgentCount> dest{};
  std::array<bool, kAgentCount> kicks{};
  std::array<Pos, kAgentCount> kick_dest{};
  std::array<int, kAgentCount> kicked_bomb{};
  kicked_bomb.fill(-1);

  auto bomb_index = [&](Pos p) -> int {
    for (std::size_t i = 0; i < s.bombs.size(); ++i)
      if (s.bombs[i].position == p) return static_cast<int>(i);
    return -1;
  };

  for (int i = 0; i < kAgentCount; ++i) {
    const AgentState& a = s.agents[i];
    dest[i] = a.position;
    if (!a.alive || !is_move(actions[i])) continue;
    const Pos t = offset(a.position, actions[i]);
    if (!in_bounds(t) || is_wall(s.cell(t))) continue;
    const int b = bomb_index(t);
    if (b >= 0) {
      if (!a.can_kick) continue;
      const Pos beyond = offset(t, actions[i]);
      if (!in_bounds(beyond) || s.cell(beyond) != Cell::Passage || bomb_index(beyond) >= 0 ||
          s.agent_at(beyond)) {
        continue;
      }
      kicks[i] = true;
      kick_dest[i] = beyond;
      kicked_bomb[i] = b;
    }
    dest[i] = t;
  }

  auto bounce = [&](int i) {
    dest[i] = s.agents[i].position;
    kicks[i] = false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < kAgentCount; ++i) {
      if (!s.agents[i].alive || dest[i] == s.agents[i].position) continue;
      for (int j = 0; j < kAgentCount; ++j) {
        if (i == j || !s.agents[j].alive) continue;
        const bool same_target = dest[i] == dest[j];
        const bool swap = dest[i] == s.agents[j].position && dest[j] == s.agents[i].position;
        const bool bomb_clash = kicks[i] && (kick_dest[i] == dest[j] ||
                                             (kicks[j] && kick_dest[i] == kick_dest[j]));
        if (same_target || swap || bomb_clash) {
          bounce(i);
          if ((same_target || swap) && dest[j] != s.agents[j].position) bounce(j);
          changed = true;
          break;
        }
      }
    }
  }

  for (int i = 0; i < kAgentCount; ++i) {
    if (!s.agents[i].alive) continue;
    s.agents[i].position = dest[i];
    if (kicks[i]) {
      Bomb& b = s.bombs[kicked_bomb[i]];
      b.position = kick_dest[i];
      b.velocity = actions[i];
    }
  }

  for (int i = 0; i < kAgentCount; ++i) {
    AgentState& a = s.agents[i];
    if (!a.alive || actions[i] != Action::PlaceBomb) continue;
    if (a.ammo <= 0 || bomb_index(a.position) >= 0) continue;
    s.bombs.push_back(Bomb{a.position, i, kBombLife, a.blast_strength, Action::Stop});
    --a.ammo;
  }
}

}  // namespace

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Stop: return "stop";
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::PlaceBomb: return "bomb";
  }
  return "?";
}

std::optional<Action> action_from_string(std::string_view s) {
  for (const Action a : kAllActions)
    if (to_string(a) == s) return a;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::WinA: return "win_a";
    case Outcome::WinB: return "win_b";
    case Outcome::Tie: return "tie";
  }
  return "?";
}

const Bomb* GameState::bomb_at(Pos p) const {
  for (const Bomb& b : bombs)
    if (b.position == p) return &b;
  return nullptr;
}

std::vector<Flame> GameState::flames() const {
  std::vector<Flame> out;
  for (int i = 0; i < kCellCount; ++i)
    if (flame_life[i] > 0) out.push_back({Pos::from_index(i), flame_life[i]});
  return out;
}

std::optional<int> GameState::agent_at(Pos p) const {
  for (const AgentState& a : agents)
    if (a.alive && a.position == p) return a.id;
  return std::nullopt;
}

BitBoard GameState::walls() const {
  BitBoard b;
  for (int i = 0; i < kCellCount; ++i)
    if (is_wall(grid[i])) b.set(i);
  return b;
}

BitBoard GameState::wood() const {
  BitBoard b;
  for (int i = 0; i < kCellCount; ++i)
    if (grid[i] == Cell::WoodWall) b.set(i);
  return b;
}

BitBoard GameState::bomb_cells() const {
  BitBoard b;
  for (const Bomb& bomb : bombs) b.set(bomb.position);
  return b;
}

BitBoard GameState::flame_cells() const {
  BitBoard b;
  for (int i = 0; i < kCellCount; ++i)
    if (flame_life[i] > 0) b.set(i);
  return b;
}

BitBoard blast_cells(const GameState& state, const Bomb& bomb) {
  BitBoard cells = BitBoard::single(bomb.position);
  constexpr std::array<Action, 4> arms = {Action::Up, Action::Down, Action::Left, Action::Right};
  for (const Action arm : arms) {
    Pos p = bomb.position;
    for (int k = 1; k < bomb.blast_strength; ++k) {
      p = offset(p, arm);
      if (!in_bounds(p)) break;
      const Cell c = state.cell(p);
      if (c == Cell::RigidWall) break;
      cells.set(p);
      if (c == Cell::WoodWall) break;
    }
  }
  return cells;
}

GameState initial_state(std::uint64_t seed, int max_steps) {
  std::mt19937_64 rng(seed);
  GameState s;
  s.grid.fill(Cell::Passage);
  s.hidden.fill(Cell::Passage);
  s.max_steps = max_steps;

  for (int i = 0; i < kAgentCount; ++i) {
    AgentState& a = s.agents[i];
    a.id = i;
    a.position = kStartPositions[i];
    a.team = team_of(i);
  }

  std::vector<Pos> free_cells;
  for (int i = 0; i < kCellCount; ++i) {
    const Pos p = Pos::from_index(i);
    if (on_ring_wood(p)) s.grid[i] = Cell::WoodWall;
  }

  auto place_symmetric = [&](Cell kind, int target, auto&& allowed) {
    int placed = 0;
    for (int i = 0; i < kCellCount; ++i)
      if (s.grid[i] == kind) ++placed;
    while (placed < target) {
      free_cells.clear();
      for (int i = 0; i < kCellCount; ++i) {
        const Pos p = Pos::from_index(i);
        if (s.grid[i] != Cell::Passage || !allowed(p)) continue;
        // off-diagonal cells go in mirrored pairs, diagonal ones fix an odd count
        const Pos q = transpose(p);
        const bool fits = q == p ? (target - placed) % 2 == 1
                                 : target - placed >= 2 && s.grid[q.index()] == Cell::Passage;
        if (fits) free_cells.push_back(p);
      }
      if (free_cells.empty()) break;
      const Pos p = free_cells[draw(rng, free_cells.size())];
      s.grid[p.index()] = kind;
      ++placed;
      const Pos q = transpose(p);
      if (q != p && s.grid[q.index()] == Cell::Passage) {
        s.grid[q.index()] = kind;
        ++placed;
      }
    }
  };

  place_symmetric(Cell::RigidWall, kRigidWallCount,
                  [](Pos p) { return !on_ring(p) && !in_start_pocket(p); });
  place_symmetric(Cell::WoodWall, kWoodWallCount, [](Pos p) { return !in_start_pocket(p); });

  std::vector<int> wood;
  for (int i = 0; i < kCellCount; ++i)
    if (s.grid[i] == Cell::WoodWall) wood.push_back(i);
  constexpr std::array<Cell, 3> kinds = {Cell::ItemExtraBomb, Cell::ItemBlastRange,
                                         Cell::ItemKick};
  for (int k = 0; k < kItemCount && !wood.empty(); ++k) {
    const std::size_t pick = draw(rng, wood.size());
    s.hidden[wood[pick]] = kinds[draw(rng, kinds.size())];
    wood.erase(wood.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return s;
}

void validate(const GameState& s) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid state: " + what); };
  if (s.step < 0 || s.step > s.max_steps) fail("step outside [0, max_steps]");
  for (int i = 0; i < kAgentCount; ++i) {
    const AgentState& a = s.agents[i];
    if (a.id != i) fail("agent id mismatch");
    if (a.team != team_of(i)) fail("agent team mismatch");
    if (!a.alive) continue;
    if (!in_bounds(a.position)) fail("agent out of bounds");
    if (is_wall(s.cell(a.position))) fail("agent inside a wall");
    if (a.ammo < 0) fail("negative ammo");
    if (a.blast_strength < 2) fail("blast strength below 2");
    for (int j = i + 1; j < kAgentCount; ++j)
      if (s.agents[j].alive && s.agents[j].position == a.position) fail("agents share a cell");
  }
  for (std::size_t i = 0; i < s.bombs.size(); ++i) {
    const Bomb& b = s.bombs[i];
    if (!in_bounds(b.position)) fail("bomb out of bounds");
    if (is_wall(s.cell(b.position))) fail("bomb inside a wall");
    if (b.timer < 1 || b.timer > kBombLife) fail("bomb timer outside [1, 10]");
    if (b.owner < 0 || b.owner >= kAgentCount) fail("bomb owner out of range");
    for (std::size_t j = i + 1; j < s.bombs.size(); ++j)
      if (s.bombs[j].position == b.position) fail("two bombs share a cell");
  }
  for (int i = 0; i < kCellCount; ++i) {
    if (s.flame_life[i] > kFlameLife) fail("flame life above maximum");
    if (s.hidden[i] != Cell::Passage && s.grid[i] != Cell::WoodWall)
      fail("hidden item outside wood");
  }
}

void apply_step(GameState& s, const JointAction& actions) {
  // (0) flames burn down
  for (auto& life : s.flame_life)
    if (life > 0) --life;

  // (1) bomb timers, sliding bombs
  for (Bomb& b : s.bombs) --b.timer;
  advance_sliding_bombs(s);

  // (2) movement, kicks, bomb placement
  resolve_agents(s, actions);

  // (3) explosions, chained to a fixed point
  explode(s);

  // (4) flames kill
  for (AgentState& a : s.agents)
    if (a.alive && s.has_flame(a.position)) a.alive = false;

  // (5) item pickup
  for (AgentState& a : s.agents) {
    if (!a.alive) continue;
    Cell& c = s.grid[a.position.index()];
    switch (c) {
      case Cell::ItemExtraBomb: ++a.ammo; break;
      case Cell::ItemBlastRange: ++a.blast_strength; break;
      case Cell::ItemKick: a.can_kick = true; break;
      default: continue;
    }
    c = Cell::Passage;
  }

  // (6)
  ++s.step;
}

GameState step(const GameState& state, const JointAction& actions) {
  validate(state);
  if (outcome(state) != Outcome::Ongoing)
    throw std::invalid_argument("invalid state: episode already finished");
  GameState next = state;
  apply_step(next, actions);
  return next;
}

Outcome outcome(const GameState& s) {
  bool a_alive = false;
  bool b_alive = false;
  for (const AgentState& a : s.agents) {
    if (!a.alive) continue;
    (a.team == Team::A ? a_alive : b_alive) = true;
  }
  if (!a_alive && !b_alive) return Outcome::Tie;
  if (!b_alive) return Outcome::WinA;
  if (!a_alive) return Outcome::WinB;
  if (s.step >= s.max_steps) return Outcome::Tie;
  return Outcome::Ongoing;
}

Observation observe(const GameState& s, int agent, int view_radius) {
  Observation o;
  o.step = s.step;
  o.max_steps = s.max_steps;
  o.self = agent;
  o.view_radius = view_radius;
  o.self_state = s.agents[agent];
  const Pos center = s.agents[agent].position;
  for (int i = 0; i < kCellCount; ++i) {
    const Pos p = Pos::from_index(i);
    if (chebyshev(p, center) > view_radius) continue;
    o.visible.set(i);
    o.grid[i] = s.grid[i];
    o.flame_life[i] = s.flame_life[i];
  }
  for (const Bomb& b : s.bombs)
    if (o.visible.test(b.position)) o.bombs.push_back(b);
  for (int i = 0; i < kAgentCount; ++i) {
    const AgentState& a = s.agents[i];
    o.alive[i] = a.alive;
    if (i == agent || (a.alive && o.visible.test(a.position))) o.agents[i] = a;
  }
  return o;
}

}  // namespace pommer
