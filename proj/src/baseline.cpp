#include "pommer/baseline.hpp"

#include <array>
#include <queue>
#include <vector>

namespace pommer {
namespace {

constexpr std::array<Action, 5> kMoves = {Action::Stop, Action::Up, Action::Down, Action::Left,
                                          Action::Right};
constexpr int kLookahead = 3;

struct DangerMap {
  // lethal[t]: cells burning after t more steps, t = 0..kLookahead
  std::array<BitBoard, kLookahead + 1> lethal;
  // every cell some known bomb will eventually hit
  BitBoard pending;
};

GameState board_from(const Observation& obs) {
  GameState s;
  for (int i = 0; i < kCellCount; ++i) s.grid[i] = obs.grid[i].value_or(Cell::Passage);
  s.hidden.fill(Cell::Passage);
  s.bombs = obs.bombs;
  s.flame_life = obs.flame_life;
  return s;
}

DangerMap danger(const Observation& obs, const GameState& board) {
  DangerMap d;
  const std::size_t n = board.bombs.size();
  std::vector<BitBoard> blast(n);
  std::vector<int> fuse(n);
  for (std::size_t i = 0; i < n; ++i) {
    blast[i] = blast_cells(board, board.bombs[i]);
    fuse[i] = board.bombs[i].timer;
    d.pending |= blast[i];
  }
  // a bomb inside another's blast goes off no later than it
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (fuse[i] < fuse[j] && blast[i].test(board.bombs[j].position)) {
          fuse[j] = fuse[i];
          changed = true;
        }
  }
  for (int t = 0; t <= kLookahead; ++t) {
    for (int c = 0; c < kCellCount; ++c)
      if (obs.flame_life[c] > t) d.lethal[t].set(c);
    for (std::size_t i = 0; i < n; ++i)
      if (t >= fuse[i] && t <= fuse[i] + kFlameLife - 1) d.lethal[t] |= blast[i];
  }
  return d;
}

BitBoard passable(const Observation& obs, const GameState& board) {
  BitBoard blocked = board.walls() | board.bomb_cells();
  for (const auto& a : obs.agents)
    if (a && a->alive && a->id != obs.self) blocked.set(a->position);
  return ~blocked;
}

bool legal(Pos from, Action a, BitBoard open) {
  if (a == Action::Stop) return true;
  const Pos to = offset(from, a);
  return in_bounds(to) && open.test(to);
}

bool lethal_soon(const DangerMap& d, Pos p) { return d.lethal[1].test(p) || d.lethal[2].test(p); }

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Action flee(Pos me, const DangerMap& d, BitBoard open) {
  Action best = Action::Stop;
  int best_safe = -1;
  int best_room = -1;
  for (const Action a : kMoves) {
    if (!legal(me, a, open)) continue;
    const Pos c = offset(me, a);
    if (d.lethal[1].test(c)) continue;
    BitBoard reach = BitBoard::single(c);
    for (int t = 2; t <= kLookahead; ++t) reach = reach.dilate() & open & ~d.lethal[t];
    const int safe = (reach & ~d.pending).count();
    const int room = reach.count();
    if (safe > best_safe || (safe == best_safe && room > best_room)) {
      best = a;
      best_safe = safe;
      best_room = room;
    }
  }
  return best;
}

bool escape_exists(const Observation& obs, const GameState& board, const DangerMap& d,
                   BitBoard open) {
  const Pos me = obs.self_state.position;
  const Bomb probe{me, obs.self, kBombLife, obs.self_state.blast_strength, Action::Stop};
  const BitBoard zone = blast_cells(board, probe) | d.pending;
  BitBoard reach = BitBoard::single(me);
  for (int t = 1; t <= 5; ++t) {
    reach = reach.dilate() & open & ~d.lethal[std::min(t, kLookahead)];
    if ((reach & ~zone).any()) return true;
  }
  return false;
}

std::optional<Action> toward_item(const Observation& obs, const DangerMap& d, BitBoard open) {
  const Pos me = obs.self_state.position;
  std::array<int, kCellCount> parent{};
  parent.fill(-1);
  std::queue<std::pair<Pos, int>> q;
  q.push({me, 0});
  parent[me.index()] = me.index();
  while (!q.empty()) {
    const auto [p, dist] = q.front();
    q.pop();
    const auto& c = obs.grid[p.index()];
    if (p != me && c && is_item(*c)) {
      int cur = p.index();
      while (parent[cur] != me.index()) cur = parent[cur];
      for (const Action a : {Action::Up, Action::Down, Action::Left, Action::Right})
        if (offset(me, a) == Pos::from_index(cur)) return a;
      return std::nullopt;
    }
    for (const Action a : {Action::Up, Action::Down, Action::Left, Action::Right}) {
      const Pos n = offset(p, a);
      if (!in_bounds(n) || parent[n.index()] >= 0 || !open.test(n)) continue;
      if (d.lethal[std::min(dist + 1, kLookahead)].test(n)) continue;
      parent[n.index()] = p.index();
      q.push({n, dist + 1});
    }
  }
  return std::nullopt;
}

}  // namespace

Action baseline_act(const Observation& obs, std::mt19937_64& rng, const BaselineParams& params) {
  const AgentState& me = obs.self_state;
  if (!me.alive) return Action::Stop;
  const GameState board = board_from(obs);
  const DangerMap d = danger(obs, board);
  const BitBoard open = passable(obs, board);

  // (1) get out of harm's way
  if (lethal_soon(d, me.position)) return flee(me.position, d, open);

  // (2) bomb a neighbouring enemy or wood
  if (me.ammo > 0 && !board.bomb_at(me.position)) {
    const BitBoard around = BitBoard::single(me.position).neighbors();
    bool target = (around & board.wood()).any();
    for (const auto& a : obs.agents)
      if (a && a->alive && a->team != me.team && around.test(a->position)) target = true;
    if (target && escape_exists(obs, board, d, open) && unit_draw(rng) < params.bomb_probability)
      return Action::PlaceBomb;
  }

  // (3) items, else wander
  if (auto a = toward_item(obs, d, open); a && !lethal_soon(d, offset(me.position, *a))) return *a;
  std::array<Action, 5> safe{};
  int n = 0;
  for (const Action a : kMoves)
    if (legal(me.position, a, open) && !lethal_soon(d, offset(me.position, a))) safe[n++] = a;
  if (n == 0) return Action::Stop;
  return safe[rng() % n];
}

}  // namespace pommer
