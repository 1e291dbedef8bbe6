#include "pommer/scenario.hpp"

#include <stdexcept>

#include "json.hpp"

namespace pommer {
namespace {

BitBoard agent_cells(const GameState& state, AgentMask excluded) {
  BitBoard cells;
  for (const AgentState& a : state.agents)
    if (a.alive && !(excluded & agent_bit(a.id))) cells.set(a.position);
  return cells;
}

GameState with_projected_bombs(const GameState& state, AgentMask excluded) {
  GameState s = state;
  for (const AgentState& a : state.agents) {
    if (!a.alive || (excluded & agent_bit(a.id)) || a.ammo <= 0 || s.bomb_at(a.position)) continue;
    s.bombs.push_back(Bomb{a.position, a.id, kBombLife, a.blast_strength, Action::Stop});
  }
  return s;
}

nlohmann::json cells_json(BitBoard b) {
  auto out = nlohmann::json::array();
  b.for_each([&](Pos p) { out.push_back({p.row, p.col}); });
  return out;
}

}  // namespace

void validate(const PessimismParams& p) {
  if (p.horizon < 1) throw std::invalid_argument("pessimism: horizon must be >= 1");
  if (p.level < 0) throw std::invalid_argument("pessimism: level must be >= 0");
  if (p.level > p.horizon) throw std::invalid_argument("pessimism: level exceeds horizon");
}

HazardTimeline project_hazards(const GameState& state, int horizon) {
  GameState s = state;
  for (AgentState& a : s.agents) a.alive = false;
  for (auto& h : s.hidden) h = Cell::Passage;

  HazardTimeline out;
  out.walls.reserve(horizon + 1);
  out.bombs.reserve(horizon + 1);
  out.flames.reserve(horizon + 1);
  auto record = [&] {
    out.walls.push_back(s.walls());
    out.bombs.push_back(s.bomb_cells());
    out.flames.push_back(s.flame_cells());
  };
  record();
  for (int t = 1; t <= horizon; ++t) {
    const bool quiet = s.bombs.empty() && out.flames.back().empty();
    if (quiet) {
      out.walls.push_back(out.walls.back());
      out.bombs.push_back(BitBoard{});
      out.flames.push_back(BitBoard{});
      continue;
    }
    apply_step(s, JointAction{});
    record();
  }
  return out;
}

OccupancyBoard Scenario::board(int t) const {
  OccupancyBoard b;
  b.mode = mode;
  b.occupied = occupied[t];
  for (int i = 0; i < kCellCount; ++i)
    b.first_time[i] = first_occupied[i] <= t ? first_occupied[i] : kNeverOccupied;
  return b;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.horizon == b.horizon && a.mode == b.mode && a.occupied == b.occupied &&
         a.first_occupied == b.first_occupied && a.hazards.walls == b.hazards.walls &&
         a.hazards.bombs == b.hazards.bombs && a.hazards.flames == b.hazards.flames;
}

Scenario generate(const GameState& state, const HazardTimeline& hazards, AgentMask excluded,
                  const PessimismParams& params) {
  validate(params);
  if (params.project_bombs) return generate(state, excluded, params);
  if (hazards.horizon() != params.horizon)
    throw std::invalid_argument("scenario: hazard timeline horizon mismatch");

  Scenario sc;
  sc.horizon = params.horizon;
  sc.mode = params.mode;
  sc.hazards = hazards;
  sc.first_occupied.fill(kNeverOccupied);
  sc.occupied.reserve(params.horizon + 1);

  BitBoard occ = agent_cells(state, excluded);
  occ.for_each([&](Pos p) { sc.first_occupied[p.index()] = 0; });
  sc.occupied.push_back(occ);

  const bool earliest = params.mode == OccupancyMode::EarliestTime;
  for (int t = 1; t <= params.horizon; ++t) {
    if (earliest || t <= params.level) {
      const BitBoard passable = ~(hazards.walls[t] | hazards.bombs[t] | hazards.flames[t]);
      const BitBoard fresh = occ.neighbors() & passable & ~occ;
      fresh.for_each([&](Pos p) { sc.first_occupied[p.index()] = static_cast<std::int16_t>(t); });
      occ |= fresh;
    }
    sc.occupied.push_back(occ);
  }
  return sc;
}

Scenario generate(const GameState& state, AgentMask excluded, const PessimismParams& params) {
  validate(params);
  if (params.project_bombs) {
    PessimismParams plain = params;
    plain.project_bombs = false;
    const GameState armed = with_projected_bombs(state, excluded);
    return generate(armed, project_hazards(armed, params.horizon), excluded, plain);
  }
  return generate(state, project_hazards(state, params.horizon), excluded, params);
}

Scenario generate_static(const GameState& state, const HazardTimeline& hazards) {
  PessimismParams p;
  p.level = 0;
  p.horizon = hazards.horizon();
  p.mode = OccupancyMode::Boolean;
  return generate(state, hazards, AgentMask{0}, p);
}

Scenario generate_static(const GameState& state, int horizon) {
  return generate_static(state, project_hazards(state, horizon));
}

std::string dump_jsonl(const Scenario& sc) {
  std::string out;
  for (int t = 0; t <= sc.horizon; ++t) {
    nlohmann::json line;
    line["t"] = t;
    line["mode"] = sc.mode == OccupancyMode::Boolean ? "boolean" : "earliest_time";
    line["occupied"] = cells_json(sc.occupied[t]);
    line["flames"] = cells_json(sc.hazards.flames[t]);
    line["bombs"] = cells_json(sc.hazards.bombs[t]);
    line["walls"] = cells_json(sc.hazards.walls[t]);
    if (sc.mode == OccupancyMode::EarliestTime) {
      auto times = nlohmann::json::array();
      sc.occupied[t].for_each(
          [&](Pos p) { times.push_back({p.row, p.col, sc.first_occupied[p.index()]}); });
      line["first_occupied"] = times;
    }
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pommer
