#include "pommer/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace pommer {
namespace {

JointAction all_stop() { return JointAction{}; }

GameState advance(const GameState& state, int self, Action own) {
  GameState next = state;
  JointAction joint = all_stop();
  joint[self] = own;
  apply_step(next, joint);
  return next;
}

// Another agent could step into `target` this turn and bounce us back.
bool blockable(const GameState& state, int self, Pos target) {
  BitBoard others;
  for (const AgentState& a : state.agents)
    if (a.alive && a.id != self) others.set(a.position);
  return others.neighbors().test(target);
}

struct RawScore {
  double own = 0.0;
  double teammate = 1.0;
  std::vector<double> opponents;
};

double clipped(double own, const SearchParams& p) {
  return p.clip ? std::min(own, *p.clip) : own;
}

double raw_objective(const RawScore& r, const SearchParams& p) {
  return objective(r.own, r.teammate, r.opponents, p);
}

// Best own continuation below `state`, others standing still. `remaining`
// counts plies still to expand; 0 means `state` is a leaf.
template <typename Eval>
std::optional<RawScore> best_continuation(const GameState& state, int self, int remaining,
                                          const SearchParams& params, Deadline& deadline,
                                          Eval&& eval) {
  if (remaining == 0) {
    if (deadline.expired()) return std::nullopt;
    deadline.count_leaf();
    return eval(state);
  }
  std::optional<RawScore> best;
  double best_value = -1.0;
  std::optional<RawScore> stop_score;
  for (const Action a : kAllActions) {
    const GameState child = advance(state, self, a);
    auto score = best_continuation(child, self, remaining - 1, params, deadline, eval);
    if (!score) break;
    double value = raw_objective(*score, params);
    if (a == Action::Stop) stop_score = score;
    if (is_move(a) && stop_score && child.agents[self].position != state.agents[self].position &&
        blockable(state, self, child.agents[self].position)) {
      value = 0.5 * (value + raw_objective(*stop_score, params));
    }
    if (value > best_value) {
      best_value = value;
      best = score;
    }
  }
  return best;
}

std::vector<int> considered_others(const GameState& root, int self,
                                   const std::array<bool, kAgentCount>& considered) {
  std::vector<int> out;
  for (int j = 0; j < kAgentCount; ++j)
    if (j != self && considered[j] && root.agents[j].alive) out.push_back(j);
  return out;
}

GameState advance_plies(GameState s, int plies) {
  for (int k = 0; k < plies; ++k) apply_step(s, all_stop());
  return s;
}

// First step on a BFS path from `from` to `to` given parent links.
std::optional<Action> first_step(const std::array<int, kCellCount>& parent, Pos from, Pos to) {
  int cur = to.index();
  if (cur == from.index() || parent[cur] < 0) return std::nullopt;
  while (parent[cur] != from.index()) {
    cur = parent[cur];
    if (cur < 0) return std::nullopt;
  }
  const Pos next = Pos::from_index(cur);
  for (const Action a : {Action::Up, Action::Down, Action::Left, Action::Right})
    if (offset(from, a) == next) return a;
  return std::nullopt;
}

}  // namespace

void validate(const SearchParams& p) {
  if (p.depth < 1) throw std::invalid_argument("search: depth must be >= 1");
  if (!(p.deadline_ms > 0.0)) throw std::invalid_argument("search: deadline must be positive");
  if (p.pessimism.horizon < kBombLife)
    throw std::invalid_argument("search: scenario horizon must cover the bomb lifetime");
  validate(p.pessimism);
}

Deadline::Deadline(const SearchParams& params, Clock::time_point start)
    : leaf_budget_(params.leaf_budget) {
  if (std::isinf(params.deadline_ms)) {
    unlimited_ = true;
  } else {
    const double budget = std::max(0.0, params.deadline_ms - params.safety_margin_ms);
    end_ = start + std::chrono::microseconds(static_cast<long>(budget * 1000.0));
  }
}

bool Deadline::expired() const {
  if (leaf_budget_ && leaves_ >= *leaf_budget_) return true;
  return !unlimited_ && Clock::now() >= end_;
}

double objective(double own_S, double teammate_S, const std::vector<double>& opponent_S,
                 const SearchParams& params) {
  double value = clipped(own_S, params) * teammate_S;
  for (const double s : opponent_S) value /= (s + params.epsilon);
  return value;
}

Action argmax_action(const std::vector<LeafScore>& scores) {
  Action best = Action::Stop;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const Action a : kAllActions) {
    for (const LeafScore& s : scores) {
      if (s.own_action != a) continue;
      if (s.objective_value > best_value) {
        best_value = s.objective_value;
        best = a;
      }
    }
  }
  return best;
}

SearchResult search_dypm(const GameState& root, int self,
                         const std::array<bool, kAgentCount>& considered,
                         const SearchParams& params, Deadline& deadline) {
  validate(params);
  SearchResult result;
  if (!root.agents[self].alive) return result;

  const int horizon = params.pessimism.horizon;
  const std::vector<int> others = considered_others(root, self, considered);

  // Survivabilities of the others in a world where this agent never existed.
  std::array<int, kAgentCount> absent_S{};
  if (!others.empty()) {
    const GameState absent = advance_plies(without_agent(root, self), params.depth);
    const Scenario frozen = generate_static(absent, horizon);
    for (const int j : others) absent_S[j] = survivability_dypm(frozen, absent.agents[j]);
  }

  auto eval = [&](const GameState& leaf) {
    RawScore r;
    const HazardTimeline hazards = project_hazards(leaf, horizon);
    r.own = survivability_dypm(generate(leaf, hazards, agent_bit(self), params.pessimism),
                               leaf.agents[self]);
    if (!others.empty()) {
      const Scenario frozen = generate_static(leaf, hazards);
      for (const int j : others) {
        const int with_self = survivability_dypm(frozen, leaf.agents[j]);
        const double ratio =
            absent_S[j] == 0 ? 1.0 : static_cast<double>(with_self) / absent_S[j];
        if (team_of(j) == team_of(self)) {
          r.teammate = ratio;
        } else {
          r.opponents.push_back(ratio);
        }
      }
    }
    return r;
  };

  std::optional<double> stop_value;
  for (const Action a : kAllActions) {
    const GameState child = advance(root, self, a);
    const auto raw = best_continuation(child, self, params.depth - 1, params, deadline, eval);
    if (!raw) {
      result.timed_out = true;
      break;
    }
    LeafScore s;
    s.leaf = static_cast<int>(a);
    s.own_action = a;
    s.own_S = raw->own;
    s.teammate_S = raw->teammate;
    s.opponent_S = raw->opponents;
    s.objective_value = raw_objective(*raw, params);
    if (a == Action::Stop) stop_value = s.objective_value;
    if (is_move(a) && stop_value && child.agents[self].position != root.agents[self].position &&
        blockable(root, self, child.agents[self].position)) {
      s.objective_value = 0.5 * (s.objective_value + *stop_value);
    }
    result.scores.push_back(std::move(s));
  }
  result.leaves_evaluated = deadline.leaves();
  result.action = argmax_action(result.scores);
  return result;
}

SearchResult search_hakozaki(const GameState& root, int self,
                             const std::array<bool, kAgentCount>& considered,
                             const SearchParams& params, Deadline& deadline) {
  validate(params);
  SearchResult result;
  if (!root.agents[self].alive) return result;

  PessimismParams earliest = params.pessimism;
  earliest.mode = OccupancyMode::EarliestTime;
  const int horizon = earliest.horizon;

  std::vector<int> agents = {self};
  for (const int j : considered_others(root, self, considered)) agents.push_back(j);
  const int k = static_cast<int>(agents.size());
  long total = 1;
  for (int i = 0; i < k; ++i) total *= kActionCount;

  auto eval = [&](const GameState& leaf) {
    RawScore r;
    const HazardTimeline hazards = project_hazards(leaf, horizon);
    for (const int j : agents) {
      const double s = leaf.agents[j].alive
                           ? survivability_hakozaki(generate(leaf, hazards, agent_bit(j), earliest),
                                                    leaf.agents[j], params.hakozaki_scoring)
                           : 0.0;
      if (j == self) {
        r.own = s;
      } else if (team_of(j) == team_of(self)) {
        r.teammate = s;
      } else {
        r.opponents.push_back(s);
      }
    }
    return r;
  };

  struct Marginal {
    long count = 0;
    double own_min = 0.0;
    double teammate_min = 1.0;
    std::vector<double> opponent_sum;
  };
  std::array<Marginal, kActionCount> marginals{};

  for (long n = 0; n < total; ++n) {
    JointAction joint = all_stop();
    long code = n;
    for (int i = 0; i < k; ++i) {
      joint[agents[i]] = kAllActions[code % kActionCount];
      code /= kActionCount;
    }
    GameState child = root;
    apply_step(child, joint);
    const auto raw = best_continuation(child, self, params.depth - 1, params, deadline, eval);
    if (!raw) {
      result.timed_out = true;
      break;
    }
    Marginal& m = marginals[static_cast<int>(joint[self])];
    if (m.count == 0) {
      m.own_min = raw->own;
      m.teammate_min = raw->teammate;
      m.opponent_sum = raw->opponents;
    } else {
      m.own_min = std::min(m.own_min, raw->own);
      m.teammate_min = std::min(m.teammate_min, raw->teammate);
      for (std::size_t i = 0; i < raw->opponents.size(); ++i) m.opponent_sum[i] += raw->opponents[i];
    }
    ++m.count;
  }

  for (const Action a : kAllActions) {
    const Marginal& m = marginals[static_cast<int>(a)];
    if (m.count == 0) continue;
    LeafScore s;
    s.leaf = static_cast<int>(a);
    s.own_action = a;
    s.own_S = m.own_min;
    s.teammate_S = m.teammate_min;
    for (const double sum : m.opponent_sum) s.opponent_S.push_back(sum / m.count);
    s.objective_value = objective(s.own_S, s.teammate_S, s.opponent_S, params);
    result.scores.push_back(std::move(s));
  }
  result.leaves_evaluated = deadline.leaves();
  result.action = argmax_action(result.scores);
  return result;
}

namespace {

std::array<bool, kAgentCount> in_view(const Belief& belief) {
  std::array<bool, kAgentCount> v{};
  for (int j = 0; j < kAgentCount; ++j) v[j] = belief.sees(j);
  return v;
}

// Every action looks fatal at this level: retry with less pessimism so the
// agent still picks the move most likely to get out.
SearchResult search_dypm_relaxing(const GameState& root, int self,
                                  const std::array<bool, kAgentCount>& considered,
                                  const SearchParams& params, Deadline& deadline) {
  SearchResult result = search_dypm(root, self, considered, params, deadline);
  SearchParams relaxed = params;
  while (!result.timed_out && relaxed.pessimism.level > 0 &&
         std::all_of(result.scores.begin(), result.scores.end(),
                     [](const LeafScore& s) { return s.own_S == 0.0; })) {
    --relaxed.pessimism.level;
    result = search_dypm(root, self, considered, relaxed, deadline);
  }
  return result;
}

}  // namespace

Action choose_action_dypm(const Belief& belief, const SearchParams& params) {
  Deadline deadline(params);
  return search_dypm_relaxing(to_search_state(belief), belief.self, in_view(belief), params,
                              deadline)
      .action;
}

Action choose_action_hakozaki(const Belief& belief, const SearchParams& params) {
  Deadline deadline(params);
  return search_hakozaki(to_search_state(belief), belief.self, in_view(belief), params, deadline)
      .action;
}

bool is_interactive(const Belief& belief, const GameState& root, const SearchParams& params) {
  const AgentState& me = root.agents[belief.self];
  for (int j = 0; j < kAgentCount; ++j) {
    if (team_of(j) == team_of(belief.self) || !belief.sees(j)) continue;
    if (chebyshev(root.agents[j].position, me.position) <= params.interaction_radius) return true;
  }
  for (const Bomb& b : root.bombs)
    if (blast_cells(root, b).test(me.position)) return true;
  return false;
}

std::optional<Action> choose_objective_action(const Belief& belief, const SearchParams& params) {
  return choose_objective_action(belief, to_search_state(belief), params);
}

std::optional<Action> choose_objective_action(const Belief& belief, const GameState& root,
                                              const SearchParams& params) {
  const int self = belief.self;
  const AgentState& me = root.agents[self];
  if (!me.alive) return std::nullopt;
  const int horizon = params.pessimism.horizon;
  const HazardTimeline hazards = project_hazards(root, horizon);

  BitBoard blocked = root.walls() | root.bomb_cells();
  for (const AgentState& a : root.agents)
    if (a.alive && a.id != self) blocked.set(a.position);

  std::array<int, kCellCount> dist{};
  std::array<int, kCellCount> parent{};
  dist.fill(-1);
  parent.fill(-1);
  std::vector<Pos> order;
  std::queue<Pos> frontier;
  dist[me.position.index()] = 0;
  frontier.push(me.position);
  while (!frontier.empty()) {
    const Pos p = frontier.front();
    frontier.pop();
    order.push_back(p);
    const int d = dist[p.index()] + 1;
    for (const Action a : {Action::Up, Action::Down, Action::Left, Action::Right}) {
      const Pos q = offset(p, a);
      if (!in_bounds(q) || dist[q.index()] >= 0 || blocked.test(q)) continue;
      if (d <= horizon && (hazards.flames[d].test(q) || hazards.flames[std::min(d + 1, horizon)].test(q)))
        continue;
      dist[q.index()] = d;
      parent[q.index()] = p.index();
      frontier.push(q);
    }
  }

  auto survives = [&](const GameState& leaf) {
    return survivability_dypm(generate(leaf, agent_bit(self), params.pessimism), leaf.agents[self]) > 0;
  };
  auto safe_step = [&](Pos target) -> std::optional<Action> {
    const auto a = first_step(parent, me.position, target);
    if (!a || !survives(advance(root, self, *a))) return std::nullopt;
    return a;
  };

  // (i) power-ups in sight or remembered
  for (const Pos p : order) {
    const auto& est = belief.grid[p.index()];
    if (p == me.position || !est.kind || !is_item(*est.kind)) continue;
    if (auto a = safe_step(p)) return a;
    break;
  }

  // (ii) a spot whose blast reaches wood and that can still be escaped
  if (me.ammo > 0) {
    const BitBoard wood = root.wood();
    int checked = 0;
    for (const Pos p : order) {
      const Bomb probe{p, self, kBombLife, me.blast_strength, Action::Stop};
      if ((blast_cells(root, probe) & wood).empty()) continue;
      if (++checked > 6) break;
      if (p == me.position) {
        if (survives(advance(root, self, Action::PlaceBomb))) return Action::PlaceBomb;
        continue;
      }
      GameState placed = root;
      placed.agents[self].position = p;
      placed.bombs.push_back(probe);
      --placed.agents[self].ammo;
      if (survivability_dypm(generate(placed, agent_bit(self), params.pessimism),
                             placed.agents[self]) == 0)
        continue;
      if (auto a = safe_step(p)) return a;
    }
  }

  // (iii) the least recently observed reachable cell
  std::optional<Pos> stalest;
  int stalest_seen = std::numeric_limits<int>::max();
  for (const Pos p : order) {
    if (p == me.position) continue;
    const int seen = belief.grid[p.index()].last_seen;
    if (seen < stalest_seen) {
      stalest_seen = seen;
      stalest = p;
    }
  }
  if (stalest && stalest_seen < belief.step) return safe_step(*stalest);
  return std::nullopt;
}

namespace {

// When the search is indifferent between several actions, prefer the one the
// objective mode would take so that quiet standoffs do not freeze the game.
Action break_tie(const Belief& belief, const GameState& root, const SearchParams& params,
                 const SearchResult& result) {
  if (result.timed_out || result.scores.empty()) return result.action;
  double best = -std::numeric_limits<double>::infinity();
  for (const LeafScore& s : result.scores) best = std::max(best, s.objective_value);
  int tied = 0;
  for (const LeafScore& s : result.scores) tied += s.objective_value == best ? 1 : 0;
  if (tied < 2) return result.action;
  const auto preferred = choose_objective_action(belief, root, params);
  if (!preferred) return result.action;
  for (const LeafScore& s : result.scores)
    if (s.own_action == *preferred && s.objective_value == best) return *preferred;
  return result.action;
}

}  // namespace

Action decide(const Belief& belief, const SearchParams& params,
              Deadline::Clock::time_point received) {
  Deadline deadline(params, received);
  const GameState root = to_search_state(belief);
  if (!root.agents[belief.self].alive) return Action::Stop;
  if (!is_interactive(belief, root, params)) {
    if (auto a = choose_objective_action(belief, root, params)) return *a;
  }
  const auto considered = in_view(belief);
  const SearchResult result =
      params.variant == Variant::Hakozaki
          ? search_hakozaki(root, belief.self, considered, params, deadline)
          : search_dypm_relaxing(root, belief.self, considered, params, deadline);
  return break_tie(belief, root, params, result);
}

}  // namespace pommer
