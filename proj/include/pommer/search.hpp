#pragma once

// Action selection: depth-limited tree search whose leaves are scored by
// survivability under pessimistic scenarios, plus the objective mode used
// while no other agent is close.

#include <chrono>
#include <limits>
#include <optional>
#include <vector>

#include "pommer/engine.hpp"
#include "pommer/scenario.hpp"
#include "pommer/survivability.hpp"
#include "pommer/tracker.hpp"

namespace pommer {

enum class Variant { Dypm, Hakozaki };

struct SearchParams {
  Variant variant = Variant::Dypm;
  int depth = 1;
  PessimismParams pessimism{};
  // Own survivability is capped here; nullopt disables clipping.
  std::optional<double> clip = 40.0;
  // Wall-clock budget per decision; infinity disables the deadline.
  double deadline_ms = 100.0;
  // Reserved at the end of the budget for handing the action back.
  double safety_margin_ms = 10.0;
  int interaction_radius = 6;
  double epsilon = 1e-6;
  ArrivalScoring hakozaki_scoring = ArrivalScoring::FirstArrival;
  // Upper bound on evaluated leaves; deterministic stand-in for a deadline in tests.
  std::optional<long> leaf_budget;

  static SearchParams unlimited() {
    SearchParams p;
    p.deadline_ms = std::numeric_limits<double>::infinity();
    return p;
  }
};

// Throws std::invalid_argument on depth < 1, deadline <= 0 or a search
// horizon below the bomb lifetime.
void validate(const SearchParams& params);

class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Deadline(const SearchParams& params, Clock::time_point start = Clock::now());

  bool expired() const;
  void count_leaf() { ++leaves_; }
  long leaves() const { return leaves_; }

 private:
  Clock::time_point end_;
  bool unlimited_ = false;
  std::optional<long> leaf_budget_;
  long leaves_ = 0;
};

struct LeafScore {
  int leaf = 0;
  Action own_action = Action::Stop;
  double own_S = 0.0;
  double teammate_S = 1.0;
  std::vector<double> opponent_S;
  double objective_value = 0.0;
};

double objective(double own_S, double teammate_S, const std::vector<double>& opponent_S,
                 const SearchParams& params);

struct SearchResult {
  Action action = Action::Stop;
  // One entry per own action that was scored, in action order.
  std::vector<LeafScore> scores;
  long leaves_evaluated = 0;
  bool timed_out = false;
};

// Highest objective, ties to the earliest action in Stop, Up, Down, Left,
// Right, PlaceBomb order. Stop when `scores` is empty.
Action argmax_action(const std::vector<LeafScore>& scores);

// Search on a concrete state. `considered` marks the other agents whose
// survivability enters the objective (normally the ones in view).
SearchResult search_dypm(const GameState& root, int self, const std::array<bool, kAgentCount>& considered,
                         const SearchParams& params, Deadline& deadline);
SearchResult search_hakozaki(const GameState& root, int self,
                             const std::array<bool, kAgentCount>& considered,
                             const SearchParams& params, Deadline& deadline);

Action choose_action_dypm(const Belief& belief, const SearchParams& params);
Action choose_action_hakozaki(const Belief& belief, const SearchParams& params);

// Opponent within the interaction radius, or the agent's cell inside a known blast.
bool is_interactive(const Belief& belief, const GameState& root, const SearchParams& params);

// Break wood, collect items, explore stale areas. nullopt when no objective
// has a safe path; the caller then falls back to tree search.
std::optional<Action> choose_objective_action(const Belief& belief, const SearchParams& params);
std::optional<Action> choose_objective_action(const Belief& belief, const GameState& root,
                                              const SearchParams& params);

Action decide(const Belief& belief, const SearchParams& params,
              Deadline::Clock::time_point received = Deadline::Clock::now());

}  // namespace pommer
