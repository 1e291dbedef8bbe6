#pragma once

// Leaf values: how much room an agent has to stay alive inside a scenario.

#include <vector>

#include "pommer/engine.hpp"
#include "pommer/scenario.hpp"

namespace pommer {

// Cells the agent may occupy at step t given where it was at t - 1. Staying is
// allowed on a bomb cell (an agent standing on its freshly placed bomb);
// entering one is not.
struct MoveRules {
  BitBoard enter;  // free to step into
  BitBoard stay;   // free to remain on
};
MoveRules move_rules(const Scenario& scenario, int t, Pos start);

// Time-position pairs from which the agent can survive to the end of the
// scenario: forward reachability intersected with backward survivability.
// Index t holds the cells kept at step t.
std::vector<BitBoard> surviving_pairs(const Scenario& scenario, const AgentState& agent);

// Number of surviving time-position pairs, t = 0 included.
int survivability_dypm(const Scenario& scenario, const AgentState& agent);

enum class ArrivalScoring {
  FirstArrival,    // 1 per end cell the agent reaches strictly before anyone else
  MarginWeighted,  // lead in steps over the occupier, scaled into [0, 1]
};

// Score over the cells reachable at the final step, compared against the
// scenario's earliest occupation times.
double survivability_hakozaki(const Scenario& scenario, const AgentState& agent,
                              ArrivalScoring scoring = ArrivalScoring::FirstArrival);

// Survivability of `opponent` on the frozen-agent scenario of `state`, divided
// by the same quantity when `self` (body and bombs) is absent. 1 when the
// denominator is 0.
double normalized_opponent_survivability(const GameState& state, int self, int opponent,
                                         int horizon = kDefaultHorizon);

// `state` without agent `self`: body and every bomb it owns removed.
GameState without_agent(const GameState& state, int self);

}  // namespace pommer
