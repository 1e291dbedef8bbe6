#pragma once

// Rule-based opponent used as the fixed adversary of the experiments. The
// rules are documented in RULES.md so results stay reproducible.

#include <cstdint>
#include <random>

#include "pommer/engine.hpp"

namespace pommer {

struct BaselineParams {
  double bomb_probability = 0.5;
};

// Priority rules: (1) flee cells that are lethal within two steps, (2) bomb an
// adjacent enemy or wood when an escape exists, with probability
// bomb_probability, (3) walk toward the nearest item, else a random safe move.
Action baseline_act(const Observation& obs, std::mt19937_64& rng,
                    const BaselineParams& params = {});

class BaselineAgent {
 public:
  explicit BaselineAgent(std::uint64_t seed, BaselineParams params = {})
      : rng_(seed), params_(params) {}

  Action act(const Observation& obs) { return baseline_act(obs, rng_, params_); }

 private:
  std::mt19937_64 rng_;
  BaselineParams params_;
};

}  // namespace pommer
