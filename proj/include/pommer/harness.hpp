#pragma once

// Match running, series statistics, pessimism sweeps and replay files.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pommer/baseline.hpp"
#include "pommer/engine.hpp"
#include "pommer/search.hpp"

namespace pommer {

// Textual agent spec: "baseline", "baseline:bomb_prob=0.3",
// "dypm:level=3,clip=40", "hakozaki:horizon=12".
struct AgentSpec {
  enum class Kind { Baseline, Dypm, Hakozaki, Passive };
  Kind kind = Kind::Baseline;
  SearchParams search;
  BaselineParams baseline;

  static AgentSpec parse(const std::string& text);
  std::string to_string() const;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual Action act(const Observation& obs) = 0;
};

// `seed` drives any randomness of the agent; `unlimited` removes the search deadline.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::uint64_t seed, bool unlimited);

enum class DeadlineEnforcement { Off, Strict };

struct MatchConfig {
  std::uint64_t seed = 0;
  AgentSpec team_a;
  AgentSpec team_b;
  int max_steps = kDefaultMaxSteps;
  DeadlineEnforcement enforcement = DeadlineEnforcement::Off;
  double deadline_ms = 100.0;
  // Team A plays agents 1 and 3 instead of 0 and 2.
  bool swap_sides = false;
  int view_radius = kViewRadius;

  int slot_team_a(int k) const { return swap_sides ? 2 * k + 1 : 2 * k; }
};

enum class SideResult { Win, Loss, Tie };

struct StepRecord {
  int step = 0;
  JointAction actions{};
  std::array<double, kAgentCount> latencies_ms{};
  std::array<bool, kAgentCount> alive{};
};

struct MatchRecord {
  MatchConfig config;
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::Ongoing;
  int final_step = 0;
  int timeouts = 0;
  // Agent whose decision threw; its team forfeits.
  std::optional<int> panicked_agent;

  SideResult result_for_team_a() const;
};

MatchRecord run_match(const MatchConfig& config);

struct ReplayCheck {
  bool ok = true;
  std::string message;
};

// Re-simulates the recorded actions from initial_state(seed).
ReplayCheck verify_replay(const MatchRecord& record);

void write_replay(std::ostream& out, const MatchRecord& record);
MatchRecord read_replay(std::istream& in);

struct SeriesStats {
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double p50_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
  int timeouts = 0;
  int panics = 0;
  std::vector<MatchRecord> records;

  int matches() const { return wins + losses + ties; }
  double win_rate() const { return matches() ? static_cast<double>(wins) / matches() : 0.0; }
};

// Worker count from POMMER_WORKERS, else the hardware concurrency.
int default_workers();

// Seeds template.seed .. template.seed + n - 1; with swap_sides every odd
// match has the starting positions swapped.
SeriesStats run_series(int n, const MatchConfig& config_template, bool swap_sides,
                       int workers = default_workers(), bool keep_records = false);

SeriesStats fold(const std::vector<MatchRecord>& records);

struct SweepRow {
  int level = 0;
  SeriesStats stats;
};

std::vector<SweepRow> sweep_pessimism(const std::vector<int>& levels, int n,
                                      const AgentSpec& agent, const AgentSpec& opponent,
                                      const MatchConfig& config_template,
                                      int workers = default_workers());

// level,wins,losses,ties,p50_ms,p99_ms,timeout_count
void write_stats_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// "0..10", "0,3,5" or a mix.
std::vector<int> parse_levels(const std::string& text);

}  // namespace pommer
