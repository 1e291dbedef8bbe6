// pommer_cli: run matches, series and pessimism sweeps; verify replays.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pommer/harness.hpp"

using namespace pommer;

namespace {

void print_stats(const SeriesStats& s) {
  std::cout << "matches=" << s.matches() << " wins=" << s.wins << " losses=" << s.losses
            << " ties=" << s.ties << " win_rate=" << s.win_rate() << " p50_ms=" << s.p50_ms
            << " p99_ms=" << s.p99_ms << " max_ms=" << s.max_ms << " timeouts=" << s.timeouts
            << " panics=" << s.panics << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pommerman 2v2 engine and pessimistic-scenario agents"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string team_a = "dypm";
  std::string team_b = "baseline";
  int max_steps = kDefaultMaxSteps;
  bool strict = false;
  double deadline_ms = 100.0;
  int workers = default_workers();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "board seed (first seed for series)");
    sub->add_option("--team-a", team_a, "agent spec for team A, e.g. dypm:level=3");
    sub->add_option("--team-b", team_b, "agent spec for team B");
    sub->add_option("--max-steps", max_steps, "episode step limit")->check(CLI::PositiveNumber);
    sub->add_flag("--strict-deadline", strict, "replace overrunning decisions by Stop");
    sub->add_option("--deadline-ms", deadline_ms, "per-decision budget")->check(CLI::PositiveNumber);
  };

  auto* match = app.add_subcommand("match", "play one match");
  add_common(match);
  std::string out_path;
  match->add_option("--out", out_path, "write the replay as JSONL");

  auto* series = app.add_subcommand("series", "play n seeded matches");
  add_common(series);
  int n = 100;
  bool swap_sides = false;
  series->add_option("--n", n, "number of matches")->check(CLI::PositiveNumber);
  series->add_flag("--swap-sides", swap_sides, "alternate starting corners");
  series->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  series->add_option("--out", out_path, "stats CSV");

  auto* sweep = app.add_subcommand("sweep", "win rate per pessimism level");
  add_common(sweep);
  std::string levels = "0..10";
  std::string opponent = "baseline";
  sweep->add_option("--levels", levels, "e.g. 0..10 or 0,3,5");
  sweep->add_option("--n", n, "matches per level")->check(CLI::PositiveNumber);
  sweep->add_option("--opponent", opponent, "opponent agent spec");
  sweep->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "stats CSV");

  auto* replay = app.add_subcommand("replay", "re-simulate a replay file");
  std::string in_path;
  replay->add_option("--in", in_path, "replay JSONL")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    MatchConfig config;
    config.seed = seed;
    config.max_steps = max_steps;
    config.enforcement = strict ? DeadlineEnforcement::Strict : DeadlineEnforcement::Off;
    config.deadline_ms = deadline_ms;
    if (!replay->parsed()) {
      config.team_a = AgentSpec::parse(team_a);
      config.team_b = AgentSpec::parse(team_b);
    }

    if (match->parsed()) {
      const MatchRecord r = run_match(config);
      std::cout << "outcome=" << to_string(r.outcome) << " steps=" << r.final_step
                << " timeouts=" << r.timeouts;
      if (r.panicked_agent) std::cout << " panicked_agent=" << *r.panicked_agent;
      std::cout << '\n';
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_replay(out, r);
      }
    } else if (series->parsed()) {
      const SeriesStats s = run_series(n, config, swap_sides, workers);
      print_stats(s);
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_stats_csv(out, {{config.team_a.search.pessimism.level, s}});
      }
    } else if (sweep->parsed()) {
      const auto rows = sweep_pessimism(parse_levels(levels), n, config.team_a,
                                        AgentSpec::parse(opponent), config, workers);
      for (const SweepRow& r : rows) {
        std::cout << "level=" << r.level << ' ';
        print_stats(r.stats);
      }
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_stats_csv(out, rows);
      } else {
        write_stats_csv(std::cout, rows);
      }
    } else if (replay->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw std::runtime_error("cannot read " + in_path);
      const MatchRecord r = read_replay(in);
      const ReplayCheck check = verify_replay(r);
      std::cout << (check.ok ? "replay ok" : "replay mismatch: " + check.message)
                << " outcome=" << to_string(r.outcome) << " steps=" << r.final_step << '\n';
      return check.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
