#include "pommer/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "pommer/tracker.hpp"

namespace pommer {
namespace {

using json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("agent spec: bad value for " + key + ": " + value);
  }
}

class SearchAgent final : public Agent {
 public:
  explicit SearchAgent(SearchParams params) : params_(params) {}

  Action act(const Observation& obs) override {
    const auto received = Deadline::Clock::now();
    belief_ = belief_ ? update(*belief_, obs) : initial_belief(obs);
    return decide(*belief_, params_, received);
  }

 private:
  SearchParams params_;
  std::optional<Belief> belief_;
};

class RuleAgent final : public Agent {
 public:
  RuleAgent(std::uint64_t seed, BaselineParams params) : impl_(seed, params) {}
  Action act(const Observation& obs) override { return impl_.act(obs); }

 private:
  BaselineAgent impl_;
};

class PassiveAgent final : public Agent {
 public:
  Action act(const Observation&) override { return Action::Stop; }
};

struct MatchSummary {
  SideResult result = SideResult::Tie;
  std::vector<double> latencies;
  int timeouts = 0;
  bool panic = false;
};

MatchSummary summarize(const MatchRecord& r) {
  MatchSummary s;
  s.result = r.result_for_team_a();
  s.timeouts = r.timeouts;
  s.panic = r.panicked_agent.has_value();
  for (const StepRecord& step : r.steps)
    for (int k = 0; k < 2; ++k) {
      const int slot = r.config.slot_team_a(k);
      if (step.latencies_ms[slot] > 0.0) s.latencies.push_back(step.latencies_ms[slot]);
    }
  return s;
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

SeriesStats aggregate(const std::vector<MatchSummary>& summaries) {
  SeriesStats st;
  std::vector<double> all;
  for (const MatchSummary& m : summaries) {
    switch (m.result) {
      case SideResult::Win: ++st.wins; break;
      case SideResult::Loss: ++st.losses; break;
      case SideResult::Tie: ++st.ties; break;
    }
    st.timeouts += m.timeouts;
    st.panics += m.panic ? 1 : 0;
    all.insert(all.end(), m.latencies.begin(), m.latencies.end());
  }
  st.p50_ms = percentile(all, 0.50);
  st.p99_ms = percentile(all, 0.99);
  st.max_ms = all.empty() ? 0.0 : *std::max_element(all.begin(), all.end());
  return st;
}

std::string_view to_string(DeadlineEnforcement e) {
  return e == DeadlineEnforcement::Strict ? "strict" : "off";
}

Outcome outcome_from_string(const std::string& s) {
  for (const Outcome o : {Outcome::Ongoing, Outcome::WinA, Outcome::WinB, Outcome::Tie})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("replay: unknown outcome " + s);
}

}  // namespace

AgentSpec AgentSpec::parse(const std::string& text) {
  AgentSpec spec;
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  if (kind == "baseline") {
    spec.kind = Kind::Baseline;
  } else if (kind == "dypm") {
    spec.kind = Kind::Dypm;
    spec.search.variant = Variant::Dypm;
  } else if (kind == "hakozaki") {
    spec.kind = Kind::Hakozaki;
    spec.search.variant = Variant::Hakozaki;
  } else if (kind == "passive") {
    spec.kind = Kind::Passive;
  } else {
    throw std::invalid_argument("agent spec: unknown agent kind '" + kind + "'");
  }
  if (colon == std::string::npos) return spec;

  for (const std::string& item : split(text.substr(colon + 1), ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("agent spec: expected key=value in " + item);
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    SearchParams& p = spec.search;
    if (spec.kind == Kind::Baseline && key == "bomb_prob") {
      spec.baseline.bomb_probability = parse_number(key, value);
    } else if (spec.kind == Kind::Baseline || spec.kind == Kind::Passive) {
      throw std::invalid_argument("agent spec: unknown key " + key);
    } else if (key == "level") {
      p.pessimism.level = static_cast<int>(parse_number(key, value));
    } else if (key == "horizon") {
      p.pessimism.horizon = static_cast<int>(parse_number(key, value));
    } else if (key == "clip") {
      if (value == "none") {
        p.clip.reset();
      } else {
        p.clip = parse_number(key, value);
      }
    } else if (key == "depth") {
      p.depth = static_cast<int>(parse_number(key, value));
    } else if (key == "deadline") {
      p.deadline_ms = parse_number(key, value);
    } else if (key == "margin") {
      p.safety_margin_ms = parse_number(key, value);
    } else if (key == "radius") {
      p.interaction_radius = static_cast<int>(parse_number(key, value));
    } else if (key == "project_bombs") {
      p.pessimism.project_bombs = parse_number(key, value) != 0.0;
    } else if (key == "scoring") {
      if (value == "first_arrival") {
        p.hakozaki_scoring = ArrivalScoring::FirstArrival;
      } else if (value == "margin") {
        p.hakozaki_scoring = ArrivalScoring::MarginWeighted;
      } else {
        throw std::invalid_argument("agent spec: unknown scoring " + value);
      }
    } else {
      throw std::invalid_argument("agent spec: unknown key " + key);
    }
  }
  if (spec.kind != Kind::Baseline && spec.kind != Kind::Passive) validate(spec.search);
  return spec;
}

std::string AgentSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Baseline:
      out << "baseline:bomb_prob=" << baseline.bomb_probability;
      return out.str();
    case Kind::Passive: return "passive";
    case Kind::Dypm: out << "dypm"; break;
    case Kind::Hakozaki: out << "hakozaki"; break;
  }
  const SearchParams& p = search;
  out << ":level=" << p.pessimism.level << ",horizon=" << p.pessimism.horizon
      << ",clip=" << (p.clip ? std::to_string(*p.clip) : std::string("none"))
      << ",depth=" << p.depth << ",deadline=" << p.deadline_ms << ",margin=" << p.safety_margin_ms
      << ",radius=" << p.interaction_radius << ",project_bombs=" << (p.pessimism.project_bombs ? 1 : 0);
  if (kind == Kind::Hakozaki)
    out << ",scoring="
        << (p.hakozaki_scoring == ArrivalScoring::FirstArrival ? "first_arrival" : "margin");
  return out.str();
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::uint64_t seed, bool unlimited) {
  switch (spec.kind) {
    case AgentSpec::Kind::Baseline: return std::make_unique<RuleAgent>(seed, spec.baseline);
    case AgentSpec::Kind::Passive: return std::make_unique<PassiveAgent>();
    case AgentSpec::Kind::Dypm:
    case AgentSpec::Kind::Hakozaki: {
      SearchParams p = spec.search;
      if (unlimited) p.deadline_ms = std::numeric_limits<double>::infinity();
      return std::make_unique<SearchAgent>(p);
    }
  }
  throw std::logic_error("make_agent: unhandled kind");
}

SideResult MatchRecord::result_for_team_a() const {
  const Team mine = config.swap_sides ? Team::B : Team::A;
  switch (outcome) {
    case Outcome::WinA: return mine == Team::A ? SideResult::Win : SideResult::Loss;
    case Outcome::WinB: return mine == Team::B ? SideResult::Win : SideResult::Loss;
    default: return SideResult::Tie;
  }
}

MatchRecord run_match(const MatchConfig& config) {
  using Clock = std::chrono::steady_clock;
  MatchRecord record;
  record.config = config;

  GameState state = initial_state(config.seed, config.max_steps);
  const bool unlimited = config.enforcement == DeadlineEnforcement::Off;
  std::array<std::unique_ptr<Agent>, kAgentCount> agents;
  for (int slot = 0; slot < kAgentCount; ++slot) {
    const bool is_a = slot == config.slot_team_a(0) || slot == config.slot_team_a(1);
    AgentSpec spec = is_a ? config.team_a : config.team_b;
    spec.search.deadline_ms = std::min(spec.search.deadline_ms, config.deadline_ms);
    agents[slot] = make_agent(spec, splitmix64(config.seed * kAgentCount + slot), unlimited);
  }

  while (outcome(state) == Outcome::Ongoing) {
    StepRecord rec;
    rec.step = state.step;
    for (int i = 0; i < kAgentCount && !record.panicked_agent; ++i) {
      if (!state.agents[i].alive) continue;
      const Observation obs = observe(state, i, config.view_radius);
      const auto t0 = Clock::now();
      Action a = Action::Stop;
      try {
        a = agents[i]->act(obs);
      } catch (const std::exception&) {
        record.panicked_agent = i;
        break;
      }
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      rec.latencies_ms[i] = ms;
      if (config.enforcement == DeadlineEnforcement::Strict && ms > config.deadline_ms) {
        a = Action::Stop;
        ++record.timeouts;
      }
      rec.actions[i] = a;
    }
    if (record.panicked_agent) break;
    state = step(state, rec.actions);
    for (int i = 0; i < kAgentCount; ++i) rec.alive[i] = state.agents[i].alive;
    record.steps.push_back(rec);
  }

  record.final_step = state.step;
  if (record.panicked_agent) {
    record.outcome = team_of(*record.panicked_agent) == Team::A ? Outcome::WinB : Outcome::WinA;
  } else {
    record.outcome = outcome(state);
  }
  return record;
}

ReplayCheck verify_replay(const MatchRecord& record) {
  auto fail = [](std::string msg) { return ReplayCheck{false, std::move(msg)}; };
  GameState state = initial_state(record.config.seed, record.config.max_steps);
  for (const StepRecord& rec : record.steps) {
    if (rec.step != state.step)
      return fail("step index " + std::to_string(rec.step) + " does not match " +
                  std::to_string(state.step));
    if (outcome(state) != Outcome::Ongoing)
      return fail("actions recorded after the episode ended at step " + std::to_string(state.step));
    state = step(state, rec.actions);
    for (int i = 0; i < kAgentCount; ++i)
      if (state.agents[i].alive != rec.alive[i])
        return fail("alive flag of agent " + std::to_string(i) + " differs after step " +
                    std::to_string(rec.step));
  }
  if (state.step != record.final_step)
    return fail("final step " + std::to_string(state.step) + " != recorded " +
                std::to_string(record.final_step));
  const Outcome replayed = outcome(state);
  if (record.panicked_agent) {
    if (replayed != Outcome::Ongoing) return fail("forfeited match had already ended");
  } else if (replayed != record.outcome) {
    return fail(std::string("outcome ") + std::string(to_string(replayed)) + " != recorded " +
                std::string(to_string(record.outcome)));
  }
  return {};
}

void write_replay(std::ostream& out, const MatchRecord& r) {
  json header;
  header["format"] = "pommer-replay/1";
  header["seed"] = r.config.seed;
  header["team_a"] = r.config.team_a.to_string();
  header["team_b"] = r.config.team_b.to_string();
  header["max_steps"] = r.config.max_steps;
  header["enforcement"] = to_string(r.config.enforcement);
  header["deadline_ms"] = r.config.deadline_ms;
  header["swap_sides"] = r.config.swap_sides;
  header["view_radius"] = r.config.view_radius;
  header["outcome"] = to_string(r.outcome);
  header["final_step"] = r.final_step;
  header["timeouts"] = r.timeouts;
  header["panicked_agent"] = r.panicked_agent ? json(*r.panicked_agent) : json(nullptr);
  out << header.dump() << '\n';
  for (const StepRecord& s : r.steps) {
    json line;
    line["step"] = s.step;
    auto actions = json::array();
    for (const Action a : s.actions) actions.push_back(to_string(a));
    line["actions"] = actions;
    line["latencies_ms"] = s.latencies_ms;
    line["alive"] = s.alive;
    out << line.dump() << '\n';
  }
}

MatchRecord read_replay(std::istream& in) {
  MatchRecord r;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("replay: empty input");
  const json header = json::parse(line);
  if (header.value("format", "") != "pommer-replay/1")
    throw std::invalid_argument("replay: missing or unknown format tag");
  r.config.seed = header.at("seed").get<std::uint64_t>();
  r.config.team_a = AgentSpec::parse(header.at("team_a").get<std::string>());
  r.config.team_b = AgentSpec::parse(header.at("team_b").get<std::string>());
  r.config.max_steps = header.at("max_steps").get<int>();
  r.config.enforcement = header.at("enforcement").get<std::string>() == "strict"
                             ? DeadlineEnforcement::Strict
                             : DeadlineEnforcement::Off;
  r.config.deadline_ms = header.at("deadline_ms").get<double>();
  r.config.swap_sides = header.at("swap_sides").get<bool>();
  r.config.view_radius = header.at("view_radius").get<int>();
  r.outcome = outcome_from_string(header.at("outcome").get<std::string>());
  r.final_step = header.at("final_step").get<int>();
  r.timeouts = header.at("timeouts").get<int>();
  if (!header.at("panicked_agent").is_null()) r.panicked_agent = header.at("panicked_agent").get<int>();

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    StepRecord s;
    s.step = j.at("step").get<int>();
    const auto& actions = j.at("actions");
    if (actions.size() != kAgentCount) throw std::invalid_argument("replay: expected 4 actions");
    for (int i = 0; i < kAgentCount; ++i) {
      const auto a = action_from_string(actions[i].get<std::string>());
      if (!a) throw std::invalid_argument("replay: unknown action " + actions[i].dump());
      s.actions[i] = *a;
    }
    s.latencies_ms = j.at("latencies_ms").get<std::array<double, kAgentCount>>();
    s.alive = j.at("alive").get<std::array<bool, kAgentCount>>();
    r.steps.push_back(s);
  }
  return r;
}

int default_workers() {
  if (const char* env = std::getenv("POMMER_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SeriesStats fold(const std::vector<MatchRecord>& records) {
  std::vector<MatchSummary> summaries;
  summaries.reserve(records.size());
  for (const MatchRecord& r : records) summaries.push_back(summarize(r));
  return aggregate(summaries);
}

SeriesStats run_series(int n, const MatchConfig& config_template, bool swap_sides, int workers,
                       bool keep_records) {
  std::vector<MatchSummary> summaries(n);
  std::vector<MatchRecord> records(keep_records ? n : 0);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      MatchConfig c = config_template;
      c.seed = config_template.seed + static_cast<std::uint64_t>(i);
      c.swap_sides = swap_sides ? (i % 2 == 1) : config_template.swap_sides;
      MatchRecord r = run_match(c);
      summaries[i] = summarize(r);
      if (keep_records) records[i] = std::move(r);
    }
  };
  const int threads = std::clamp(workers, 1, std::max(1, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SeriesStats stats = aggregate(summaries);
  stats.records = std::move(records);
  return stats;
}

std::vector<SweepRow> sweep_pessimism(const std::vector<int>& levels, int n, const AgentSpec& agent,
                                      const AgentSpec& opponent, const MatchConfig& config_template,
                                      int workers) {
  std::vector<SweepRow> rows;
  for (const int level : levels) {
    MatchConfig c = config_template;
    c.team_a = agent;
    c.team_a.search.pessimism.level = level;
    validate(c.team_a.search);
    c.team_b = opponent;
    rows.push_back({level, run_series(n, c, true, workers)});
  }
  return rows;
}

void write_stats_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "level,wins,losses,ties,p50_ms,p99_ms,timeout_count\n";
  for (const SweepRow& r : rows) {
    out << r.level << ',' << r.stats.wins << ',' << r.stats.losses << ',' << r.stats.ties << ','
        << r.stats.p50_ms << ',' << r.stats.p99_ms << ',' << r.stats.timeouts << '\n';
  }
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  for (const std::string& part : split(text, ',')) {
    const auto dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        levels.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dots));
        const int hi = std::stoi(part.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument(part);
        for (int l = lo; l <= hi; ++l) levels.push_back(l);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad level list: " + text);
    }
  }
  if (levels.empty()) throw std::invalid_argument("empty level list");
  return levels;
}

}  // namespace pommer
