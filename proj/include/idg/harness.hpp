#pragma once

// Batch episode runner, replay, passive-play calibration, and a brute-force
// best-response oracle.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "idg/engine.hpp"
#include "idg/episode_log.hpp"
#include "idg/policies.hpp"

namespace idg {

struct RunOptions {
#ifdef NDEBUG
  bool check_invariants = false;
#else
  bool check_invariants = true;
#endif
};

namespace detail {

inline bool knowledge_grew_monotonically(const RedMind& before, const RedMind& after) {
  if (!std::includes(after.discovered_subnets.begin(), after.discovered_subnets.end(),
                     before.discovered_subnets.begin(), before.discovered_subnets.end()))
    return false;
  for (std::size_t i = 0; i < before.discovered_hosts.size(); ++i) {
    if (before.discovered_hosts[i] && !after.discovered_hosts[i]) return false;
    if (before.known_services[i] && !after.known_services[i]) return false;
  }
  return true;
}

inline void check_step(const GameState& before, const GameState& after) {
  std::vector<std::string> problems = check_invariants(after);
  const std::size_t op = after.world().operational_server();
  for (std::size_t i = 0; i < after.truth.size(); ++i)
    if (!is_legal_transition(before.truth[i], after.truth[i], i == op))
      problems.push_back("illegal transition on " + after.world().hosts[i].name);
  if (!knowledge_grew_monotonically(before.red, after.red)) problems.push_back("red knowledge shrank");
  if (after.total_loss < before.total_loss) problems.push_back("total loss decreased");
  if (!problems.empty()) {
    std::string msg = "invariant violated at step " + std::to_string(after.step) + ":";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::logic_error(msg);
  }
}

}  // namespace detail

inline EpisodeLog run_episode(std::shared_ptr<const Scenario> scenario, Doctrine doctrine, BluePolicy& policy,
                              int length, int episode_index = 1, RunOptions options = {}) {
  GameState st = init_episode(scenario, doctrine, length, episode_index);
  EpisodeLog log = make_log_header(*scenario, doctrine, episode_index, length, policy.id());
  log.steps.reserve(static_cast<std::size_t>(length));
  while (!st.episode_over) {
    const BlueAction a = policy.act(observe(st));
    GameState before;
    if (options.check_invariants) before = st;
    StepResult r = resolve_step(st, a);
    if (options.check_invariants) detail::check_step(before, st);
    policy.observe_outcome(a, r.blue_outcome, r.step);
    log.steps.push_back(make_record(r, st));
  }
  return log;
}

// Episode k (1-based) of a SeededRandom batch uses seed + k - 1; every other
// policy is deterministic. Episodes run in parallel and come back in order.
inline std::vector<EpisodeLog> run_batch(std::shared_ptr<const Scenario> scenario, Doctrine doctrine,
                                         const PolicySpec& policy, int episodes, int length,
                                         RunOptions options = {}) {
  if (episodes < 1) throw Error(ErrorCode::InvalidArgument, "episode count must be >= 1");
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "episode length must be >= 1");
  std::vector<std::future<EpisodeLog>> jobs;
  jobs.reserve(static_cast<std::size_t>(episodes));
  for (int k = 1; k <= episodes; ++k) {
    PolicySpec spec = policy;
    if (spec.kind == PolicyKind::SeededRandom) spec.seed += static_cast<std::uint64_t>(k - 1);
    jobs.push_back(std::async(std::launch::async, [=] {
      auto agent = make_policy(spec, scenario);
      return run_episode(scenario, doctrine, *agent, length, k, options);
    }));
  }
  std::vector<EpisodeLog> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// Re-runs a logged episode from its blue actions.
inline EpisodeLog replay(std::shared_ptr<const Scenario> scenario, const EpisodeLog& log) {
  if (log.scenario_hash != content_hash(*scenario))
    throw Error(ErrorCode::InvalidArgument, "log was recorded on a different scenario");
  ScriptedPolicy script(log.blue_actions(), log.policy);
  return run_episode(std::move(scenario), log.doctrine, script, log.episode_length, log.episode_index);
}

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationReport {
  int beeline_max = 0;
  int meander_max = 0;
  int divergence_step = 0;  // first step where the red actions differ; 0 if never
  std::vector<RedAction> beeline_schedule;
  std::vector<RedAction> meander_schedule;
  double elapsed_seconds = 0.0;

  static constexpr int kBeelineTarget = 160;
  static constexpr int kMeanderTarget = 100;
  static constexpr int kDivergenceTarget = 9;

  bool pass() const {
    return beeline_max == kBeelineTarget && meander_max == kMeanderTarget && divergence_step == kDivergenceTarget;
  }
};

inline CalibrationReport calibrate(std::shared_ptr<const Scenario> scenario) {
  const auto start = std::chrono::steady_clock::now();
  CalibrationReport rep;
  PassivePolicy passive;
  const EpisodeLog bee = run_episode(scenario, Doctrine::Beeline, passive, scenario->episode_length);
  const EpisodeLog mea = run_episode(scenario, Doctrine::Meander, passive, scenario->episode_length);
  rep.beeline_max = bee.total_loss();
  rep.meander_max = mea.total_loss();
  for (const auto& r : bee.steps) rep.beeline_schedule.push_back(r.red);
  for (const auto& r : mea.steps) rep.meander_schedule.push_back(r.red);
  for (std::size_t i = 0; i < rep.beeline_schedule.size() && i < rep.meander_schedule.size(); ++i) {
    if (!(rep.beeline_schedule[i] == rep.meander_schedule[i])) {
      rep.divergence_step = static_cast<int>(i) + 1;
      break;
    }
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Best response

inline constexpr int kMaxBestResponseHorizon = 10;

struct BestResponse {
  int min_loss = 0;
  std::vector<BlueAction> actions;  // one optimal sequence, prefix included
  std::size_t states_explored = 0;
};

namespace detail {

// Everything that influences future red actions and losses. Displayed
// columns are excluded; they never feed back into the dynamics.
inline std::string dynamics_key(const GameState& st) {
  std::string key;
  key.reserve(8 + st.truth.size() * 4 + st.red.discovered_subnets.size());
  key.push_back(static_cast<char>(st.step));
  for (std::size_t i = 0; i < st.truth.size(); ++i) {
    key.push_back(static_cast<char>(st.truth[i]));
    key.push_back(static_cast<char>(st.red.footholds[i]));
    key.push_back(static_cast<char>(st.red.discovered_hosts[i] | (st.red.known_services[i] << 1)));
  }
  for (int s : st.red.discovered_subnets) key.push_back(static_cast<char>(s));
  return key;
}

// Monitor stands in for every action that cannot change truth (Analyze,
// Remove or Restore on a clean host, Remove on an admin host).
inline std::vector<BlueAction> effective_actions(const GameState& st) {
  std::vector<BlueAction> out{BlueAction::monitor()};
  const Scenario& s = st.world();
  for (std::size_t i = 0; i < s.host_count(); ++i) {
    if (st.truth[i] == CompromiseLevel::UserAccess) out.push_back(BlueAction::remove(s.hosts[i].name));
    if (st.truth[i] != CompromiseLevel::Clean) out.push_back(BlueAction::restore(s.hosts[i].name));
  }
  return out;
}

class BestResponseSearch {
 public:
  explicit BestResponseSearch(int horizon) : horizon_(horizon) {}

  int solve(const GameState& st) {
    if (st.step >= horizon_ || st.episode_over) return 0;
    const std::string key = dynamics_key(st);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;
    int best = std::numeric_limits<int>::max();
    BlueAction best_action = BlueAction::monitor();
    for (const auto& a : effective_actions(st)) {
      GameState next = st;
      const StepResult r = resolve_step(next, a);
      const int total = r.last_step_loss + solve(next);
      if (total < best) {
        best = total;
        best_action = a;
      }
    }
    memo_.emplace(key, std::make_pair(best, best_action));
    return best;
  }

  BlueAction choice(const GameState& st) const { return memo_.at(dynamics_key(st)).second; }
  std::size_t explored() const { return memo_.size(); }

 private:
  int horizon_;
  std::unordered_map<std::string, std::pair<int, BlueAction>> memo_;
};

}  // namespace detail

// Exact minimum loss over every blue action sequence of `horizon` steps,
// with the first prefix.size() actions forced. Exhaustive over the action
// space; equivalent actions are collapsed and states memoized.
inline BestResponse exhaustive_best_response(std::shared_ptr<const Scenario> scenario, Doctrine doctrine,
                                             int horizon, const std::vector<BlueAction>& forced_prefix = {}) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (horizon > kMaxBestResponseHorizon)
    throw Error(ErrorCode::HorizonTooLarge,
                "horizon " + std::to_string(horizon) + " exceeds " + std::to_string(kMaxBestResponseHorizon));
  if (static_cast<int>(forced_prefix.size()) > horizon)
    throw Error(ErrorCode::InvalidArgument, "forced prefix longer than horizon");

  const int length = std::max(horizon, scenario->episode_length);
  GameState st = init_episode(scenario, doctrine, length);
  BestResponse out;
  for (const auto& a : forced_prefix) {
    out.min_loss += resolve_step(st, a).last_step_loss;
    out.actions.push_back(a);
  }
  detail::BestResponseSearch search(horizon);
  out.min_loss += search.solve(st);
  while (st.step < horizon) {
    const BlueAction a = search.choice(st);
    resolve_step(st, a);
    out.actions.push_back(a);
  }
  out.states_explored = search.explored();
  return out;
}

// ---------------------------------------------------------------------------
// Log directories: episode_NNN.jsonl files plus manifest.json.

inline std::string episode_file_name(int episode_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "episode_%03d.jsonl", episode_index);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Storage, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::Storage, "write failed for " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Storage, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_logs(const std::filesystem::path& dir, const std::vector<EpisodeLog>& logs) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["format"] = kLogFormat;
  manifest["episodes"] = nlohmann::ordered_json::array();
  for (const auto& log : logs) {
    const std::string file = episode_file_name(log.episode_index);
    write_text_file(dir / file, to_jsonl(log));
    manifest["episodes"].push_back({{"file", file},
                                    {"scenario", log.scenario_name},
                                    {"scenario_hash", log.scenario_hash},
                                    {"doctrine", std::string(to_string(log.doctrine))},
                                    {"policy", log.policy},
                                    {"episode", log.episode_index},
                                    {"length", log.episode_length},
                                    {"total_loss", log.total_loss()}});
  }
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

// Reads the episodes listed in DIR/manifest.json, or every *.jsonl file in
// name order when there is no manifest.
inline std::vector<EpisodeLog> read_logs(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::exists(dir / "manifest.json")) {
    const auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
    for (const auto& e : manifest.at("episodes")) files.push_back(dir / e.at("file").get<std::string>());
  } else {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::Storage, "not a directory: " + dir.string());
    for (const auto& entry : fs::recursive_directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  }
  std::vector<EpisodeLog> logs;
  for (const auto& f : files) logs.push_back(parse_jsonl(read_text_file(f)));
  return logs;
}

}  // namespace idg
