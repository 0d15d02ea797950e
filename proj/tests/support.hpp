#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "idg/analytics.hpp"
#include "idg/harness.hpp"

namespace idg::test {

inline std::shared_ptr<const Scenario> default_world() {
  static const auto world = std::make_shared<const Scenario>(default_scenario());
  return world;
}

inline std::shared_ptr<const Scenario> world_from(std::string yaml) {
  return std::make_shared<const Scenario>(load_scenario(yaml));
}

// Replaces the first occurrence of `from`; fails loudly if absent.
inline std::string patched(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  if (pos == std::string::npos) throw std::logic_error("patch target not found: " + from);
  return text.replace(pos, from.size(), to);
}

inline std::string default_yaml() { return std::string(kDefaultScenarioYaml); }

inline RedAction red(RedKind k, std::string target) { return {k, std::move(target)}; }

// Passive-defender red schedules, transcribed by hand.
inline std::vector<RedAction> beeline_schedule() {
  using K = RedKind;
  std::vector<RedAction> s{red(K::DiscoverSubnet, "Subnet1"),    red(K::DiscoverServices, "User1"),
                           red(K::Exploit, "User1"),             red(K::Escalate, "User1"),
                           red(K::DiscoverServices, "Enterprise1"), red(K::Exploit, "Enterprise1"),
                           red(K::Escalate, "Enterprise1"),      red(K::DiscoverSubnet, "Subnet2"),
                           red(K::DiscoverServices, "Enterprise2"), red(K::Exploit, "Enterprise2"),
                           red(K::Escalate, "Enterprise2"),      red(K::Exploit, "Op_Server0"),
                           red(K::Escalate, "Op_Server0")};
  while (s.size() < 25) s.push_back(red(K::Impact, "Op_Server0"));
  return s;
}

inline std::vector<RedAction> meander_schedule() {
  using K = RedKind;
  std::vector<RedAction> s{red(K::DiscoverSubnet, "Subnet1")};
  for (const char* h : {"User1", "Enterprise1"}) {
    s.push_back(red(K::DiscoverServices, h));
    s.push_back(red(K::Exploit, h));
    s.push_back(red(K::Escalate, h));
  }
  s.push_back(red(K::DiscoverSubnet, "Subnet2"));
  for (const char* h : {"User2", "Defender", "Enterprise2"}) {
    s.push_back(red(K::DiscoverServices, h));
    s.push_back(red(K::Exploit, h));
    s.push_back(red(K::Escalate, h));
  }
  s.push_back(red(K::DiscoverSubnet, "Subnet3"));
  s.push_back(red(K::Exploit, "Op_Server0"));
  s.push_back(red(K::Escalate, "Op_Server0"));
  while (s.size() < 25) s.push_back(red(K::Impact, "Op_Server0"));
  return s;
}

// Loss recomputed from a log's event kinds and the host roles, using the
// default cost constants rather than the engine's score table.
inline int independent_loss(const EpisodeLog& log, const Scenario& s) {
  int total = 0;
  for (const auto& r : log.steps) {
    for (const auto& e : r.scoring_events) {
      if (e.kind == ScoringKind::ImpactSucceeded) {
        total += 10;
      } else if (e.kind == ScoringKind::EscalationSucceeded) {
        switch (s.hosts[*s.find_host(e.host)].role) {
          case HostRole::UserComputer: total += 5; break;
          case HostRole::EnterpriseServer: total += 10; break;
          case HostRole::OperationalServer: total += 15; break;
          case HostRole::OperationalHost: total += 5; break;
        }
      }
    }
  }
  return total;
}

// Plays a fixed list of blue actions (Monitor afterwards).
inline EpisodeLog play(Doctrine d, std::vector<BlueAction> actions, int length = 25,
                       std::shared_ptr<const Scenario> world = default_world()) {
  ScriptedPolicy script(std::move(actions));
  return run_episode(std::move(world), d, script, length);
}

inline std::vector<BlueAction> monitors(int n) { return std::vector<BlueAction>(static_cast<std::size_t>(n), BlueAction::monitor()); }

// Every blue action available on the default network, Monitor first.
inline std::vector<BlueAction> all_actions(const Scenario& s) {
  std::vector<BlueAction> out{BlueAction::monitor()};
  for (const auto& h : s.hosts) {
    out.push_back(BlueAction::analyze(h.name));
    out.push_back(BlueAction::remove(h.name));
    out.push_back(BlueAction::restore(h.name));
  }
  return out;
}

// Plain tree walk over every action, no memo and no pruning. Only for
// small depths.
inline int naive_min_loss(const GameState& st, int depth, const std::vector<BlueAction>& actions) {
  if (depth == 0 || st.episode_over) return 0;
  int best = 1 << 30;
  for (const auto& a : actions) {
    GameState next = st;
    const int step = resolve_step(next, a).last_step_loss;
    best = std::min(best, step + naive_min_loss(next, depth - 1, actions));
  }
  return best;
}

// Hand-built logs for analytics tests. Truth carries over from the previous
// record; each step lists only the hosts whose level changed.
class LogBuilder {
 public:
  explicit LogBuilder(Doctrine d = Doctrine::Beeline, int length = 25) {
    log_ = make_log_header(*default_world(), d, 1, length, "constructed");
    truth_.assign(log_.hosts.size(), CompromiseLevel::Clean);
  }

  LogBuilder& step(BlueAction blue, Outcome blue_outcome, RedAction red, Outcome red_outcome,
                   std::vector<std::pair<std::string, CompromiseLevel>> changes = {},
                   std::vector<ScoringEvent> events = {}) {
    for (const auto& [host, level] : changes) truth_[log_.host_index(host)] = level;
    StepRecord r;
    r.step = static_cast<int>(log_.steps.size()) + 1;
    r.blue = std::move(blue);
    r.blue_outcome = blue_outcome;
    r.red = std::move(red);
    r.red_outcome = red_outcome;
    r.scoring_events = std::move(events);
    for (const auto& e : r.scoring_events) r.last_step_loss += e.points;
    r.total_loss = log_.total_loss() + r.last_step_loss;
    r.truth = truth_;
    log_.steps.push_back(std::move(r));
    return *this;
  }

  // Monitor steps with a no-op red action until the log has n records.
  LogBuilder& idle_until(int n) {
    while (static_cast<int>(log_.steps.size()) < n)
      step(BlueAction::monitor(), Outcome::Succeeded, {RedKind::DiscoverSubnet, "Subnet1"}, Outcome::Succeeded);
    return *this;
  }

  EpisodeLog build() const { return log_; }

 private:
  EpisodeLog log_;
  std::vector<CompromiseLevel> truth_;
};

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("idg_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace idg::test
