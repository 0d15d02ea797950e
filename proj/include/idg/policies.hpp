#pragma once

// Scripted blue agents. Policies only see what a human defender sees: the
// observation table plus the outcome of their own previous action.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "idg/state.hpp"

namespace idg {

class BluePolicy {
 public:
  virtual ~BluePolicy() = default;

  virtual std::string id() const = 0;
  virtual BlueAction act(const DefenderObservation& obs) = 0;
  virtual void observe_outcome(const BlueAction&, Outcome, int /*step*/) {}
};

// Monitors every step; the passive-defender baseline.
class PassivePolicy final : public BluePolicy {
 public:
  std::string id() const override { return "Passive"; }
  BlueAction act(const DefenderObservation&) override { return BlueAction::monitor(); }
};

// Watches and analyzes but never touches a host: Monitor, except Analyze a
// host the step after an exploit attempt on it shows up.
class MonitorOnlyPolicy final : public BluePolicy {
 public:
  std::string id() const override { return "MonitorOnly"; }

  BlueAction act(const DefenderObservation& obs) override {
    for (const auto& row : obs.rows)
      if (row.activity.kind == ActivityKind::ExploitAttempt && row.activity.step_observed == obs.step && obs.step > 0)
        return BlueAction::analyze(row.hostname);
    return BlueAction::monitor();
  }
};

// Monitor, Analyze(h), Remove(h), Restore(h), then the next host.
class CyclicSweepPolicy final : public BluePolicy {
 public:
  std::string id() const override { return "CyclicSweep"; }

  BlueAction act(const DefenderObservation& obs) override {
    const int t = obs.step;
    const auto& host = obs.rows[static_cast<std::size_t>(t / 4) % obs.rows.size()].hostname;
    switch (t % 4) {
      case 0: return BlueAction::monitor();
      case 1: return BlueAction::analyze(host);
      case 2: return BlueAction::remove(host);
      default: return BlueAction::restore(host);
    }
  }
};

// Uniform over Monitor plus every (kind, host) pair. mt19937_64 output is
// fixed by the standard, so sequences are reproducible across platforms.
class SeededRandomPolicy final : public BluePolicy {
 public:
  explicit SeededRandomPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::string id() const override { return "SeededRandom:" + std::to_string(seed_); }

  BlueAction act(const DefenderObservation& obs) override {
    const std::uint64_t n = obs.rows.size();
    const std::uint64_t pick = rng_() % (1 + 3 * n);
    if (pick == 0) return BlueAction::monitor();
    const auto& host = obs.rows[(pick - 1) % n].hostname;
    switch ((pick - 1) / n) {
      case 0: return BlueAction::analyze(host);
      case 1: return BlueAction::remove(host);
      default: return BlueAction::restore(host);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

// Each step, in priority order:
//   1. Restore the most valuable host showing AdminAccess or Impacted.
//   2. Remove a host showing UserAccess, or one whose exploit attempt was
//      revealed on the previous step (the escalation is due now).
//   3. Analyze the target of the latest revealed exploit attempt, unless
//      already acted on since.
//   4. Monitor.
class GreedyResponderPolicy final : public BluePolicy {
 public:
  explicit GreedyResponderPolicy(std::shared_ptr<const Scenario> scenario) : scenario_(std::move(scenario)) {}

  std::string id() const override { return "GreedyResponder"; }

  BlueAction act(const DefenderObservation& obs) override {
    const auto& rows = obs.rows;
    if (last_acted_.size() != rows.size()) last_acted_.assign(rows.size(), 0);

    std::optional<std::size_t> restore;
    int best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].compromise < CompromiseLevel::AdminAccess) continue;
      int v = value(i, rows[i].compromise);
      if (v > best) {
        best = v;
        restore = i;
      }
    }
    if (restore) return BlueAction::restore(rows[*restore].hostname);

    std::optional<std::size_t> remove;
    best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const bool suspect = rows[i].compromise == CompromiseLevel::UserAccess ||
                           (obs.step > 0 && rows[i].activity.kind == ActivityKind::ExploitAttempt &&
                            rows[i].activity.step_observed == obs.step);
      if (!suspect) continue;
      int v = value(i, CompromiseLevel::UserAccess);
      if (v > best) {
        best = v;
        remove = i;
      }
    }
    if (remove) return BlueAction::remove(rows[*remove].hostname);

    std::optional<std::size_t> latest;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& a = rows[i].activity;
      if (a.kind != ActivityKind::ExploitAttempt || last_acted_[i] >= a.step_observed) continue;
      if (!latest || a.step_observed > rows[*latest].activity.step_observed) latest = i;
    }
    if (latest) return BlueAction::analyze(rows[*latest].hostname);

    return BlueAction::monitor();
  }

  void observe_outcome(const BlueAction& a, Outcome, int step) override {
    if (!a.target) return;
    if (auto idx = scenario_->find_host(*a.target)) {
      if (last_acted_.size() != scenario_->host_count()) last_acted_.assign(scenario_->host_count(), 0);
      last_acted_[*idx] = step;
    }
  }

 private:
  int value(std::size_t host, CompromiseLevel shown) const {
    const auto& s = *scenario_;
    int v = s.score_table.escalation_cost(s.hosts[host].role);
    if (shown == CompromiseLevel::Impacted) v += s.score_table.impact;
    return v;
  }

  std::shared_ptr<const Scenario> scenario_;
  std::vector<int> last_acted_;
};

// Plays back a fixed action list, then Monitors.
class ScriptedPolicy final : public BluePolicy {
 public:
  explicit ScriptedPolicy(std::vector<BlueAction> actions, std::string label = "Scripted")
      : actions_(std::move(actions)), label_(std::move(label)) {}

  std::string id() const override { return label_; }

  BlueAction act(const DefenderObservation&) override {
    return next_ < actions_.size() ? actions_[next_++] : BlueAction::monitor();
  }

 private:
  std::vector<BlueAction> actions_;
  std::size_t next_ = 0;
  std::string label_;
};

// ---------------------------------------------------------------------------

enum class PolicyKind { Passive, MonitorOnly, CyclicSweep, GreedyResponder, SeededRandom };

struct PolicySpec {
  PolicyKind kind = PolicyKind::Passive;
  std::uint64_t seed = 0;

  std::string to_string() const {
    switch (kind) {
      case PolicyKind::Passive: return "Passive";
      case PolicyKind::MonitorOnly: return "MonitorOnly";
      case PolicyKind::CyclicSweep: return "CyclicSweep";
      case PolicyKind::GreedyResponder: return "GreedyResponder";
      case PolicyKind::SeededRandom: return "SeededRandom:" + std::to_string(seed);
    }
    return "?";
  }

  bool operator==(const PolicySpec&) const = default;
};

// Accepts "passive", "monitor-only", "cyclic", "greedy", "random:SEED" and
// the canonical names, case-insensitively.
inline PolicySpec parse_policy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string name = lower;
  std::optional<std::string> arg;
  if (auto colon = lower.find(':'); colon != std::string::npos) {
    name = lower.substr(0, colon);
    arg = lower.substr(colon + 1);
  }
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "unknown blue policy '" + std::string(text) + "'"); };
  PolicySpec spec;
  if (name == "passive") spec.kind = PolicyKind::Passive;
  else if (name == "monitoronly" || name == "monitor-only" || name == "monitor") spec.kind = PolicyKind::MonitorOnly;
  else if (name == "cyclicsweep" || name == "cyclic" || name == "sweep") spec.kind = PolicyKind::CyclicSweep;
  else if (name == "greedyresponder" || name == "greedy") spec.kind = PolicyKind::GreedyResponder;
  else if (name == "seededrandom" || name == "random") spec.kind = PolicyKind::SeededRandom;
  else throw bad();

  if (spec.kind == PolicyKind::SeededRandom) {
    if (!arg || arg->empty()) throw Error(ErrorCode::InvalidArgument, "SeededRandom needs a seed (random:SEED)");
    try {
      std::size_t used = 0;
      spec.seed = std::stoull(*arg, &used);
      if (used != arg->size()) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  } else if (arg) {
    throw bad();
  }
  return spec;
}

inline std::unique_ptr<BluePolicy> make_policy(const PolicySpec& spec, std::shared_ptr<const Scenario> scenario) {
  switch (spec.kind) {
    case PolicyKind::Passive: return std::make_unique<PassivePolicy>();
    case PolicyKind::MonitorOnly: return std::make_unique<MonitorOnlyPolicy>();
    case PolicyKind::CyclicSweep: return std::make_unique<CyclicSweepPolicy>();
    case PolicyKind::GreedyResponder: return std::make_unique<GreedyResponderPolicy>(std::move(scenario));
    case PolicyKind::SeededRandom: return std::make_unique<SeededRandomPolicy>(spec.seed);
  }
  return std::make_unique<PassivePolicy>();
}

}  // namespace idg
