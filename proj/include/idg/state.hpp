#pragma once

// Game state types shared by the engine and the red doctrines.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idg/error.hpp"
#include "idg/scenario.hpp"

namespace idg {

enum class CompromiseLevel { Clean, UserAccess, AdminAccess, Impacted };

constexpr std::string_view to_string(CompromiseLevel level) {
  switch (level) {
    case CompromiseLevel::Clean: return "Clean";
    case CompromiseLevel::UserAccess: return "UserAccess";
    case CompromiseLevel::AdminAccess: return "AdminAccess";
    case CompromiseLevel::Impacted: return "Impacted";
  }
  return "?";
}

inline std::optional<CompromiseLevel> parse_compromise(std::string_view text) {
  for (auto l : {CompromiseLevel::Clean, CompromiseLevel::UserAccess, CompromiseLevel::AdminAccess,
                 CompromiseLevel::Impacted})
    if (to_string(l) == text) return l;
  return std::nullopt;
}

// The only truth transitions the game may produce (self-loops aside).
constexpr bool is_legal_transition(CompromiseLevel from, CompromiseLevel to, bool operational_server) {
  using L = CompromiseLevel;
  if (from == to) return to != L::Impacted || operational_server;
  switch (from) {
    case L::Clean: return to == L::UserAccess;
    case L::UserAccess: return to == L::AdminAccess || to == L::Clean;
    case L::AdminAccess: return (to == L::Impacted && operational_server) || to == L::Clean;
    case L::Impacted: return to == L::Clean;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Blue side

enum class BlueKind { Monitor, Analyze, Remove, Restore };

inline constexpr BlueKind kAllBlueKinds[] = {BlueKind::Monitor, BlueKind::Analyze, BlueKind::Remove,
                                             BlueKind::Restore};

constexpr std::string_view to_string(BlueKind k) {
  switch (k) {
    case BlueKind::Monitor: return "Monitor";
    case BlueKind::Analyze: return "Analyze";
    case BlueKind::Remove: return "Remove";
    case BlueKind::Restore: return "Restore";
  }
  return "?";
}

inline std::optional<BlueKind> parse_blue_kind(std::string_view text) {
  for (BlueKind k : kAllBlueKinds)
    if (to_string(k) == text) return k;
  return std::nullopt;
}

struct BlueAction {
  BlueKind kind = BlueKind::Monitor;
  std::optional<std::string> target;

  static BlueAction monitor() { return {BlueKind::Monitor, std::nullopt}; }
  static BlueAction analyze(std::string host) { return {BlueKind::Analyze, std::move(host)}; }
  static BlueAction remove(std::string host) { return {BlueKind::Remove, std::move(host)}; }
  static BlueAction restore(std::string host) { return {BlueKind::Restore, std::move(host)}; }

  std::string to_string() const {
    std::string out(idg::to_string(kind));
    if (target) out += "(" + *target + ")";
    return out;
  }

  bool operator==(const BlueAction&) const = default;
};

enum class Outcome { Succeeded, NoEffect, Failed };

constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Succeeded: return "Succeeded";
    case Outcome::NoEffect: return "NoEffect";
    case Outcome::Failed: return "Failed";
  }
  return "?";
}

inline std::optional<Outcome> parse_outcome(std::string_view text) {
  for (auto o : {Outcome::Succeeded, Outcome::NoEffect, Outcome::Failed})
    if (to_string(o) == text) return o;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Red side

enum class RedKind { DiscoverSubnet, DiscoverServices, Exploit, Escalate, Impact };

constexpr std::string_view to_string(RedKind k) {
  switch (k) {
    case RedKind::DiscoverSubnet: return "DiscoverSubnet";
    case RedKind::DiscoverServices: return "DiscoverServices";
    case RedKind::Exploit: return "Exploit";
    case RedKind::Escalate: return "Escalate";
    case RedKind::Impact: return "Impact";
  }
  return "?";
}

inline std::optional<RedKind> parse_red_kind(std::string_view text) {
  for (auto k : {RedKind::DiscoverSubnet, RedKind::DiscoverServices, RedKind::Exploit, RedKind::Escalate,
                 RedKind::Impact})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

// target is a subnet name for DiscoverSubnet, otherwise a host name.
// Impact always targets the operational server.
struct RedAction {
  RedKind kind = RedKind::DiscoverSubnet;
  std::string target;

  std::string to_string() const { return std::string(idg::to_string(kind)) + "(" + target + ")"; }
  bool operator==(const RedAction&) const = default;
};

enum class Foothold { None, User, Admin };

// Attacker-side knowledge. Host-indexed in scenario order.
struct RedMind {
  Doctrine doctrine = Doctrine::Beeline;
  bool prior_path_knowledge = false;
  std::set<int> discovered_subnets;
  std::vector<bool> discovered_hosts;
  std::vector<bool> known_services;
  std::vector<Foothold> footholds;

  bool operator==(const RedMind&) const = default;
};

// ---------------------------------------------------------------------------
// Observation side

enum class ActivityKind { None, SubnetScan, ServiceScan, ExploitAttempt, EscalationDetected, ImpactDetected };

constexpr std::string_view to_string(ActivityKind k) {
  switch (k) {
    case ActivityKind::None: return "None";
    case ActivityKind::SubnetScan: return "SubnetScan";
    case ActivityKind::ServiceScan: return "ServiceScan";
    case ActivityKind::ExploitAttempt: return "ExploitAttempt";
    case ActivityKind::EscalationDetected: return "EscalationDetected";
    case ActivityKind::ImpactDetected: return "ImpactDetected";
  }
  return "?";
}

inline std::optional<ActivityKind> parse_activity_kind(std::string_view text) {
  for (auto k : {ActivityKind::None, ActivityKind::SubnetScan, ActivityKind::ServiceScan,
                 ActivityKind::ExploitAttempt, ActivityKind::EscalationDetected, ActivityKind::ImpactDetected})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

// Escalations and impacts are always revealed; the other kinds only on
// steps where blue chose Monitor.
constexpr bool always_visible(ActivityKind k) {
  return k == ActivityKind::EscalationDetected || k == ActivityKind::ImpactDetected;
}

struct ActivityEvent {
  ActivityKind kind = ActivityKind::None;
  std::string target;  // host or subnet the red action aimed at
  int step_observed = 0;

  bool operator==(const ActivityEvent&) const = default;
};

struct HostRow {
  std::string subnet;
  std::string ip;
  std::string hostname;
  CompromiseLevel compromise = CompromiseLevel::Clean;
  ActivityEvent activity;

  bool operator==(const HostRow&) const = default;
};

struct DefenderObservation {
  std::vector<HostRow> rows;
  int last_step_loss = 0;  // magnitude; shown negated
  int total_loss = 0;
  int step = 0;
  int episode_length = 0;
  int episode_index = 0;

  bool operator==(const DefenderObservation&) const = default;
};

// ---------------------------------------------------------------------------

enum class ScoringKind { EscalationSucceeded, ImpactSucceeded, BlueActionCost };

constexpr std::string_view to_string(ScoringKind k) {
  switch (k) {
    case ScoringKind::EscalationSucceeded: return "EscalationSucceeded";
    case ScoringKind::ImpactSucceeded: return "ImpactSucceeded";
    case ScoringKind::BlueActionCost: return "BlueActionCost";
  }
  return "?";
}

inline std::optional<ScoringKind> parse_scoring_kind(std::string_view text) {
  for (auto k : {ScoringKind::EscalationSucceeded, ScoringKind::ImpactSucceeded, ScoringKind::BlueActionCost})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

struct ScoringEvent {
  ScoringKind kind = ScoringKind::EscalationSucceeded;
  std::string host;
  int points = 0;

  bool operator==(const ScoringEvent&) const = default;
};

struct GameState {
  std::shared_ptr<const Scenario> scenario;
  int episode_length = 0;
  int episode_index = 0;
  int step = 0;
  std::vector<CompromiseLevel> truth;
  RedMind red;
  bool monitor_active = false;  // blue's action on the most recent step was Monitor
  std::vector<CompromiseLevel> displayed_compromise;
  std::vector<ActivityEvent> displayed_activity;
  int last_step_loss = 0;
  int total_loss = 0;
  bool episode_over = false;

  const Scenario& world() const { return *scenario; }

  // Throws UnknownHost.
  std::size_t host_index(std::string_view host) const {
    auto idx = scenario->find_host(host);
    if (!idx) throw Error(ErrorCode::UnknownHost, "unknown host '" + std::string(host) + "'");
    return *idx;
  }
};

struct StepResult {
  int step = 0;
  BlueAction blue;
  Outcome blue_outcome = Outcome::NoEffect;
  RedAction red;
  Outcome red_outcome = Outcome::NoEffect;
  std::vector<ScoringEvent> scoring_events;
  int last_step_loss = 0;
  int total_loss = 0;
  DefenderObservation observation;
};

// Red can attack h when h sits in an internet-facing subnet, when red holds
// any foothold in h's subnet, or admin in a subnet adjacent to it.
inline bool is_reachable(const GameState& st, std::size_t host) {
  const Scenario& s = st.world();
  const int subnet = s.hosts[host].subnet;
  if (s.internet_facing(subnet)) return true;
  for (std::size_t i = 0; i < s.hosts.size(); ++i) {
    const Foothold f = st.red.footholds[i];
    if (f == Foothold::None) continue;
    const int other = s.hosts[i].subnet;
    if (other == subnet) return true;
    if (f == Foothold::Admin && s.adjacent(other, subnet)) return true;
  }
  return false;
}

inline bool is_reachable(const GameState& st, std::string_view host) {
  return is_reachable(st, st.host_index(host));
}

}  // namespace idg
