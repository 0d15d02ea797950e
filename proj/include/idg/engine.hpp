#pragma once

// Turn-based resolution: each step the red doctrine commits to an action
// from the pre-step state, blue's action resolves, then red's.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "idg/adversaries.hpp"
#include "idg/state.hpp"

namespace idg {

inline GameState init_episode(std::shared_ptr<const Scenario> scenario, Doctrine doctrine, int length,
                              int episode_index = 0) {
  if (!scenario) throw Error(ErrorCode::InvalidArgument, "init_episode: null scenario");
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "episode length must be >= 1");
  const std::size_t n = scenario->host_count();
  GameState st;
  st.episode_length = length;
  st.episode_index = episode_index;
  st.truth.assign(n, CompromiseLevel::Clean);
  st.red.doctrine = doctrine;
  st.red.prior_path_knowledge = scenario->doctrines.plan(doctrine).prior_path_knowledge;
  st.red.discovered_hosts.assign(n, false);
  st.red.known_services.assign(n, false);
  st.red.footholds.assign(n, Foothold::None);
  st.displayed_compromise.assign(n, CompromiseLevel::Clean);
  st.displayed_activity.assign(n, ActivityEvent{});
  st.scenario = std::move(scenario);
  return st;
}

inline GameState init_episode(std::shared_ptr<const Scenario> scenario, std::string_view doctrine, int length,
                              int episode_index = 0) {
  return init_episode(std::move(scenario), parse_doctrine(doctrine), length, episode_index);
}

// Throws MalformedAction / UnknownHost; returns the target's host index
// (host_count() for Monitor).
inline std::size_t check_action(const GameState& st, const BlueAction& a) {
  if (a.kind == BlueKind::Monitor) {
    if (a.target) throw Error(ErrorCode::MalformedAction, "Monitor applies to the whole network and takes no target");
    return st.world().host_count();
  }
  if (!a.target || a.target->empty())
    throw Error(ErrorCode::MalformedAction, std::string(to_string(a.kind)) + " requires a target host");
  return st.host_index(*a.target);
}

inline Outcome apply_blue(GameState& st, const BlueAction& a) {
  const std::size_t h = check_action(st, a);
  st.monitor_active = false;
  switch (a.kind) {
    case BlueKind::Monitor:
      st.monitor_active = true;
      return Outcome::Succeeded;
    case BlueKind::Analyze:
      st.displayed_compromise[h] = st.truth[h];
      return Outcome::Succeeded;
    case BlueKind::Remove:
      switch (st.truth[h]) {
        case CompromiseLevel::Clean: return Outcome::NoEffect;
        case CompromiseLevel::UserAccess:
          st.truth[h] = CompromiseLevel::Clean;
          st.red.footholds[h] = Foothold::None;
          st.displayed_compromise[h] = CompromiseLevel::Clean;
          return Outcome::Succeeded;
        default: return Outcome::Failed;
      }
    case BlueKind::Restore:
      if (st.truth[h] == CompromiseLevel::Clean) return Outcome::NoEffect;
      st.truth[h] = CompromiseLevel::Clean;
      st.red.footholds[h] = Foothold::None;
      st.displayed_compromise[h] = CompromiseLevel::Clean;
      st.displayed_activity[h] = ActivityEvent{};
      return Outcome::Succeeded;
  }
  return Outcome::NoEffect;
}

inline DefenderObservation observe(const GameState& st) {
  const Scenario& s = st.world();
  DefenderObservation obs;
  obs.rows.reserve(s.host_count());
  for (std::size_t i = 0; i < s.host_count(); ++i) {
    const HostSpec& h = s.hosts[i];
    obs.rows.push_back({s.subnet_name(h.subnet), h.ip, h.name, st.displayed_compromise[i], st.displayed_activity[i]});
  }
  obs.last_step_loss = st.last_step_loss;
  obs.total_loss = st.total_loss;
  obs.step = st.step;
  obs.episode_length = st.episode_length;
  obs.episode_index = st.episode_index;
  return obs;
}

// Recomputes points from the score table; the stored per-event points are
// not consulted.
inline int score_events(const std::vector<ScoringEvent>& events, const Scenario& s) {
  int total = 0;
  for (const auto& e : events) {
    switch (e.kind) {
      case ScoringKind::EscalationSucceeded: {
        auto h = s.find_host(e.host);
        if (h) total += s.score_table.escalation_cost(s.hosts[*h].role);
        break;
      }
      case ScoringKind::ImpactSucceeded: total += s.score_table.impact; break;
      case ScoringKind::BlueActionCost: total += s.score_table.blue_action; break;
    }
  }
  return total;
}

inline StepResult resolve_step(GameState& st, const BlueAction& a) {
  if (st.episode_over) throw Error(ErrorCode::EpisodeOver, "episode already over");
  check_action(st, a);

  StepResult r;
  r.step = st.step + 1;
  r.blue = a;
  r.red = next_red_action(st);

  r.blue_outcome = apply_blue(st, a);
  if (st.world().score_table.blue_action > 0)
    r.scoring_events.push_back({ScoringKind::BlueActionCost, a.target.value_or(""), st.world().score_table.blue_action});

  RedResolution red = apply_red(st, r.red, r.step);
  r.red_outcome = red.outcome;
  for (auto& e : red.scoring_events) r.scoring_events.push_back(std::move(e));

  for (auto& [host, event] : red.activity) {
    if (!always_visible(event.kind) && !st.monitor_active) continue;
    if (event.kind == ActivityKind::EscalationDetected) st.displayed_compromise[host] = CompromiseLevel::AdminAccess;
    if (event.kind == ActivityKind::ImpactDetected) st.displayed_compromise[host] = CompromiseLevel::Impacted;
    st.displayed_activity[host] = std::move(event);
  }

  int loss = 0;
  for (const auto& e : r.scoring_events) loss += e.points;
  st.last_step_loss = loss;
  st.total_loss += loss;
  st.step = r.step;
  st.episode_over = st.step >= st.episode_length;

  r.last_step_loss = st.last_step_loss;
  r.total_loss = st.total_loss;
  r.observation = observe(st);
  return r;
}

// Internal consistency of one state; empty when every invariant holds.
inline std::vector<std::string> check_invariants(const GameState& st) {
  std::vector<std::string> out;
  const Scenario& s = st.world();
  const std::size_t op = s.operational_server();
  for (std::size_t i = 0; i < s.host_count(); ++i) {
    const std::string& name = s.hosts[i].name;
    const CompromiseLevel truth = st.truth[i];
    const CompromiseLevel shown = st.displayed_compromise[i];
    const Foothold f = st.red.footholds[i];
    const bool consistent = (truth == CompromiseLevel::Clean && f == Foothold::None) ||
                            (truth == CompromiseLevel::UserAccess && f == Foothold::User) ||
                            (truth >= CompromiseLevel::AdminAccess && f == Foothold::Admin);
    if (!consistent) out.push_back("foothold inconsistent with truth on " + name);
    if (truth == CompromiseLevel::Impacted && i != op) out.push_back("Impacted on non-operational host " + name);
    if (shown > truth) out.push_back("observation overstates compromise on " + name);
    if (truth >= CompromiseLevel::AdminAccess && shown != truth) out.push_back("admin-level compromise hidden on " + name);
  }
  if (st.step < 0 || st.step > st.episode_length) out.push_back("step out of range");
  if (st.episode_over != (st.step == st.episode_length)) out.push_back("episode_over flag inconsistent");
  return out;
}

}  // namespace idg
