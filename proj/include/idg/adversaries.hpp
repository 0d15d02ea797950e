#pragma once

// The two scripted red doctrines. Both walk an ordered milestone list from
// the scenario's doctrine calibration; they differ only in that list and in
// whether the attacker knows the path in advance.

#include <cstddef>
#include <utility>
#include <vector>

#include "idg/state.hpp"

namespace idg {

namespace detail {

inline RedAction engage_host(const GameState& st, std::size_t host) {
  const Scenario& s = st.world();
  const RedMind& m = st.red;
  const HostSpec& h = s.hosts[host];
  if (!m.discovered_hosts[host] && !m.prior_path_knowledge && !m.discovered_subnets.count(h.subnet))
    return {RedKind::DiscoverSubnet, s.subnet_name(h.subnet)};
  if (!m.known_services[host]) return {RedKind::DiscoverServices, h.name};
  if (m.footholds[host] == Foothold::None) return {RedKind::Exploit, h.name};
  return {RedKind::Escalate, h.name};
}

// Walks the milestones in order and works on the earliest one not held.
// A host restored by blue is therefore re-taken before anything later;
// scans are never repeated because knowledge survives blue actions.
inline RedAction follow_milestones(const GameState& st, const DoctrinePlan& plan) {
  const Scenario& s = st.world();
  for (const auto& milestone : plan.milestones) {
    if (const Subnet* sub = s.find_subnet(milestone)) {
      if (st.red.discovered_subnets.count(sub->id)) continue;
      return {RedKind::DiscoverSubnet, sub->name};
    }
    const std::size_t host = st.host_index(milestone);
    if (st.red.footholds[host] == Foothold::Admin) continue;
    return engage_host(st, host);
  }
  return {RedKind::Impact, s.hosts[s.operational_server()].name};
}

inline bool subnet_reachable(const GameState& st, int subnet) {
  const Scenario& s = st.world();
  if (s.internet_facing(subnet)) return true;
  for (std::size_t i = 0; i < s.hosts.size(); ++i) {
    const Foothold f = st.red.footholds[i];
    if (f == Foothold::None) continue;
    if (s.hosts[i].subnet == subnet) return true;
    if (f == Foothold::Admin && s.adjacent(s.hosts[i].subnet, subnet)) return true;
  }
  return false;
}

}  // namespace detail

inline RedAction beeline_policy(const GameState& st) {
  return detail::follow_milestones(st, st.world().doctrines.beeline);
}

inline RedAction meander_policy(const GameState& st) {
  return detail::follow_milestones(st, st.world().doctrines.meander);
}

// Deterministic: a pure function of the state. Once the operational server
// is impacted the answer stays Impact.
inline RedAction next_red_action(const GameState& st) {
  return st.red.doctrine == Doctrine::Beeline ? beeline_policy(st) : meander_policy(st);
}

struct RedResolution {
  Outcome outcome = Outcome::Failed;
  std::vector<ScoringEvent> scoring_events;
  // Every host the action touched, with the activity it would show.
  std::vector<std::pair<std::size_t, ActivityEvent>> activity;
};

// Resolves a red action against the (post-blue) state. Failures are
// outcomes: a failed action leaves truth and knowledge untouched.
inline RedResolution apply_red(GameState& st, const RedAction& a, int step) {
  const Scenario& s = st.world();
  RedMind& m = st.red;
  RedResolution r;

  auto touch = [&](std::size_t host, ActivityKind kind) {
    r.activity.push_back({host, ActivityEvent{kind, a.target, step}});
  };

  switch (a.kind) {
    case RedKind::DiscoverSubnet: {
      const Subnet* sub = s.find_subnet(a.target);
      if (!sub || !detail::subnet_reachable(st, sub->id)) break;
      m.discovered_subnets.insert(sub->id);
      for (std::size_t h : s.hosts_in_subnet(sub->id)) {
        if (s.doctrines.reveal.scan_reveals_hosts) m.discovered_hosts[h] = true;
        touch(h, ActivityKind::SubnetScan);
      }
      r.outcome = Outcome::Succeeded;
      break;
    }
    case RedKind::DiscoverServices: {
      const std::size_t h = st.host_index(a.target);
      touch(h, ActivityKind::ServiceScan);
      if (!is_reachable(st, h)) break;
      m.discovered_hosts[h] = true;
      m.known_services[h] = true;
      r.outcome = Outcome::Succeeded;
      break;
    }
    case RedKind::Exploit: {
      const std::size_t h = st.host_index(a.target);
      touch(h, ActivityKind::ExploitAttempt);
      if (!m.known_services[h] || !is_reachable(st, h) || st.truth[h] != CompromiseLevel::Clean) break;
      st.truth[h] = CompromiseLevel::UserAccess;
      m.footholds[h] = Foothold::User;
      m.discovered_hosts[h] = true;
      r.outcome = Outcome::Succeeded;
      break;
    }
    case RedKind::Escalate: {
      const std::size_t h = st.host_index(a.target);
      if (m.footholds[h] != Foothold::User || st.truth[h] != CompromiseLevel::UserAccess) break;
      st.truth[h] = CompromiseLevel::AdminAccess;
      m.footholds[h] = Foothold::Admin;
      r.scoring_events.push_back(
          {ScoringKind::EscalationSucceeded, s.hosts[h].name, s.score_table.escalation_cost(s.hosts[h].role)});
      touch(h, ActivityKind::EscalationDetected);

      const RevealRules& reveal = s.doctrines.reveal;
      if (reveal.escalation_reveals_next_lead) {
        if (const Subnet* next = s.find_subnet(s.hosts[h].subnet + 1); next && !next->hosts.empty())
          if (auto lead = s.find_host(next->hosts.front())) m.discovered_hosts[*lead] = true;
      }
      if (reveal.enterprise_escalation_reveals_op_server_services &&
          s.hosts[h].role == HostRole::EnterpriseServer) {
        const std::size_t op = s.operational_server();
        m.discovered_hosts[op] = true;
        m.known_services[op] = true;
      }
      r.outcome = Outcome::Succeeded;
      break;
    }
    case RedKind::Impact: {
      const std::size_t op = s.operational_server();
      if (m.footholds[op] != Foothold::Admin) break;
      st.truth[op] = CompromiseLevel::Impacted;
      r.scoring_events.push_back({ScoringKind::ImpactSucceeded, s.hosts[op].name, s.score_table.impact});
      touch(op, ActivityKind::ImpactDetected);
      r.outcome = Outcome::Succeeded;
      break;
    }
  }
  return r;
}

}  // namespace idg
