#pragma once

// Episode logs: one JSON object per line. A header line, one line per
// resolved step, and a summary line once the episode is complete. The format
// is documented in docs/log_format.md.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idg/scenario.hpp"
#include "idg/state.hpp"

namespace idg {

inline constexpr std::string_view kLogFormat = "idg-episode/1";

struct StepRecord {
  int step = 0;
  BlueAction blue;
  Outcome blue_outcome = Outcome::NoEffect;
  RedAction red;
  Outcome red_outcome = Outcome::NoEffect;
  std::vector<ScoringEvent> scoring_events;
  int last_step_loss = 0;
  int total_loss = 0;
  std::vector<CompromiseLevel> truth;  // post-step, in host order

  bool operator==(const StepRecord&) const = default;
};

struct EpisodeLog {
  std::string scenario_name;
  std::string scenario_hash;
  Doctrine doctrine = Doctrine::Beeline;
  int episode_index = 0;
  int episode_length = 0;
  std::string policy;
  std::string operational_server;
  std::vector<std::string> hosts;
  std::vector<StepRecord> steps;

  bool complete() const { return static_cast<int>(steps.size()) == episode_length; }
  int total_loss() const { return steps.empty() ? 0 : steps.back().total_loss; }

  std::vector<BlueAction> blue_actions() const {
    std::vector<BlueAction> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.blue);
    return out;
  }

  // Truth at the start of step index i (0-based).
  std::vector<CompromiseLevel> truth_before(std::size_t i) const {
    if (i == 0) return std::vector<CompromiseLevel>(hosts.size(), CompromiseLevel::Clean);
    return steps[i - 1].truth;
  }

  std::size_t host_index(std::string_view host) const {
    for (std::size_t i = 0; i < hosts.size(); ++i)
      if (hosts[i] == host) return i;
    return hosts.size();
  }

  bool operator==(const EpisodeLog&) const = default;
};

inline StepRecord make_record(const StepResult& r, const GameState& after) {
  return {r.step, r.blue, r.blue_outcome, r.red, r.red_outcome, r.scoring_events, r.last_step_loss, r.total_loss,
          after.truth};
}

inline EpisodeLog make_log_header(const Scenario& s, Doctrine d, int episode_index, int length, std::string policy) {
  EpisodeLog log;
  log.scenario_name = s.name;
  log.scenario_hash = content_hash(s);
  log.doctrine = d;
  log.episode_index = episode_index;
  log.episode_length = length;
  log.policy = std::move(policy);
  log.operational_server = s.hosts[s.operational_server()].name;
  for (const auto& h : s.hosts) log.hosts.push_back(h.name);
  return log;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {
using ojson = nlohmann::ordered_json;
}

inline std::string header_line(const EpisodeLog& log) {
  detail::ojson j;
  j["record"] = "header";
  j["format"] = kLogFormat;
  j["scenario"] = log.scenario_name;
  j["scenario_hash"] = log.scenario_hash;
  j["doctrine"] = to_string(log.doctrine);
  j["episode"] = log.episode_index;
  j["length"] = log.episode_length;
  j["policy"] = log.policy;
  j["operational_server"] = log.operational_server;
  j["hosts"] = log.hosts;
  return j.dump();
}

inline std::string step_line(const EpisodeLog& log, const StepRecord& r) {
  detail::ojson j;
  j["record"] = "step";
  j["step"] = r.step;
  detail::ojson blue;
  blue["kind"] = to_string(r.blue.kind);
  if (r.blue.target) blue["target"] = *r.blue.target;
  j["blue"] = blue;
  j["blue_outcome"] = to_string(r.blue_outcome);
  j["red"] = {{"kind", to_string(r.red.kind)}, {"target", r.red.target}};
  j["red_outcome"] = to_string(r.red_outcome);
  j["events"] = detail::ojson::array();
  for (const auto& e : r.scoring_events)
    j["events"].push_back({{"kind", to_string(e.kind)}, {"host", e.host}, {"points", e.points}});
  j["last_step_loss"] = r.last_step_loss;
  j["total_loss"] = r.total_loss;
  detail::ojson truth = detail::ojson::object();
  for (std::size_t i = 0; i < log.hosts.size() && i < r.truth.size(); ++i) truth[log.hosts[i]] = to_string(r.truth[i]);
  j["truth"] = truth;
  return j.dump();
}

inline std::string summary_line(const EpisodeLog& log) {
  detail::ojson j;
  j["record"] = "summary";
  j["steps"] = log.steps.size();
  j["total_loss"] = log.total_loss();
  return j.dump();
}

inline std::string to_jsonl(const EpisodeLog& log) {
  std::string out = header_line(log) + "\n";
  for (const auto& r : log.steps) out += step_line(log, r) + "\n";
  if (log.complete()) out += summary_line(log) + "\n";
  return out;
}

namespace detail {

template <typename T, typename Parse>
T parse_enum(const nlohmann::json& j, const char* field, int line, Parse parse) {
  if (!j.is_string()) throw ParseError(line, field, "expected a string");
  auto v = parse(j.get<std::string>());
  if (!v) throw ParseError(line, field, "unknown value '" + j.get<std::string>() + "'");
  return *v;
}

inline const nlohmann::json& need(const nlohmann::json& j, const char* field, int line) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(line, field, "missing field");
  return *it;
}

}  // namespace detail

// Accepts in-progress logs (no summary line). Throws ParseError.
inline EpisodeLog parse_jsonl(std::string_view text) {
  EpisodeLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  bool have_summary = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(lineno, "", e.what());
    }
    try {
      const std::string kind = detail::need(j, "record", lineno).get<std::string>();
      if (kind == "header") {
        if (detail::need(j, "format", lineno).get<std::string>() != kLogFormat)
          throw ParseError(lineno, "format", "unsupported log format");
        log.scenario_name = detail::need(j, "scenario", lineno).get<std::string>();
        log.scenario_hash = detail::need(j, "scenario_hash", lineno).get<std::string>();
        log.doctrine = parse_doctrine(detail::need(j, "doctrine", lineno).get<std::string>());
        log.episode_index = detail::need(j, "episode", lineno).get<int>();
        log.episode_length = detail::need(j, "length", lineno).get<int>();
        log.policy = detail::need(j, "policy", lineno).get<std::string>();
        log.operational_server = detail::need(j, "operational_server", lineno).get<std::string>();
        log.hosts = detail::need(j, "hosts", lineno).get<std::vector<std::string>>();
        have_header = true;
      } else if (kind == "step") {
        if (!have_header) throw ParseError(lineno, "record", "step before header");
        StepRecord r;
        r.step = detail::need(j, "step", lineno).get<int>();
        const auto& blue = detail::need(j, "blue", lineno);
        r.blue.kind = detail::parse_enum<BlueKind>(detail::need(blue, "kind", lineno), "blue.kind", lineno, parse_blue_kind);
        if (blue.contains("target")) r.blue.target = blue["target"].get<std::string>();
        r.blue_outcome = detail::parse_enum<Outcome>(detail::need(j, "blue_outcome", lineno), "blue_outcome", lineno, parse_outcome);
        const auto& red = detail::need(j, "red", lineno);
        r.red.kind = detail::parse_enum<RedKind>(detail::need(red, "kind", lineno), "red.kind", lineno, parse_red_kind);
        r.red.target = detail::need(red, "target", lineno).get<std::string>();
        r.red_outcome = detail::parse_enum<Outcome>(detail::need(j, "red_outcome", lineno), "red_outcome", lineno, parse_outcome);
        for (const auto& e : detail::need(j, "events", lineno)) {
          r.scoring_events.push_back(
              {detail::parse_enum<ScoringKind>(detail::need(e, "kind", lineno), "events.kind", lineno, parse_scoring_kind),
               detail::need(e, "host", lineno).get<std::string>(), detail::need(e, "points", lineno).get<int>()});
        }
        r.last_step_loss = detail::need(j, "last_step_loss", lineno).get<int>();
        r.total_loss = detail::need(j, "total_loss", lineno).get<int>();
        const auto& truth = detail::need(j, "truth", lineno);
        for (const auto& host : log.hosts)
          r.truth.push_back(detail::parse_enum<CompromiseLevel>(detail::need(truth, host.c_str(), lineno), "truth",
                                                                lineno, parse_compromise));
        log.steps.push_back(std::move(r));
      } else if (kind == "summary") {
        have_summary = true;
        if (detail::need(j, "total_loss", lineno).get<int>() != log.total_loss())
          throw ParseError(lineno, "total_loss", "summary disagrees with step records");
      } else {
        throw ParseError(lineno, "record", "unknown record kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(lineno, "", e.what());
    }
  }
  if (!have_header) throw ParseError(lineno, "record", "missing header");
  if (have_summary && !log.complete()) throw ParseError(lineno, "steps", "summary on an incomplete episode");
  return log;
}

// Structural checks: record count, step numbering, and loss bookkeeping.
inline std::vector<std::string> validate_log(const EpisodeLog& log) {
  std::vector<std::string> out;
  if (!log.complete()) out.push_back("expected " + std::to_string(log.episode_length) + " step records, found " +
                                     std::to_string(log.steps.size()));
  int running = 0;
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const auto& r = log.steps[i];
    if (r.step != static_cast<int>(i) + 1) out.push_back("step numbering broken at record " + std::to_string(i + 1));
    int sum = 0;
    for (const auto& e : r.scoring_events) sum += e.points;
    if (sum != r.last_step_loss) out.push_back("last_step_loss mismatch at step " + std::to_string(r.step));
    running += r.last_step_loss;
    if (running != r.total_loss) out.push_back("total_loss mismatch at step " + std::to_string(r.step));
    if (r.truth.size() != log.hosts.size()) out.push_back("truth snapshot size mismatch at step " + std::to_string(r.step));
  }
  return out;
}

}  // namespace idg
