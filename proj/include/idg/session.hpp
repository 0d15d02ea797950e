#pragma once

// Interactive sessions for human defenders: the practice-then-main episode
// plan, per-session serialized action handling, and durable logs.
//
// On disk, LOGS/sessions.index gets one JSON line per created session, and
// LOGS/<id>/ holds manifest.json plus one episode_NNN.jsonl per started
// episode. Step lines are appended and flushed before a step is
// acknowledged; finished.json marks a session that ran out of episodes.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idg/analytics.hpp"
#include "idg/engine.hpp"
#include "idg/episode_log.hpp"
#include "idg/harness.hpp"

namespace idg {

inline constexpr std::string_view kSessionFormat = "idg-session/1";
inline constexpr std::string_view kHumanPolicy = "Human";

enum class Phase { Practice, Main };

constexpr std::string_view to_string(Phase p) { return p == Phase::Practice ? "Practice" : "Main"; }

enum class SessionStatus { AwaitingAction, EpisodeComplete, Finished };

constexpr std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingAction: return "AwaitingAction";
    case SessionStatus::EpisodeComplete: return "EpisodeComplete";
    case SessionStatus::Finished: return "Finished";
  }
  return "?";
}

struct PlannedEpisode {
  Phase phase = Phase::Practice;
  Doctrine doctrine = Doctrine::Beeline;
  int length = 0;
};

// Practice episodes alternate Beeline, Meander in that order; every main
// episode faces the assigned doctrine.
struct SessionPlan {
  Doctrine assigned = Doctrine::Beeline;
  int practice_episodes = 2;
  int practice_length = 10;
  int main_episodes = 7;
  int main_length = 25;

  std::vector<PlannedEpisode> episodes() const {
    std::vector<PlannedEpisode> out;
    for (int i = 0; i < practice_episodes; ++i)
      out.push_back({Phase::Practice, i % 2 == 0 ? Doctrine::Beeline : Doctrine::Meander, practice_length});
    for (int i = 0; i < main_episodes; ++i) out.push_back({Phase::Main, assigned, main_length});
    return out;
  }

  void validate() const {
    if (practice_episodes < 0 || main_episodes < 1)
      throw Error(ErrorCode::InvalidArgument, "plan needs at least one main episode and no negative counts");
    if ((practice_episodes > 0 && practice_length < 1) || main_length < 1)
      throw Error(ErrorCode::InvalidArgument, "episode lengths must be >= 1");
  }

  bool operator==(const SessionPlan&) const = default;
};

// Reads plan overrides: any of practice_episodes, practice_length,
// main_episodes, main_length.
inline SessionPlan apply_plan_overrides(SessionPlan plan, const nlohmann::json& j) {
  if (j.is_null()) return plan;
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "plan must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer()) throw Error(ErrorCode::InvalidArgument, "plan." + key + " must be an integer");
    const int v = value.get<int>();
    if (key == "practice_episodes") plan.practice_episodes = v;
    else if (key == "practice_length") plan.practice_length = v;
    else if (key == "main_episodes") plan.main_episodes = v;
    else if (key == "main_length") plan.main_length = v;
    else throw Error(ErrorCode::InvalidArgument, "unknown plan field '" + key + "'");
  }
  plan.validate();
  return plan;
}

inline nlohmann::ordered_json plan_to_json(const SessionPlan& p) {
  return {{"assigned", std::string(to_string(p.assigned))},
          {"practice_episodes", p.practice_episodes},
          {"practice_length", p.practice_length},
          {"main_episodes", p.main_episodes},
          {"main_length", p.main_length}};
}

inline SessionPlan plan_from_json(const nlohmann::json& j) {
  SessionPlan p;
  p.assigned = parse_doctrine(j.at("assigned").get<std::string>());
  p.practice_episodes = j.at("practice_episodes").get<int>();
  p.practice_length = j.at("practice_length").get<int>();
  p.main_episodes = j.at("main_episodes").get<int>();
  p.main_length = j.at("main_length").get<int>();
  p.validate();
  return p;
}

struct CreateOptions {
  std::optional<Doctrine> doctrine;  // nullopt: balanced-random assignment
  nlohmann::json plan;               // overrides, may be null
  std::string metadata;              // opaque, for an external experiment wrapper
};

// Position in the plan, 1-based episode number.
struct SessionProgress {
  SessionStatus status = SessionStatus::AwaitingAction;
  Phase phase = Phase::Practice;
  Doctrine doctrine = Doctrine::Beeline;
  int episode_number = 1;
  int total_episodes = 0;
};

struct SessionView {
  std::string id;
  SessionProgress progress;
  DefenderObservation observation;
  int session_loss = 0;  // magnitude, every episode so far
  int main_loss = 0;     // magnitude, main phase only
  std::optional<long> bonus_cents;  // set once Finished
};

struct ActionResult {
  Outcome blue_outcome = Outcome::NoEffect;
  int last_step_loss = 0;
  int total_loss = 0;
  SessionView view;
};

// Main-phase bonus; a main loss beyond the 7x160 scale clamps to zero bonus.
inline long session_bonus_cents(int main_loss_magnitude) {
  return bonus_cents(-std::min(main_loss_magnitude, kMaxSessionLoss));
}

class Session {
 public:
  Session(std::string id, SessionPlan plan, std::string assignment, std::string metadata,
          std::shared_ptr<const Scenario> scenario, std::filesystem::path dir)
      : id_(std::move(id)),
        plan_(plan),
        episodes_(plan.episodes()),
        assignment_(std::move(assignment)),
        metadata_(std::move(metadata)),
        scenario_(std::move(scenario)),
        dir_(std::move(dir)) {}

  const std::string& id() const { return id_; }
  const SessionPlan& plan() const { return plan_; }
  const std::string& assignment() const { return assignment_; }

  SessionView view() const {
    std::lock_guard lock(mu_);
    return view_locked();
  }

  // expected_step / expected_episode, when given, must match the current
  // position; a duplicate or out-of-date submission fails with StaleStep.
  ActionResult submit(const BlueAction& action, std::optional<int> expected_step = std::nullopt,
                      std::optional<int> expected_episode = std::nullopt) {
    std::lock_guard lock(mu_);
    check_action(state_, action);
    if ((expected_episode && *expected_episode != position_ + 1) || (expected_step && *expected_step != state_.step))
      throw Error(ErrorCode::StaleStep, "submission for episode " + std::to_string(expected_episode.value_or(position_ + 1)) +
                                            " step " + std::to_string(expected_step.value_or(state_.step)) +
                                            " but the session is at episode " + std::to_string(position_ + 1) +
                                            " step " + std::to_string(state_.step));
    if (status_ != SessionStatus::AwaitingAction)
      throw Error(ErrorCode::WrongStatus, "session is " + std::string(to_string(status_)) + ", not accepting actions");

    GameState next = state_;
    StepResult r = resolve_step(next, action);
    StepRecord rec = make_record(r, next);
    if (!dir_.empty()) append_line(current_file(), step_line(current_, rec));
    state_ = std::move(next);
    current_.steps.push_back(std::move(rec));
    if (state_.episode_over) {
      if (!dir_.empty()) append_line(current_file(), summary_line(current_));
      finished_logs_.push_back(current_);
      status_ = SessionStatus::EpisodeComplete;
    }
    return {r.blue_outcome, r.last_step_loss, r.total_loss, view_locked()};
  }

  SessionView advance(std::optional<int> expected_episode = std::nullopt) {
    std::lock_guard lock(mu_);
    if (expected_episode && *expected_episode != position_ + 1)
      throw Error(ErrorCode::StaleStep, "next-episode request is for episode " + std::to_string(*expected_episode) +
                                            " but the session is at episode " + std::to_string(position_ + 1));
    if (status_ != SessionStatus::EpisodeComplete)
      throw Error(ErrorCode::WrongStatus, "session is " + std::string(to_string(status_)) + ", episode not complete");
    if (position_ + 1 >= static_cast<int>(episodes_.size())) {
      status_ = SessionStatus::Finished;
      if (!dir_.empty()) {
        nlohmann::ordered_json j{{"status", "Finished"}, {"main_loss", -main_loss_locked()},
                                 {"bonus", format_dollars(session_bonus_cents(main_loss_locked()))}};
        write_text_file(dir_ / "finished.json", j.dump(2) + "\n");
      }
      return view_locked();
    }
    start_episode(position_ + 1, true);
    return view_locked();
  }

  // Completed episodes only; the in-flight one would expose ground truth.
  std::vector<EpisodeLog> completed_logs() const {
    std::lock_guard lock(mu_);
    return finished_logs_;
  }

  // Starts episode 1 and writes the manifest. Used for new sessions.
  void begin() {
    std::lock_guard lock(mu_);
    if (!dir_.empty()) {
      std::filesystem::create_directories(dir_);
      write_text_file(dir_ / "manifest.json", manifest().dump(2) + "\n");
    }
    start_episode(0, true);
  }

  // Rebuilds the session from its directory by replaying the persisted blue
  // actions through the engine; the replay must reproduce every record.
  void recover() {
    std::lock_guard lock(mu_);
    namespace fs = std::filesystem;
    int last = -1;
    for (int i = 0; i < static_cast<int>(episodes_.size()); ++i)
      if (fs::exists(dir_ / episode_file_name(i + 1))) last = i;
    if (last < 0) {
      start_episode(0, true);
      return;
    }
    for (int i = 0; i <= last; ++i) {
      const fs::path file = dir_ / episode_file_name(i + 1);
      std::string text = read_text_file(file);
      // A crash mid-append can leave a torn final line; drop it.
      if (!text.empty() && text.back() != '\n') {
        text.erase(text.find_last_of('\n') == std::string::npos ? 0 : text.find_last_of('\n') + 1);
        write_text_file(file, text);
      }
      if (text.empty()) {
        start_episode(i, true);
        break;
      }
      const EpisodeLog persisted = parse_jsonl(text);
      start_episode(i, false);
      for (const auto& rec : persisted.steps) {
        StepResult r = resolve_step(state_, rec.blue);
        StepRecord again = make_record(r, state_);
        if (!(again == rec))
          throw Error(ErrorCode::Storage, "session " + id_ + ": replay diverges from " + file.string() + " at step " +
                                              std::to_string(rec.step));
        current_.steps.push_back(std::move(again));
      }
      if (state_.episode_over) {
        if (text.find("\"record\":\"summary\"") == std::string::npos) append_line(file, summary_line(current_));
        finished_logs_.push_back(current_);
        status_ = SessionStatus::EpisodeComplete;
      }
    }
    if (status_ == SessionStatus::EpisodeComplete && position_ + 1 >= static_cast<int>(episodes_.size()) &&
        fs::exists(dir_ / "finished.json"))
      status_ = SessionStatus::Finished;
  }

  nlohmann::ordered_json manifest() const {
    nlohmann::ordered_json j;
    j["format"] = kSessionFormat;
    j["session_id"] = id_;
    j["assignment"] = assignment_;
    j["doctrine"] = std::string(to_string(plan_.assigned));
    j["plan"] = plan_to_json(plan_);
    j["scenario"] = scenario_->name;
    j["scenario_hash"] = content_hash(*scenario_);
    j["metadata"] = metadata_;
    j["episodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < episodes_.size(); ++i)
      j["episodes"].push_back({{"file", episode_file_name(static_cast<int>(i) + 1)},
                               {"phase", std::string(to_string(episodes_[i].phase))},
                               {"doctrine", std::string(to_string(episodes_[i].doctrine))},
                               {"length", episodes_[i].length}});
    return j;
  }

 private:
  std::filesystem::path current_file() const { return dir_ / episode_file_name(position_ + 1); }

  static void append_line(const std::filesystem::path& file, const std::string& line) {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::Storage, "cannot append to " + file.string());
    out << line << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::Storage, "write failed for " + file.string());
  }

  void start_episode(int position, bool persist) {
    const PlannedEpisode& e = episodes_[static_cast<std::size_t>(position)];
    position_ = position;
    state_ = init_episode(scenario_, e.doctrine, e.length, position + 1);
    current_ = make_log_header(*scenario_, e.doctrine, position + 1, e.length, std::string(kHumanPolicy));
    status_ = SessionStatus::AwaitingAction;
    if (persist && !dir_.empty()) write_text_file(current_file(), header_line(current_) + "\n");
  }

  int main_loss_locked() const {
    int total = 0;
    for (const auto& log : finished_logs_)
      if (episodes_[static_cast<std::size_t>(log.episode_index - 1)].phase == Phase::Main) total += log.total_loss();
    if (status_ == SessionStatus::AwaitingAction && episodes_[static_cast<std::size_t>(position_)].phase == Phase::Main)
      total += state_.total_loss;
    return total;
  }

  SessionView view_locked() const {
    SessionView v;
    v.id = id_;
    const PlannedEpisode& e = episodes_[static_cast<std::size_t>(position_)];
    v.progress = {status_, e.phase, e.doctrine, position_ + 1, static_cast<int>(episodes_.size())};
    v.observation = observe(state_);
    for (const auto& log : finished_logs_) v.session_loss += log.total_loss();
    if (status_ == SessionStatus::AwaitingAction) v.session_loss += state_.total_loss;
    v.main_loss = main_loss_locked();
    if (status_ == SessionStatus::Finished) v.bonus_cents = session_bonus_cents(v.main_loss);
    return v;
  }

  mutable std::mutex mu_;
  std::string id_;
  SessionPlan plan_;
  std::vector<PlannedEpisode> episodes_;
  std::string assignment_;
  std::string metadata_;
  std::shared_ptr<const Scenario> scenario_;
  std::filesystem::path dir_;  // empty: in-memory only

  int position_ = 0;
  SessionStatus status_ = SessionStatus::AwaitingAction;
  GameState state_;
  EpisodeLog current_;
  std::vector<EpisodeLog> finished_logs_;
};

// Owns every session. Constructing with a logs directory reloads the
// sessions listed in its index.
class SessionManager {
 public:
  explicit SessionManager(std::shared_ptr<const Scenario> scenario, std::filesystem::path logs_dir = {},
                          std::uint64_t seed = std::random_device{}())
      : scenario_(std::move(scenario)), logs_dir_(std::move(logs_dir)), rng_(seed) {
    if (!scenario_) throw Error(ErrorCode::InvalidArgument, "SessionManager needs a scenario");
    if (!logs_dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(logs_dir_, ec);
      if (ec) throw Error(ErrorCode::Storage, "cannot create " + logs_dir_.string() + ": " + ec.message());
      reload();
    }
  }

  const Scenario& scenario() const { return *scenario_; }

  std::shared_ptr<Session> create(const CreateOptions& opts = {}) {
    SessionPlan plan = apply_plan_overrides(SessionPlan{}, opts.plan);
    std::unique_lock lock(mu_);
    std::string assignment = "explicit";
    if (opts.doctrine) {
      plan.assigned = *opts.doctrine;
    } else {
      assignment = "balanced";
      const int beeline = counts_[Doctrine::Beeline];
      const int meander = counts_[Doctrine::Meander];
      if (beeline != meander) plan.assigned = beeline < meander ? Doctrine::Beeline : Doctrine::Meander;
      else plan.assigned = (rng_() & 1) ? Doctrine::Meander : Doctrine::Beeline;
    }
    std::string id;
    do id = new_id();
    while (sessions_.count(id));

    auto session = std::make_shared<Session>(id, plan, assignment, opts.metadata, scenario_,
                                             logs_dir_.empty() ? std::filesystem::path{} : logs_dir_ / id);
    session->begin();
    if (!logs_dir_.empty()) {
      nlohmann::ordered_json entry{{"session_id", id},
                                   {"doctrine", std::string(to_string(plan.assigned))},
                                   {"assignment", assignment}};
      std::ofstream out(logs_dir_ / "sessions.index", std::ios::binary | std::ios::app);
      out << entry.dump() << '\n';
      out.flush();
      if (!out) throw Error(ErrorCode::Storage, "cannot append to the session index");
    }
    sessions_[id] = session;
    ++counts_[plan.assigned];
    return session;
  }

  // Throws UnknownSession.
  std::shared_ptr<Session> get(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return sessions_.size();
  }

  std::map<Doctrine, int> assignment_counts() const {
    std::shared_lock lock(mu_);
    return counts_;
  }

 private:
  std::string new_id() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
    return buf;
  }

  void reload() {
    const auto index = logs_dir_ / "sessions.index";
    if (!std::filesystem::exists(index)) return;
    std::istringstream in(read_text_file(index));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json entry;
      try {
        entry = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception&) {
        continue;  // torn index line from a crash during create
      }
      const std::string id = entry.at("session_id").get<std::string>();
      const auto dir = logs_dir_ / id;
      if (!std::filesystem::exists(dir / "manifest.json")) continue;
      const auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
      if (manifest.at("scenario_hash").get<std::string>() != content_hash(*scenario_))
        throw Error(ErrorCode::Storage, "session " + id + " was recorded against a different scenario");
      auto session = std::make_shared<Session>(id, plan_from_json(manifest.at("plan")),
                                               manifest.value("assignment", "explicit"),
                                               manifest.value("metadata", ""), scenario_, dir);
      session->recover();
      sessions_[id] = session;
      ++counts_[session->plan().assigned];
    }
  }

  std::shared_ptr<const Scenario> scenario_;
  std::filesystem::path logs_dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<Doctrine, int> counts_{{Doctrine::Beeline, 0}, {Doctrine::Meander, 0}};
  std::mt19937_64 rng_;
};

}  // namespace idg
