#pragma once

// Outcome and process metrics computed from episode logs: loss,
// disruptions, recovery time, action and target proportions, the
// defense-strategy coder, rank correlation, the bonus formula, and CSV export.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idg/episode_log.hpp"

namespace idg {

// Loss as the defender sees it: a non-positive number.
inline int episode_loss(const EpisodeLog& log) { return -log.total_loss(); }

// Loss recomputed from the scoring events alone.
inline int loss_from_events(const EpisodeLog& log) {
  int total = 0;
  for (const auto& r : log.steps)
    for (const auto& e : r.scoring_events) total += e.points;
  return -total;
}

// ---------------------------------------------------------------------------
// Disruptions

struct Disruption {
  int start = 0;
  int end = 0;
  bool censored = false;  // episode ended before a successful restore

  bool operator==(const Disruption&) const = default;
};

// A disruption opens on a successful Impact while none is open, and closes
// on the next successful Restore of the operational server, or at episode
// end (censored).
inline std::vector<Disruption> disruptions(const EpisodeLog& log) {
  std::vector<Disruption> out;
  std::optional<int> open;
  for (const auto& r : log.steps) {
    if (open && r.blue.kind == BlueKind::Restore && r.blue.target == log.operational_server &&
        r.blue_outcome == Outcome::Succeeded) {
      out.push_back({*open, r.step, false});
      open.reset();
    }
    if (!open && r.red.kind == RedKind::Impact && r.red_outcome == Outcome::Succeeded) open = r.step;
  }
  if (open) out.push_back({*open, log.steps.empty() ? *open : log.steps.back().step, true});
  return out;
}

// Mean of (end - start) over completed recoveries; nullopt when none.
inline std::optional<double> recovery_time(const std::vector<Disruption>& ds) {
  double sum = 0.0;
  int n = 0;
  for (const auto& d : ds) {
    if (d.censored) continue;
    sum += d.end - d.start;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

inline std::optional<double> recovery_time(const EpisodeLog& log) { return recovery_time(disruptions(log)); }

// ---------------------------------------------------------------------------
// Proportions

inline std::map<BlueKind, double> action_proportions(const EpisodeLog& log) {
  if (log.episode_length < 1) throw Error(ErrorCode::InvalidArgument, "episode length must be >= 1");
  std::map<BlueKind, double> out;
  for (BlueKind k : kAllBlueKinds) out[k] = 0.0;
  for (const auto& r : log.steps) out[r.blue.kind] += 1.0;
  for (auto& [k, v] : out) v /= log.episode_length;
  return out;
}

using TargetDistribution = std::map<std::string, double>;

// For each step, the share of logs whose red action aimed at each target.
inline std::vector<TargetDistribution> target_proportions(const std::vector<EpisodeLog>& logs) {
  if (logs.empty()) throw Error(ErrorCode::InvalidArgument, "target_proportions needs at least one log");
  const std::size_t steps = logs.front().steps.size();
  for (const auto& log : logs)
    if (log.steps.size() != steps) throw Error(ErrorCode::LengthMismatch, "logs differ in length");
  std::vector<TargetDistribution> out(steps);
  const double weight = 1.0 / static_cast<double>(logs.size());
  for (const auto& log : logs)
    for (std::size_t i = 0; i < steps; ++i) out[i][log.steps[i].red.target] += weight;
  return out;
}

// ---------------------------------------------------------------------------
// Strategy coding

enum class Strategy { Reactive, Proactive, Passive, Uncategorized };

inline constexpr Strategy kAllStrategies[] = {Strategy::Reactive, Strategy::Proactive, Strategy::Passive,
                                              Strategy::Uncategorized};

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Reactive: return "Reactive";
    case Strategy::Proactive: return "Proactive";
    case Strategy::Passive: return "Passive";
    case Strategy::Uncategorized: return "Uncategorized";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view text) {
  for (Strategy s : kAllStrategies)
    if (to_string(s) == text) return s;
  return std::nullopt;
}

// Which heuristic fired, in priority order.
enum class StrategyRule { Observe = 1, Recover = 2, Block = 3, Prevent = 4, Repeat = 5, None = 6 };

constexpr std::string_view to_string(StrategyRule r) {
  switch (r) {
    case StrategyRule::Observe: return "observe";
    case StrategyRule::Recover: return "recover";
    case StrategyRule::Block: return "block";
    case StrategyRule::Prevent: return "prevent";
    case StrategyRule::Repeat: return "repeat";
    case StrategyRule::None: return "none";
  }
  return "?";
}

inline std::optional<StrategyRule> parse_strategy_rule(std::string_view text) {
  for (auto r : {StrategyRule::Observe, StrategyRule::Recover, StrategyRule::Block, StrategyRule::Prevent,
                 StrategyRule::Repeat, StrategyRule::None})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

struct StrategyLabel {
  Strategy label = Strategy::Uncategorized;
  StrategyRule rule = StrategyRule::None;

  bool operator==(const StrategyLabel&) const = default;
};

// One label per step, first matching rule wins:
//   1 Passive       Monitor or Analyze.
//   2 Reactive      successful Restore of a host that was at AdminAccess or
//                   Impacted before the step.
//   3 Proactive     Remove/Restore of the operational server that makes red's
//                   first Impact attempt of the current occupation fail.
//   4 Proactive     successful Remove/Restore of a host at UserAccess.
//   5 Proactive     same kind and target as an earlier rule 3/4 action.
//   6 Uncategorized everything else.
// Pre-step truth comes from the previous record's snapshot.
inline std::vector<StrategyLabel> code_strategies(const EpisodeLog& log) {
  std::vector<StrategyLabel> out;
  out.reserve(log.steps.size());
  const std::size_t op = log.host_index(log.operational_server);
  std::vector<BlueAction> proactive_actions;
  bool impact_tried_this_occupation = false;

  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const StepRecord& r = log.steps[i];
    const std::vector<CompromiseLevel> pre = log.truth_before(i);
    const bool op_occupied = op < pre.size() && pre[op] != CompromiseLevel::Clean;
    if (!op_occupied) impact_tried_this_occupation = false;
    const bool first_impact = r.red.kind == RedKind::Impact && op_occupied && !impact_tried_this_occupation;

    const bool touches = r.blue.kind == BlueKind::Remove || r.blue.kind == BlueKind::Restore;
    const std::size_t target = r.blue.target ? log.host_index(*r.blue.target) : log.hosts.size();
    const CompromiseLevel pre_target = target < pre.size() ? pre[target] : CompromiseLevel::Clean;
    const bool succeeded = r.blue_outcome == Outcome::Succeeded;

    StrategyLabel label;
    if (r.blue.kind == BlueKind::Monitor || r.blue.kind == BlueKind::Analyze) {
      label = {Strategy::Passive, StrategyRule::Observe};
    } else if (r.blue.kind == BlueKind::Restore && succeeded && pre_target >= CompromiseLevel::AdminAccess) {
      label = {Strategy::Reactive, StrategyRule::Recover};
    } else if (touches && succeeded && target == op && first_impact && r.red_outcome == Outcome::Failed) {
      label = {Strategy::Proactive, StrategyRule::Block};
    } else if (touches && succeeded && pre_target == CompromiseLevel::UserAccess) {
      label = {Strategy::Proactive, StrategyRule::Prevent};
    } else if (std::find(proactive_actions.begin(), proactive_actions.end(), r.blue) != proactive_actions.end()) {
      label = {Strategy::Proactive, StrategyRule::Repeat};
    }
    if (label.rule == StrategyRule::Block || label.rule == StrategyRule::Prevent) proactive_actions.push_back(r.blue);
    if (r.red.kind == RedKind::Impact && op_occupied) impact_tried_this_occupation = true;
    out.push_back(label);
  }
  return out;
}

inline std::map<Strategy, double> strategy_proportions(const std::vector<StrategyLabel>& labels) {
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "strategy_proportions needs at least one label");
  std::map<Strategy, double> out;
  for (Strategy s : kAllStrategies) out[s] = 0.0;
  for (const auto& l : labels) out[l.label] += 1.0;
  for (auto& [s, v] : out) v /= static_cast<double>(labels.size());
  return out;
}

// ---------------------------------------------------------------------------
// Correlation and payout

namespace detail {

// 1-based ranks; ties share the average of the ranks they span.
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Spearman's rho as the Pearson correlation of average ranks. nullopt when
// either side has zero rank variance.
inline std::optional<double> spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::LengthMismatch, "spearman: inputs differ in length");
  if (xs.size() < 3) throw Error(ErrorCode::InvalidArgument, "spearman: need at least 3 pairs");
  const auto rx = detail::average_ranks(xs);
  const auto ry = detail::average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline constexpr int kMaxSessionLoss = 1120;  // 7 episodes x 160

// (total_loss + 1120) * 0.005 dollars, floored at zero, in whole cents.
inline long bonus_cents(int total_loss) {
  if (total_loss > 0 || total_loss < -kMaxSessionLoss)
    throw Error(ErrorCode::InvalidArgument, "total loss must lie in [-1120, 0], got " + std::to_string(total_loss));
  // 0.005 $/point is half a cent per point.
  const long half_cents = static_cast<long>(total_loss) + kMaxSessionLoss;
  return std::max(0L, (half_cents + 1) / 2);
}

inline double bonus_payment(int total_loss) { return static_cast<double>(bonus_cents(total_loss)) / 100.0; }

inline std::string format_dollars(long cents) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%ld.%02ld", cents / 100, cents % 100);
  return buf;
}

// ---------------------------------------------------------------------------
// Reports

struct EpisodeMetrics {
  int log_id = 0;  // position in the input list, 1-based
  int episode = 0;
  Doctrine doctrine = Doctrine::Beeline;
  std::string policy;
  int loss = 0;
  std::vector<Disruption> disruptions;
  std::optional<double> recovery_time;
  std::map<BlueKind, double> actions;
  std::vector<StrategyLabel> labels;
  std::map<Strategy, double> strategies;
};

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for n < 2
  std::size_t n = 0;
};

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

struct DoctrineAggregate {
  Summary loss;
  Summary disruptions;
  Summary recovery_time;  // over episodes with a completed recovery
  std::map<BlueKind, Summary> actions;
  std::map<Strategy, Summary> strategies;
  std::vector<TargetDistribution> targets;  // empty when lengths differ
};

struct MetricsReport {
  std::vector<EpisodeMetrics> episodes;
  std::map<Doctrine, DoctrineAggregate> by_doctrine;
};

inline EpisodeMetrics episode_metrics(const EpisodeLog& log, int log_id = 1) {
  EpisodeMetrics m;
  m.log_id = log_id;
  m.episode = log.episode_index;
  m.doctrine = log.doctrine;
  m.policy = log.policy;
  m.loss = episode_loss(log);
  m.disruptions = disruptions(log);
  m.recovery_time = recovery_time(m.disruptions);
  m.actions = action_proportions(log);
  m.labels = code_strategies(log);
  if (!m.labels.empty()) m.strategies = strategy_proportions(m.labels);
  return m;
}

inline MetricsReport compute_metrics(const std::vector<EpisodeLog>& logs) {
  MetricsReport rep;
  std::map<Doctrine, std::vector<const EpisodeLog*>> groups;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    rep.episodes.push_back(episode_metrics(logs[i], static_cast<int>(i) + 1));
    groups[logs[i].doctrine].push_back(&logs[i]);
  }
  for (const auto& [doctrine, members] : groups) {
    DoctrineAggregate agg;
    std::vector<double> loss, count, recovery;
    std::map<BlueKind, std::vector<double>> actions;
    std::map<Strategy, std::vector<double>> strategies;
    std::vector<EpisodeLog> copies;
    for (const auto& m : rep.episodes) {
      if (m.doctrine != doctrine) continue;
      loss.push_back(m.loss);
      count.push_back(static_cast<double>(m.disruptions.size()));
      if (m.recovery_time) recovery.push_back(*m.recovery_time);
      for (const auto& [k, v] : m.actions) actions[k].push_back(v);
      for (const auto& [k, v] : m.strategies) strategies[k].push_back(v);
    }
    agg.loss = summarize(loss);
    agg.disruptions = summarize(count);
    agg.recovery_time = summarize(recovery);
    for (const auto& [k, v] : actions) agg.actions[k] = summarize(v);
    for (const auto& [k, v] : strategies) agg.strategies[k] = summarize(v);
    for (const EpisodeLog* l : members) copies.push_back(*l);
    try {
      agg.targets = target_proportions(copies);
    } catch (const Error&) {
      agg.targets.clear();
    }
    rep.by_doctrine[doctrine] = std::move(agg);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// CSV export / import. Schema: docs/csv_schema.md.

struct EpisodeRow {
  int log = 0;
  int episode = 0;
  std::string doctrine;
  std::string policy;
  int loss = 0;
  int disruptions = 0;
  std::optional<double> recovery_time;
  double analyze = 0, monitor = 0, remove = 0, restore = 0;
  double reactive = 0, proactive = 0, passive = 0, uncategorized = 0;

  bool operator==(const EpisodeRow&) const = default;
};

// Shared by the three per-step tables; `kind`, `target`, `outcome` hold
// the blue action (actions.csv), the red action (targets.csv), or the
// strategy label, rule and an empty outcome (strategies.csv).
struct StepRow {
  int log = 0;
  int episode = 0;
  std::string doctrine;
  int step = 0;
  std::string kind;
  std::string target;
  std::string outcome;

  bool operator==(const StepRow&) const = default;
};

struct CsvTables {
  std::vector<EpisodeRow> episodes;
  std::vector<StepRow> actions;
  std::vector<StepRow> targets;
  std::vector<StepRow> strategies;

  bool operator==(const CsvTables&) const = default;
};

inline constexpr std::string_view kEpisodesHeader =
    "log,episode,doctrine,policy,loss,disruptions,recovery_time,prop_analyze,prop_monitor,prop_remove,prop_restore,"
    "prop_reactive,prop_proactive,prop_passive,prop_uncategorized";
inline constexpr std::string_view kActionsHeader = "log,episode,doctrine,step,blue_kind,blue_target,blue_outcome";
inline constexpr std::string_view kTargetsHeader = "log,episode,doctrine,step,red_kind,red_target,red_outcome";
inline constexpr std::string_view kStrategiesHeader = "log,episode,doctrine,step,label,rule,";

inline CsvTables build_tables(const std::vector<EpisodeLog>& logs) {
  if (logs.empty()) throw Error(ErrorCode::InvalidArgument, "no logs to export");
  CsvTables t;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const EpisodeLog& log = logs[i];
    const int id = static_cast<int>(i) + 1;
    const EpisodeMetrics m = episode_metrics(log, id);
    const std::string doctrine(to_string(log.doctrine));
    auto strat = [&](Strategy s) { return m.strategies.count(s) ? m.strategies.at(s) : 0.0; };
    t.episodes.push_back({id, log.episode_index, doctrine, log.policy, m.loss,
                          static_cast<int>(m.disruptions.size()), m.recovery_time,
                          m.actions.at(BlueKind::Analyze), m.actions.at(BlueKind::Monitor),
                          m.actions.at(BlueKind::Remove), m.actions.at(BlueKind::Restore),
                          strat(Strategy::Reactive), strat(Strategy::Proactive), strat(Strategy::Passive),
                          strat(Strategy::Uncategorized)});
    for (std::size_t s = 0; s < log.steps.size(); ++s) {
      const StepRecord& r = log.steps[s];
      t.actions.push_back({id, log.episode_index, doctrine, r.step, std::string(to_string(r.blue.kind)),
                           r.blue.target.value_or(""), std::string(to_string(r.blue_outcome))});
      t.targets.push_back({id, log.episode_index, doctrine, r.step, std::string(to_string(r.red.kind)), r.red.target,
                           std::string(to_string(r.red_outcome))});
      t.strategies.push_back({id, log.episode_index, doctrine, r.step, std::string(to_string(m.labels[s].label)),
                              std::string(to_string(m.labels[s].rule)), ""});
    }
  }
  return t;
}

namespace detail {

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string step_row_line(const StepRow& r) {
  return std::to_string(r.log) + "," + std::to_string(r.episode) + "," + r.doctrine + "," + std::to_string(r.step) +
         "," + r.kind + "," + r.target + "," + r.outcome;
}

inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::string_view header,
                                                      std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Storage, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) throw Error(ErrorCode::ParseError, path.string() + ": unexpected header");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != columns) throw Error(ErrorCode::ParseError, path.string() + ": wrong column count");
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline std::vector<StepRow> read_step_rows(const std::filesystem::path& path, std::string_view header) {
  std::vector<StepRow> out;
  for (auto& c : read_csv(path, header, 7))
    out.push_back({parse_int(c[0]), parse_int(c[1]), c[2], parse_int(c[3]), c[4], c[5], c[6]});
  return out;
}

}  // namespace detail

inline const char* const kCsvFiles[] = {"episodes.csv", "actions.csv", "targets.csv", "strategies.csv"};

inline void write_tables(const CsvTables& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw Error(ErrorCode::Storage, "cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("episodes.csv");
    out << kEpisodesHeader << "\n";
    for (const auto& r : t.episodes) {
      using detail::format_double;
      out << r.log << "," << r.episode << "," << r.doctrine << "," << r.policy << "," << r.loss << ","
          << r.disruptions << "," << (r.recovery_time ? format_double(*r.recovery_time) : "") << ","
          << format_double(r.analyze) << "," << format_double(r.monitor) << "," << format_double(r.remove) << ","
          << format_double(r.restore) << "," << format_double(r.reactive) << "," << format_double(r.proactive) << ","
          << format_double(r.passive) << "," << format_double(r.uncategorized) << "\n";
    }
  }
  auto dump = [&](const char* name, std::string_view header, const std::vector<StepRow>& rows) {
    auto out = open(name);
    out << header << "\n";
    for (const auto& r : rows) out << detail::step_row_line(r) << "\n";
  };
  dump("actions.csv", kActionsHeader, t.actions);
  dump("targets.csv", kTargetsHeader, t.targets);
  dump("strategies.csv", kStrategiesHeader, t.strategies);
}

inline void export_csv(const std::vector<EpisodeLog>& logs, const std::filesystem::path& dir) {
  write_tables(build_tables(logs), dir);
}

inline CsvTables import_csv(const std::filesystem::path& dir) {
  using namespace detail;
  CsvTables t;
  for (auto& c : read_csv(dir / "episodes.csv", kEpisodesHeader, 15)) {
    EpisodeRow r;
    r.log = parse_int(c[0]);
    r.episode = parse_int(c[1]);
    r.doctrine = c[2];
    r.policy = c[3];
    r.loss = parse_int(c[4]);
    r.disruptions = parse_int(c[5]);
    if (!c[6].empty()) r.recovery_time = parse_double(c[6]);
    r.analyze = parse_double(c[7]);
    r.monitor = parse_double(c[8]);
    r.remove = parse_double(c[9]);
    r.restore = parse_double(c[10]);
    r.reactive = parse_double(c[11]);
    r.proactive = parse_double(c[12]);
    r.passive = parse_double(c[13]);
    r.uncategorized = parse_double(c[14]);
    t.episodes.push_back(std::move(r));
  }
  t.actions = read_step_rows(dir / "actions.csv", kActionsHeader);
  t.targets = read_step_rows(dir / "targets.csv", kTargetsHeader);
  t.strategies = read_step_rows(dir / "strategies.csv", kStrategiesHeader);
  return t;
}

}  // namespace idg
