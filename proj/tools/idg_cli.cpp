// idg: command-line front end for the defense game.
//
//   idg simulate --adversary beeline --blue greedy --episodes 10 --out logs/
//   idg calibrate
//   idg best-response --horizon 6 --adversary meander
//   idg analyze logs/ --metrics --strategies --targets --csv out/
//   idg serve --port 8080 --logs sessions/

#include <atomic>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "idg/analytics.hpp"
#include "idg/harness.hpp"
#include "idg/http_api.hpp"
#include "idg/session.hpp"

namespace {

using namespace idg;

std::shared_ptr<const Scenario> load(const std::string& path) {
  if (path.empty()) return std::make_shared<const Scenario>(default_scenario());
  return std::make_shared<const Scenario>(load_scenario(read_text_file(path)));
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_summary(const Summary& s) {
  if (s.n == 0) return "n/a";
  return fmt(s.mean) + " (sd " + fmt(s.sd) + ", n " + std::to_string(s.n) + ")";
}

int cmd_simulate(const std::string& scenario_path, const std::string& adversary, const std::string& blue, int episodes,
                 int steps, const std::string& out) {
  auto scenario = load(scenario_path);
  const Doctrine d = parse_doctrine(adversary);
  const PolicySpec spec = parse_policy(blue);
  const int length = steps > 0 ? steps : scenario->episode_length;
  const auto logs = run_batch(scenario, d, spec, episodes, length);
  if (!out.empty()) write_logs(out, logs);
  std::vector<double> losses;
  for (const auto& l : logs) {
    losses.push_back(episode_loss(l));
    std::cout << "episode " << l.episode_index << "  loss " << episode_loss(l) << "\n";
  }
  const Summary s = summarize(losses);
  std::cout << to_string(d) << " vs " << spec.to_string() << ": mean loss " << fmt(s.mean) << " sd " << fmt(s.sd)
            << " over " << logs.size() << " episodes of " << length << " steps\n";
  if (!out.empty()) std::cout << "logs written to " << out << "\n";
  return 0;
}

int cmd_calibrate(const std::string& scenario_path) {
  const auto rep = calibrate(load(scenario_path));
  std::cout << "Beeline passive loss  " << -rep.beeline_max << " (target -" << CalibrationReport::kBeelineTarget
            << ")\n";
  std::cout << "Meander passive loss  " << -rep.meander_max << " (target -" << CalibrationReport::kMeanderTarget
            << ")\n";
  std::cout << "schedules diverge at step " << rep.divergence_step << " (target "
            << CalibrationReport::kDivergenceTarget << ")\n";
  std::cout << "step  Beeline                      Meander\n";
  for (std::size_t i = 0; i < rep.beeline_schedule.size(); ++i) {
    std::string left = rep.beeline_schedule[i].to_string();
    left.resize(std::max<std::size_t>(left.size(), 28), ' ');
    std::printf("%4zu  %s %s\n", i + 1, left.c_str(),
                i < rep.meander_schedule.size() ? rep.meander_schedule[i].to_string().c_str() : "");
  }
  std::cout << "elapsed " << fmt(rep.elapsed_seconds * 1000.0, 2) << " ms\n";
  std::cout << (rep.pass() ? "calibration OK\n" : "calibration MISMATCH\n");
  return rep.pass() ? 0 : 2;
}

int cmd_best_response(const std::string& scenario_path, const std::string& adversary, int horizon) {
  auto scenario = load(scenario_path);
  const Doctrine d = parse_doctrine(adversary);
  const BestResponse br = exhaustive_best_response(scenario, d, horizon);
  std::cout << "best response vs " << to_string(d) << ", horizon " << horizon << ": loss " << -br.min_loss << " ("
            << br.states_explored << " states)\n";
  for (std::size_t i = 0; i < br.actions.size(); ++i) std::cout << "  " << i + 1 << "  " << br.actions[i].to_string() << "\n";
  return 0;
}

int cmd_analyze(const std::string& dir, bool metrics, bool strategies, bool targets, const std::string& csv) {
  const auto logs = read_logs(dir);
  if (logs.empty()) throw Error(ErrorCode::InvalidArgument, "no episode logs under " + dir);
  if (!metrics && !strategies && !targets && csv.empty()) metrics = true;
  const MetricsReport rep = compute_metrics(logs);

  if (metrics) {
    for (const auto& m : rep.episodes) {
      std::cout << "log " << m.log_id << " episode " << m.episode << " " << to_string(m.doctrine) << " " << m.policy
                << ": loss " << m.loss << ", disruptions " << m.disruptions.size() << ", recovery "
                << (m.recovery_time ? fmt(*m.recovery_time, 2) : "n/a") << "\n";
    }
    for (const auto& [d, agg] : rep.by_doctrine) {
      std::cout << to_string(d) << ": loss " << fmt_summary(agg.loss) << "\n";
      std::cout << "  disruptions " << fmt_summary(agg.disruptions) << "\n";
      std::cout << "  recovery time " << fmt_summary(agg.recovery_time) << "\n";
      for (const auto& [k, s] : agg.actions) std::cout << "  " << to_string(k) << " " << fmt_summary(s) << "\n";
    }
  }
  if (strategies) {
    for (const auto& [d, agg] : rep.by_doctrine) {
      std::cout << to_string(d) << " strategies:\n";
      for (const auto& [k, s] : agg.strategies) std::cout << "  " << to_string(k) << " " << fmt_summary(s) << "\n";
    }
  }
  if (targets) {
    for (const auto& [d, agg] : rep.by_doctrine) {
      std::cout << to_string(d) << " red targets by step:\n";
      if (agg.targets.empty()) std::cout << "  (episode lengths differ)\n";
      for (std::size_t i = 0; i < agg.targets.size(); ++i) {
        std::cout << "  " << i + 1 << ":";
        for (const auto& [t, p] : agg.targets[i]) std::cout << " " << t << "=" << fmt(p, 2);
        std::cout << "\n";
      }
    }
  }
  if (!csv.empty()) {
    export_csv(logs, csv);
    std::cout << "CSV written to " << csv << "\n";
  }
  return 0;
}

std::atomic<httplib::Server*> g_server{nullptr};

int cmd_serve(const std::string& scenario_path, const std::string& host, int port, const std::string& logs,
              const std::string& static_dir) {
  auto scenario = load(scenario_path);
  SessionManager mgr(scenario, logs);
  httplib::Server svr;
  install_routes(svr, mgr, {static_dir});
  g_server = &svr;
  std::signal(SIGINT, [](int) {
    if (auto* s = g_server.load()) s->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (auto* s = g_server.load()) s->stop();
  });
  std::cout << "serving " << scenario->name << " on " << host << ":" << port << ", " << mgr.size()
            << " session(s) recovered from " << logs << std::endl;
  if (!svr.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive defense game: simulation, analysis, and the session service"};
  app.require_subcommand(1);

  std::string scenario;
  std::string adversary = "beeline";

  auto* sim = app.add_subcommand("simulate", "run scripted blue policies against a red doctrine");
  std::string blue = "passive";
  int episodes = 1;
  int steps = 0;
  std::string out;
  sim->add_option("--scenario", scenario, "scenario YAML (default: built-in network)");
  sim->add_option("--adversary", adversary, "beeline | meander");
  sim->add_option("--blue", blue, "passive | monitor-only | cyclic | greedy | random:SEED");
  sim->add_option("--episodes", episodes)->check(CLI::PositiveNumber);
  sim->add_option("--steps", steps, "episode length (default: the scenario's)")->check(CLI::NonNegativeNumber);
  sim->add_option("--out", out, "directory for episode logs");

  auto* cal = app.add_subcommand("calibrate", "passive-defender losses and red schedules for both doctrines");
  cal->add_option("--scenario", scenario);

  auto* br = app.add_subcommand("best-response", "exact minimum loss over all blue sequences");
  int horizon = 6;
  br->add_option("--horizon", horizon)->required()->check(CLI::Range(1, kMaxBestResponseHorizon));
  br->add_option("--adversary", adversary);
  br->add_option("--scenario", scenario);

  auto* an = app.add_subcommand("analyze", "metrics, strategy coding, and CSV export for a log directory");
  std::string dir;
  bool metrics = false, strategies = false, targets = false;
  std::string csv;
  an->add_option("dir", dir)->required();
  an->add_flag("--metrics", metrics);
  an->add_flag("--strategies", strategies);
  an->add_flag("--targets", targets);
  an->add_option("--csv", csv, "write episodes/actions/targets/strategies CSV here");

  auto* sv = app.add_subcommand("serve", "run the session service");
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string logs = "sessions";
  std::string static_dir;
  sv->add_option("--scenario", scenario);
  sv->add_option("--port", port)->check(CLI::Range(1, 65535));
  sv->add_option("--host", host);
  sv->add_option("--logs", logs, "session log directory");
  sv->add_option("--static", static_dir, "serve a console bundle from this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(scenario, adversary, blue, episodes, steps, out);
    if (*cal) return cmd_calibrate(scenario);
    if (*br) return cmd_best_response(scenario, adversary, horizon);
    if (*an) return cmd_analyze(dir, metrics, strategies, targets, csv);
    if (*sv) return cmd_serve(scenario, host, port, logs, static_dir);
  } catch (const idg::Error& e) {
    std::cerr << "error [" << idg::to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
