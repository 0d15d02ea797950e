// Plays one 25-step episode against Beeline with a hand-written defender,
// then prints the loss and the strategy label of each step.

#include <iostream>

#include "idg/analytics.hpp"
#include "idg/harness.hpp"

int main() {
  auto scenario = std::make_shared<const idg::Scenario>(idg::default_scenario());
  idg::GameState st = idg::init_episode(scenario, idg::Doctrine::Beeline, 25);
  idg::EpisodeLog log = idg::make_log_header(*scenario, idg::Doctrine::Beeline, 1, 25, "sample");

  while (!st.episode_over) {
    // Restore anything showing admin access, otherwise keep watching.
    idg::BlueAction action = idg::BlueAction::monitor();
    for (const auto& row : idg::observe(st).rows)
      if (row.compromise >= idg::CompromiseLevel::AdminAccess) action = idg::BlueAction::restore(row.hostname);
    idg::StepResult r = idg::resolve_step(st, action);
    log.steps.push_back(idg::make_record(r, st));
  }

  const auto labels = idg::code_strategies(log);
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const auto& rec = log.steps[i];
    std::cout << rec.step << "\t" << rec.blue.to_string() << "\t" << rec.red.to_string() << "\t"
              << idg::to_string(labels[i].label) << "\n";
  }
  std::cout << "loss " << idg::episode_loss(log) << "\n";
}
