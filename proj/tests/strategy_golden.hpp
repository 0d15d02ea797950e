#pragma once

// Golden cases for the strategy coder: short constructed logs with the
// expected label and firing rule for every step.

#include <string>
#include <vector>

#include "support.hpp"

namespace idg::test {

struct GoldenCase {
  std::string name;
  EpisodeLog log;
  std::vector<StrategyRule> rules;
};

inline Strategy strategy_of(StrategyRule r) {
  switch (r) {
    case StrategyRule::Observe: return Strategy::Passive;
    case StrategyRule::Recover: return Strategy::Reactive;
    case StrategyRule::Block:
    case StrategyRule::Prevent:
    case StrategyRule::Repeat: return Strategy::Proactive;
    case StrategyRule::None: return Strategy::Uncategorized;
  }
  return Strategy::Uncategorized;
}

inline std::vector<GoldenCase> strategy_golden_cases() {
  using B = BlueAction;
  using K = RedKind;
  using O = Outcome;
  using C = CompromiseLevel;
  using R = StrategyRule;
  const RedAction idle{K::DiscoverSubnet, "Subnet1"};
  std::vector<GoldenCase> cases;

  cases.push_back({"monitor and analyze are passive",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::analyze("User1"), O::Succeeded, {K::Escalate, "User1"}, O::Succeeded, {{"User1", C::AdminAccess}})
                       .step(B::analyze("Op_Server0"), O::Succeeded, idle, O::Succeeded)
                       .build(),
                   {R::Observe, R::Observe, R::Observe}});

  cases.push_back({"restoring an admin host is reactive",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::monitor(), O::Succeeded, {K::Escalate, "User1"}, O::Succeeded, {{"User1", C::AdminAccess}})
                       .step(B::restore("User1"), O::Succeeded, {K::DiscoverServices, "Enterprise1"}, O::Succeeded, {{"User1", C::Clean}})
                       .build(),
                   {R::Observe, R::Observe, R::Recover}});

  cases.push_back({"restoring the impacted server is reactive",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Escalate, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::AdminAccess}})
                       .step(B::monitor(), O::Succeeded, {K::Impact, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::Impacted}})
                       .step(B::restore("Op_Server0"), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed, {{"Op_Server0", C::Clean}})
                       .build(),
                   {R::Observe, R::Observe, R::Recover}});

  // Rule 2 outranks rule 3: the restore also stops a first Impact attempt.
  cases.push_back({"reactive outranks block",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Escalate, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::AdminAccess}})
                       .step(B::restore("Op_Server0"), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed, {{"Op_Server0", C::Clean}})
                       .build(),
                   {R::Observe, R::Recover}});

  // Rule 3 outranks rule 4: the server was only at user level.
  cases.push_back({"blocking a first impact attempt",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::UserAccess}})
                       .step(B::remove("Op_Server0"), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed, {{"Op_Server0", C::Clean}})
                       .build(),
                   {R::Observe, R::Block}});

  cases.push_back({"only the first impact attempt of an occupation is blocked",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::UserAccess}})
                       .step(B::monitor(), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed)
                       .step(B::remove("Op_Server0"), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed, {{"Op_Server0", C::Clean}})
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "Op_Server0"}, O::Succeeded, {{"Op_Server0", C::UserAccess}})
                       .step(B::remove("Op_Server0"), O::Succeeded, {K::Impact, "Op_Server0"}, O::Failed, {{"Op_Server0", C::Clean}})
                       .build(),
                   {R::Observe, R::Observe, R::Prevent, R::Observe, R::Block}});

  cases.push_back({"clearing a user-level foothold prevents",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::remove("User1"), O::Succeeded, {K::Escalate, "User1"}, O::Failed, {{"User1", C::Clean}})
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User2"}, O::Succeeded, {{"User2", C::UserAccess}})
                       .step(B::restore("User2"), O::Succeeded, {K::Escalate, "User2"}, O::Failed, {{"User2", C::Clean}})
                       .build(),
                   {R::Observe, R::Prevent, R::Observe, R::Prevent}});

  // Rule 4 outranks rule 5; a repeat needs the same kind and target.
  cases.push_back({"repeating a proactive action",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::remove("User1"), O::Succeeded, {K::Escalate, "User1"}, O::Failed, {{"User1", C::Clean}})
                       .step(B::remove("User1"), O::NoEffect, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::restore("User1"), O::Succeeded, {K::Escalate, "User1"}, O::Failed, {{"User1", C::Clean}})
                       .step(B::restore("User1"), O::NoEffect, idle, O::Succeeded)
                       .step(B::remove("User2"), O::NoEffect, idle, O::Succeeded)
                       .build(),
                   {R::Observe, R::Prevent, R::Repeat, R::Prevent, R::Repeat, R::None}});

  cases.push_back({"reactive actions are not repeated",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::monitor(), O::Succeeded, {K::Escalate, "User1"}, O::Succeeded, {{"User1", C::AdminAccess}})
                       .step(B::restore("User1"), O::Succeeded, idle, O::Succeeded, {{"User1", C::Clean}})
                       .step(B::restore("User1"), O::NoEffect, idle, O::Succeeded)
                       .build(),
                   {R::Observe, R::Observe, R::Recover, R::None}});

  cases.push_back({"failed or idle removals are uncategorized",
                   LogBuilder()
                       .step(B::monitor(), O::Succeeded, {K::Exploit, "User1"}, O::Succeeded, {{"User1", C::UserAccess}})
                       .step(B::monitor(), O::Succeeded, {K::Escalate, "User1"}, O::Succeeded, {{"User1", C::AdminAccess}})
                       .step(B::remove("User1"), O::Failed, idle, O::Succeeded)
                       .step(B::remove("User2"), O::NoEffect, idle, O::Succeeded)
                       .step(B::restore("Defender"), O::NoEffect, idle, O::Succeeded)
                       .build(),
                   {R::Observe, R::Observe, R::None, R::None, R::None}});

  for (auto& c : cases) c.log.episode_length = static_cast<int>(c.log.steps.size());
  return cases;
}

}  // namespace idg::test
