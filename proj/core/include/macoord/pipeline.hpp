#pragma once

#include <memory>
#include <vector>

#include "macoord/ltl_translate.hpp"
#include "macoord/plan.hpp"
#include "macoord/scenario.hpp"
#include "macoord/unrolled.hpp"

namespace macoord {

// Everything derived for one agent between scenario and execution.  The
// travel oracle is owned here because the transition system costs, the
// meeting games and the executor all have to draw from the same cache.
struct PlannedAgent {
  AgentSpec spec;
  std::unique_ptr<TravelOracle> travel;
  TransitionSystem ts;
  Formula task;  // recurring goal body, as written in the scenario
  Formula goal;  // always-eventually wrapper that actually gets planned
  Nba nba;
  Product product;
  Plan plan;
  UnrolledPlan pattern;
};

PlannedAgent plan_agent(const Scenario& sc, const AgentSpec& spec);

// Plans every agent (in parallel; agents are independent).  Failures
// surface in agent id order regardless of scheduling.
std::vector<PlannedAgent> plan_agents(const Scenario& sc);

}  // namespace macoord
