#pragma once

#include <string>
#include <vector>

#include "macoord/product.hpp"

namespace macoord {

struct PlanStep {
  int product_state = -1;
  int ts_state = 0;
  int region = -1;  // -1 for the synthetic start state
  int action = 0;   // 0 = idle
  Cell cell;
  double cost = 0.0;  // edge cost from the previous step; 0 for the first
};

// Prefix-suffix plan over the product graph.  prefix starts at the initial
// state and ends at the anchor (an accepting state); cycle lists the states
// after the anchor and returns to it, so the infinite behavior is
// prefix, cycle, cycle, ...  cycle_cost is the duration of one loop and is
// the quantity the synthesis minimizes; prefix_cost breaks ties.  Both are
// accumulated in path order.
struct Plan {
  std::vector<PlanStep> prefix;
  std::vector<PlanStep> cycle;
  double prefix_cost = 0.0;
  double cycle_cost = 0.0;
};

// Minimal recurring-visit plan: among accepting states, pick the cheapest
// cycle through one (ties: cheaper prefix, then lower state id; the closing
// edge with the lower source id on equal cycle cost).  Throws
// InfeasibleError when no accepting cycle is reachable or the best cycle
// has (numerically) zero duration.  agent names the owner in errors.
Plan synthesize_plan(const TransitionSystem& ts, const Product& product,
                     int agent = -1);

// Independent acceptance check: the label word induced by the plan, read as
// an infinite lasso, is accepted by the automaton.
bool plan_satisfies(const Plan& plan, const TransitionSystem& ts,
                    const Nba& nba);

// Pretty JSON rendering of a plan with region/action names resolved.
std::string plan_json(const Plan& plan, const TransitionSystem& ts);

}  // namespace macoord
