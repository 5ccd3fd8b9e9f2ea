#pragma once

#include <string>
#include <vector>

#include "macoord/agent_spec.hpp"
#include "macoord/ltl.hpp"
#include "macoord/travel.hpp"
#include "macoord/workspace.hpp"

namespace macoord {

// State of the motion-and-action model: being at a region having just
// completed an action (action 0 is idle).  region < 0 marks the synthetic
// start state used when the agent does not start on a region cell.
struct TsState {
  int region = -1;
  int action = kIdleAction;
  Cell cell;
};

struct TsEdge {
  int target = 0;
  double cost = 0.0;
};

// Weighted transition system of one agent.
//
// States are all (region, action) pairs; moving between regions lands in the
// idle action, actions are taken as self-loop style switches at a fixed
// region, and an edge never maps a state to itself.  Edge costs combine
// travel time (canonical headings, see TravelOracle) and action durations.
// A state is labeled with its "region.action" proposition unless the action
// is idle.
struct TransitionSystem {
  // Region names in sorted order; cells[i] is the cell of regions[i].
  std::vector<std::string> regions;
  std::vector<Cell> region_cells;
  // Action names, index 0 is "idle"; durations[0] == 0.
  std::vector<std::string> actions;
  std::vector<double> durations;

  Alphabet alphabet;
  std::vector<TsState> states;
  std::vector<SymbolSet> labels;
  std::vector<std::vector<TsEdge>> edges;
  int initial = 0;

  int state_index(int region, int action) const;
};

// Builds the transition system for one agent.  Throws ValidationError when a
// referenced region is unknown or duplicated, and InfeasibleError when some
// region cannot be reached from the start cell.
TransitionSystem build_transition_system(const Workspace& ws,
                                         const AgentSpec& spec,
                                         TravelOracle& travel);

}  // namespace macoord
