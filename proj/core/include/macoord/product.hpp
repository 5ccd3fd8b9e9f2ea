#pragma once

#include <vector>

#include "macoord/nba.hpp"
#include "macoord/transition_system.hpp"

namespace macoord {

struct ProductState {
  int ts_state = 0;
  int nba_state = 0;
};

struct ProductEdge {
  int target = 0;
  double cost = 0.0;
};

// Weighted product of a transition system and an automaton, restricted to
// the part reachable from the initial states.  A transition synchronizes on
// the label of the transition system state being entered, so an edge
// (s,q) -> (s',q') exists iff s -> s' and the automaton moves q -> q' on
// the label of s'.  Edge cost is the transition system edge cost.
struct Product {
  std::vector<ProductState> states;
  std::vector<std::vector<ProductEdge>> edges;
  std::vector<int> initial;
  std::vector<bool> accepting;
};

Product build_product(const TransitionSystem& ts, const Nba& nba);

}  // namespace macoord
