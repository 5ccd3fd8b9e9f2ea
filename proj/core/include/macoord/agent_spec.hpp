#pragma once

#include <map>
#include <string>
#include <vector>

#include "macoord/cell.hpp"
#include "macoord/ltl.hpp"

namespace macoord {

// One locally executable action: a name and a fixed duration in seconds.
struct ActionSpec {
  std::string name;
  double duration = 0.0;
};

// Static description of a single agent: where it starts, which regions it
// knows about, which actions it can perform, and its task formula text.
struct AgentSpec {
  int id = 0;
  Cell start;
  double heading = 0.0;
  // Region names this agent works with, in declaration order.
  std::vector<std::string> regions;
  std::vector<ActionSpec> actions;
  // Local task over "region.action" propositions; the recurring goal is
  // formed from it internally.
  std::string task;
};

// Proposition name for performing `action` at `region`.
inline std::string prop_name(const std::string& region,
                             const std::string& action) {
  return region + "." + action;
}

// Alphabet of an agent: every region x action pair, regions in sorted name
// order, actions in declaration order with the implicit "idle" action first.
// Idle pairs never appear as labels but are part of the alphabet so that
// symbol sets from different contexts stay index compatible.
Alphabet agent_alphabet(const AgentSpec& spec);

// Index of the idle action inside the per-agent action table used by the
// transition system (slot 0; declared actions follow in order).
inline constexpr int kIdleAction = 0;

}  // namespace macoord
