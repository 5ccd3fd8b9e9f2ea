#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macoord/agent_spec.hpp"
#include "macoord/consensus.hpp"
#include "macoord/workspace.hpp"

namespace macoord {

struct CommParams {
  double range = 1.0;  // meters
  double Tc = 60.0;    // rendezvous period, seconds
  double Dc = 5.0;     // rendezvous duration, seconds
};

struct GameParams {
  int max_iters = 500;
};

enum class BaselineKind { None, Static, PairWise, AllTime };

std::string baseline_name(BaselineKind k);
BaselineKind parse_baseline(const std::string& name);

struct Scenario {
  Workspace ws;
  MotionParams motion;
  CommParams comm;
  GameParams game;
  int rounds = 1;
  std::uint64_t seed = 0;
  BaselineKind baseline = BaselineKind::None;
  SignalSpec signal;
  std::vector<AgentSpec> agents;
};

// Parses and validates a scenario document.  Malformed JSON raises
// ParseError with the failing byte offset; schema or consistency problems
// raise ValidationError.  Validation covers window sanity (0 < Dc < Tc),
// region placement, task syntax (and that tasks avoid [] with negation only
// on atoms), and that every start and region cell shares one free connected
// component, without which no common meeting point could exist.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// Inverse of load_scenario up to field ordering and number formatting.
std::string scenario_json(const Scenario& sc);

}  // namespace macoord
