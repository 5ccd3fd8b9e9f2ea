#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "macoord/executor.hpp"
#include "macoord/pipeline.hpp"
#include "macoord/scenario.hpp"

namespace macoord::testing {

// Shape knobs for generated scenarios.  All timings stay dyadic (cell and
// speed choices are powers of two, the angular speed is pi/2 so quarter and
// half turns cost exactly 1 s and 2 s), which makes every leg duration and
// every cost sum exactly representable; equality checks against oracles can
// then use == instead of tolerances.
struct ScenarioKnobs {
  int min_agents = 1;
  int max_agents = 3;
  int min_side = 4;
  int max_side = 8;
  double obstacle_density = 0.10;
};

// Deterministic random scenario; throws after `tries` rejected layouts
// (disconnected maps are rejected by the loader and retried internally).
Scenario random_scenario(std::uint64_t seed, const ScenarioKnobs& knobs = {},
                         int tries = 200);

// A planned scenario with its round-0 meeting context, heap-held so the
// context's workspace and travel pointers stay put.
struct SmallInstance {
  Scenario sc;
  std::vector<PlannedAgent> agents;
  GameContext ctx;  // round-0 window [0, Tc)
};

// Generates, plans and projects until the round-0 meeting is feasible
// (initial_strategy succeeds).  Deterministic in `seed`.
std::unique_ptr<SmallInstance> random_instance(std::uint64_t seed,
                                               const ScenarioKnobs& knobs = {},
                                               int tries = 200);

}  // namespace macoord::testing
