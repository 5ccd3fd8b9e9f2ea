#pragma once

#include "macoord/executor.hpp"

namespace macoord {

// Alternative coordination schemes sharing the event interpreter with the
// periodic-rendezvous scheme, so their outputs compare field for field.
// All of them assume rounds >= 1; run_scenario falls back to the plain
// plan-following run when rounds == 0.

// Fixed rendezvous: every round each agent detours to its own start cell,
// with divert steps chosen by the same schedule sweep the game seeds from.
// No meeting-point negotiation, so whether the team actually connects
// depends entirely on how the start cells lie.
RunResult run_static(const Scenario& sc, std::vector<PlannedAgent>& agents,
                     const RunOptions& opt = {});

// Chained pair meetings: pairs (0,1), (1,2), ..., (n-2,n-1) each hold their
// own two-player rendezvous game per round, with consecutive pairs offset
// by half a period so shared members alternate between their two partners.
// Meetings are processed in (window start, pair) order and each plans from
// the realized state its members are in by then.  Round records carry the
// pair in `participants`; with two agents the single pair makes this
// coincide with the main scheme.
RunResult run_pairwise(const Scenario& sc, std::vector<PlannedAgent>& agents,
                       const RunOptions& opt = {});

// Convoy: the team first gathers at agent 0's start cell, then moves as one
// body.  Agents take turns advancing their own plan by one costly step
// (free steps ride along) while the rest travel in lockstep, and estimates
// average continuously on the sampling grid.  Runs until rounds * Tc.
RunResult run_alltime(const Scenario& sc, std::vector<PlannedAgent>& agents,
                      const RunOptions& opt = {});

// Dispatch on sc.baseline (None runs the periodic-rendezvous scheme).
RunResult run_scenario(const Scenario& sc, std::vector<PlannedAgent>& agents,
                       const RunOptions& opt = {});

}  // namespace macoord
