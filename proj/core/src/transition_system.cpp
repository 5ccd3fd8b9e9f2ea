#include "macoord/transition_system.hpp"

#include <algorithm>
#include <set>

#include "macoord/errors.hpp"

namespace macoord {

Alphabet agent_alphabet(const AgentSpec& spec) {
  std::vector<std::string> regions = spec.regions;
  std::sort(regions.begin(), regions.end());
  Alphabet out;
  for (const std::string& r : regions) {
    out.push_back(prop_name(r, "idle"));
    for (const ActionSpec& a : spec.actions) out.push_back(prop_name(r, a.name));
  }
  if (out.size() > kMaxAlphabet) {
    throw ValidationError("agent " + std::to_string(spec.id) +
                          ": alphabet exceeds " +
                          std::to_string(kMaxAlphabet) + " propositions");
  }
  return out;
}

int TransitionSystem::state_index(int region, int action) const {
  return region * static_cast<int>(actions.size()) + action;
}

TransitionSystem build_transition_system(const Workspace& ws,
                                         const AgentSpec& spec,
                                         TravelOracle& travel) {
  TransitionSystem ts;

  std::set<std::string> seen;
  for (const std::string& r : spec.regions) {
    if (!seen.insert(r).second) {
      throw ValidationError("agent " + std::to_string(spec.id) +
                            ": duplicate region " + r);
    }
    if (!ws.regions.count(r)) {
      throw ValidationError("agent " + std::to_string(spec.id) +
                            ": unknown region " + r);
    }
  }
  if (spec.regions.empty()) {
    throw ValidationError("agent " + std::to_string(spec.id) +
                          ": no regions assigned");
  }

  ts.regions.assign(seen.begin(), seen.end());
  for (const std::string& r : ts.regions) ts.region_cells.push_back(ws.regions.at(r));

  ts.actions.push_back("idle");
  ts.durations.push_back(0.0);
  for (const ActionSpec& a : spec.actions) {
    if (a.name == "idle") {
      throw ValidationError("agent " + std::to_string(spec.id) +
                            ": action name idle is reserved");
    }
    if (a.duration < 0.0) {
      throw ValidationError("agent " + std::to_string(spec.id) + ": action " +
                            a.name + " has negative duration");
    }
    ts.actions.push_back(a.name);
    ts.durations.push_back(a.duration);
  }

  ts.alphabet = agent_alphabet(spec);

  const int nr = static_cast<int>(ts.regions.size());
  const int na = static_cast<int>(ts.actions.size());

  for (int r = 0; r < nr; ++r) {
    for (int a = 0; a < na; ++a) {
      ts.states.push_back(TsState{r, a, ts.region_cells[r]});
      SymbolSet label = 0;
      if (a != kIdleAction) label = symbol_bit(r * na + a);
      ts.labels.push_back(label);
    }
  }

  // Start on a region cell: that region in the idle action is the initial
  // state.  Otherwise add a synthetic start with outgoing moves only.
  int start_region = -1;
  for (int r = 0; r < nr; ++r) {
    if (ts.region_cells[r] == spec.start) start_region = r;
  }
  if (start_region >= 0) {
    ts.initial = ts.state_index(start_region, kIdleAction);
  } else {
    ts.initial = static_cast<int>(ts.states.size());
    ts.states.push_back(TsState{-1, kIdleAction, spec.start});
    ts.labels.push_back(0);
  }

  ts.edges.resize(ts.states.size());
  for (int si = 0; si < static_cast<int>(ts.states.size()); ++si) {
    const TsState& s = ts.states[si];
    // Moves land in idle at the destination region.
    for (int r = 0; r < nr; ++r) {
      if (s.region == r) continue;
      int ti = ts.state_index(r, kIdleAction);
      ts.edges[si].push_back(TsEdge{ti, travel.time(s.cell, ts.region_cells[r])});
    }
    // Action switches at a fixed region; the synthetic start has none.
    if (s.region < 0) continue;
    for (int a = 0; a < na; ++a) {
      if (a == s.action) continue;
      int ti = ts.state_index(s.region, a);
      ts.edges[si].push_back(TsEdge{ti, ts.durations[a]});
    }
  }

  return ts;
}

}  // namespace macoord
