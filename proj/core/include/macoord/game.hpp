#pragma once

#include <vector>

#include "macoord/travel.hpp"
#include "macoord/workspace.hpp"

namespace macoord {

// One agent's choice for the next rendezvous: divert to cell z after
// completing plan step h.
struct Strategy {
  Cell z;
  long long h = 0;
};

// Divert options of one agent for one rendezvous window.  Option k describes
// diverting after plan step first_h + k: the agent leaves `from` at time
// `complete` and would otherwise drive to `to` next.  Options stop at the
// first step completing past the window, so the list is finite.
struct AgentTimeline {
  struct Option {
    Cell from;
    Cell to;
    double complete = 0.0;
  };
  long long first_h = 0;
  std::vector<Option> options;

  const Option& option(long long h) const {
    return options[static_cast<std::size_t>(h - first_h)];
  }
  bool has(long long h) const {
    return h >= first_h &&
           h - first_h < static_cast<long long>(options.size());
  }
};

// Shared inputs of one rendezvous game: who plays, where they may meet, what
// diverting costs them, and the window the meeting must fall into.
struct GameContext {
  const Workspace* ws = nullptr;
  double range = 1.0;
  double window_start = 0.0;
  double window_end = 0.0;
  std::vector<TravelOracle*> travel;  // one per player
  std::vector<AgentTimeline> timelines;

  int players() const { return static_cast<int>(travel.size()); }
};

// Detour cost of strategy s for player i: the extra travel of visiting z
// between two consecutive plan cells.
double additional_time(const GameContext& ctx, int i, const Strategy& s);

// Time player i reaches the meeting point under s.
double arrival_time(const GameContext& ctx, int i, const Strategy& s);

struct Evaluation {
  std::vector<double> delta;    // detour cost per player
  std::vector<double> arrival;  // meeting-point arrival per player
  double t_c = 0.0;             // latest arrival, the meeting time
  std::vector<double> xi;       // per-player cost: delta + (t_c - arrival)
  double phi = 0.0;             // sum of xi
};

Evaluation evaluate(const GameContext& ctx, const std::vector<Strategy>& Z);

// phi of a profile; the quantity every accepted unilateral switch strictly
// decreases.
double potential(const GameContext& ctx, const std::vector<Strategy>& Z);

// Player i's private cost: delta_i + N * t_c - t_i.  A unilateral switch
// changes this by exactly the change in potential (up to rounding).
double cost(const GameContext& ctx, int i, const std::vector<Strategy>& Z);

// Cheapest joint schedule when player i must rendezvous at cells[i] (the
// cells need not coincide).  Sweeps every achievable meeting time in the
// window and picks per-player divert points exactly; value is the potential
// of the returned profile.  ok stays false when no meeting time lands in
// the window; has_option flags players owning at least one arrival before
// the window closes, for diagnostics.
struct MeetingSchedule {
  bool ok = false;
  double value = 0.0;
  std::vector<Strategy> profile;
  std::vector<char> has_option;
};

MeetingSchedule schedule_meeting(const GameContext& ctx,
                                 const std::vector<Cell>& cells);

// Best profile with a single shared meeting cell: runs the schedule sweep on
// every free cell.  Ties prefer the earlier cell in (row, column) order.
// Throws InfeasibleError naming the players that cannot reach any cell
// inside the window.
std::vector<Strategy> initial_strategy(const GameContext& ctx);

// Free cells player i may move its meeting point to: within communication
// range of its current point, keeping the meeting-point graph connected.
std::vector<Cell> candidate_region(const GameContext& ctx, int i,
                                   const std::vector<Strategy>& Z);

struct BestResponse {
  Strategy strategy;
  double sigma = 0.0;  // cost change; negative improves
};

// Player i's best unilateral switch given the others' strategies: the
// candidate minimizing the cost change, strictly below zero, with ties going
// to the candidate closest to the current meeting point (then (row, column),
// then smaller divert index).  sigma stays 0 when nothing improves.
BestResponse best_response(const GameContext& ctx, int i,
                           const std::vector<Strategy>& Z);

enum class ReduceMode {
  Direct,         // pick the winner centrally
  MessageRounds,  // min-reduction gossip over the meeting-point graph
};

struct TraceEntry {
  int iteration = 0;
  int mover = -1;
  double sigma = 0.0;
  double phi_after = 0.0;
  std::vector<Strategy> profile;
};

struct NashResult {
  std::vector<Strategy> profile;
  bool converged = false;
  int iterations = 0;
  std::vector<TraceEntry> trace;
};

// Sequential better-reply dynamics: per iteration every player proposes its
// best response, the proposal with the most negative sigma wins (ties to the
// smaller player id) and is applied.  Stops when no proposal improves or
// after max_iters.
NashResult nash_iterate(const GameContext& ctx, std::vector<Strategy> Z,
                        int max_iters, ReduceMode mode = ReduceMode::Direct);

// Exhaustively checks that no unilateral deviation improves any player's
// cost by more than the tolerance.  Throws ResourceLimitError when the
// deviation count exceeds the cap.
bool is_nash(const GameContext& ctx, const std::vector<Strategy>& Z,
             double tolerance = 1e-9, long long cap = 50000000);

}  // namespace macoord
