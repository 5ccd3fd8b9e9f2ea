#pragma once

#include <vector>

#include "macoord/game.hpp"
#include "macoord/product.hpp"
#include "macoord/workspace.hpp"

namespace macoord::testing {

// Breadth-first step counts from `from` to every cell (-1 unreachable).
// Deliberately independent of shortest_path: plain queue sweep, no
// parent tracking, no tie rules.
std::vector<int> bfs_steps(const Workspace& w, Cell from);

// Re-times an explicit cell sequence with the turn-then-forward model,
// summed segment by segment in path order.
double retime_cells(const std::vector<Cell>& cells, const Workspace& w,
                    const MotionParams& m, double heading0);

// Minimum cost over closed walks through an accepting product state that is
// reachable from an initial state; +inf when no such cycle exists.
// Bellman-Ford relaxation, nothing shared with the planner's search.
double min_accepting_cycle_bf(const Product& p);

// Same quantity by exhaustive simple-cycle enumeration (edge costs are
// nonnegative, so some minimal closed walk is simple).  Only for tiny
// products; +inf when no cycle exists.
double min_accepting_cycle_dfs(const Product& p);

// Direct evaluation of a meeting profile from the context's timelines and
// travel oracles.  window_ok reports whether the meeting time lands inside
// [window_start, window_end).
struct OracleEval {
  double phi = 0.0;
  double t_c = 0.0;
  std::vector<double> arrival;
  std::vector<double> delta;
  std::vector<double> xi;
  bool window_ok = false;
};
OracleEval oracle_eval(const GameContext& ctx, const std::vector<Strategy>& Z);

// Player cost delta_i + N * t_c - t_i recomputed from scratch.
double oracle_cost(const GameContext& ctx, int i,
                   const std::vector<Strategy>& Z);

// Reimplementation of the no-improving-unilateral-deviation check.
// Candidate moves: free drivable cells within range of the player's current
// meeting point that keep the meeting-point graph connected, paired with
// every divert index whose switched meeting time stays in the window.
bool oracle_is_nash(const GameContext& ctx, const std::vector<Strategy>& Z,
                    double tol = 1e-9);

// Best shared-cell profile by full enumeration of cells x divert tuples.
// total_profiles counts the feasible tuples inspected; ok is false when
// nothing lands in the window.
struct OracleShared {
  bool ok = false;
  double value = 0.0;
  Cell cell;
  std::vector<Strategy> profile;
  long long total_profiles = 0;
};
OracleShared oracle_best_shared(const GameContext& ctx,
                                long long tuple_cap = 2000000);

}  // namespace macoord::testing
